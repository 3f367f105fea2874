#pragma once

// Unitary DFT over Z_n with kernel e^{+i 2 pi jk / n} and 1/sqrt(n) scaling,
// DFT submatrices, supports and the support uncertainty check.

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>

#include "cyclic/types.hpp"

namespace cyclic {

/// Table of the n-th roots of unity w[k] = e^{i 2 pi k / n}.
class RootTable {
 public:
  explicit RootTable(std::size_t n) : n_(n), w_(n) {
    if (n == 0) throw std::invalid_argument("RootTable: n must be >= 1");
    for (std::size_t k = 0; k < n; ++k)
      w_[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  }
  std::size_t n() const noexcept { return n_; }
  /// e^{i 2 pi k / n}, k taken mod n.
  Complex operator()(long long k) const { return w_[wrap(k, n_)]; }

 private:
  std::size_t n_;
  std::vector<Complex> w_;
};

/// Shared, lazily built root table. The returned reference stays valid.
inline const RootTable& roots_of_unity(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<RootTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RootTable>(n);
  return *slot;
}

namespace detail {

// sign = +1 gives F, sign = -1 gives conj(F) = F^{-1}.
inline std::vector<Complex> dft_raw(std::span<const Complex> u, const RootTable& w, int sign) {
  const std::size_t n = u.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k)
      acc += w(sign * static_cast<long long>(j * k % n)) * u[k];
    out[j] = acc * scale;
  }
  return out;
}

}  // namespace detail

inline ComplexVector dft(const ComplexVector& u) {
  return ComplexVector(detail::dft_raw(u.values(), roots_of_unity(u.size()), +1));
}

/// Conjugate transform; inverse of dft.
inline ComplexVector inverse_dft(const ComplexVector& u) {
  return ComplexVector(detail::dft_raw(u.values(), roots_of_unity(u.size()), -1));
}

/// Full n x n unitary DFT matrix.
inline Eigen::MatrixXcd dft_matrix(std::size_t n) {
  const RootTable& w = roots_of_unity(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd f(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      f(j, k) = scale * w(static_cast<long long>(j * k % n));
  return f;
}

/// Rows K, columns L of the p x p DFT matrix, in sorted index order.
/// With `conjugate` set the kernel is e^{-i 2 pi kl / p}.
inline Eigen::MatrixXcd dft_submatrix(const IndexSet& rows, const IndexSet& cols, std::size_t p,
                                      bool conjugate = false) {
  if (rows.modulus() != p || cols.modulus() != p)
    throw std::invalid_argument("dft_submatrix: index sets must live in Z_" + std::to_string(p));
  const RootTable& w = roots_of_unity(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  const int sign = conjugate ? -1 : 1;
  Eigen::MatrixXcd m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      m(r, c) = scale * w(sign * static_cast<long long>(rows.members()[r] * cols.members()[c] % p));
  return m;
}

inline double smallest_singular_value(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

/// Smallest singular value of the K x L minor of F_p. Strictly positive
/// for prime p by Chebotarev's theorem.
inline double minor_nonsingularity(const IndexSet& rows, const IndexSet& cols, std::size_t p) {
  if (rows.size() != cols.size() || rows.empty())
    throw std::invalid_argument("minor_nonsingularity: need |K| = |L| >= 1");
  return smallest_singular_value(dft_submatrix(rows, cols, p));
}

/// Indices i with |u_i| > tol.
inline IndexSet support(const ComplexVector& u, double tol = kSupportTol) {
  if (tol < 0.0) throw std::invalid_argument("support: tol must be >= 0");
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::abs(u[i]) > tol) m.push_back(i);
  return IndexSet(u.size(), std::move(m));
}

struct UncertaintyResult {
  std::size_t support_sum = 0;
  bool holds = false;
};

/// |supp(u)| + |supp(F u)| and whether it reaches p + 1.
inline UncertaintyResult uncertainty_check(const ComplexVector& u, std::size_t p,
                                           double tol = kSupportTol) {
  if (u.size() != p) throw std::invalid_argument("uncertainty_check: length must equal p");
  if (max_abs(u.values()) <= tol)
    throw std::invalid_argument("uncertainty_check: vector is numerically zero");
  const std::size_t sum = support(u, tol).size() + support(dft(u), tol).size();
  return {sum, sum >= p + 1};
}

}  // namespace cyclic
