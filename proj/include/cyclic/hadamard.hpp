#pragma once

// Unimodular cyclic roots <-> biunimodular sequences <-> circulant complex
// Hadamard matrices with unit diagonal.

#include "cyclic/reformulations.hpp"

namespace cyclic {

/// x with x_0 = 1, |x_j| = 1 and |xhat_j| = 1.
class BiunimodularSequence {
 public:
  /// Validates both unimodularity conditions to `tol`.
  BiunimodularSequence(ComplexVector x, double tol) : x_(std::move(x)) {
    if (std::abs(x_[0] - 1.0) > tol) throw std::invalid_argument("BiunimodularSequence: x_0 must be 1");
    for (const Complex& c : x_)
      if (std::abs(std::abs(c) - 1.0) > tol) throw std::invalid_argument("BiunimodularSequence: |x_j| != 1");
    for (const Complex& c : dft(x_))
      if (std::abs(std::abs(c) - 1.0) > tol) throw std::invalid_argument("BiunimodularSequence: |xhat_j| != 1");
  }
  std::size_t size() const noexcept { return x_.size(); }
  const ComplexVector& values() const noexcept { return x_; }

 private:
  ComplexVector x_;
};

/// Cumulative products (1, z_0, z_0 z_1, ...) of a unimodular cyclic root.
inline BiunimodularSequence biunimodular_from_root(const ZRoot& z, double tol = 1e-6) {
  for (const Complex& c : z.values())
    if (std::abs(std::abs(c) - 1.0) > tol)
      throw std::invalid_argument("biunimodular_from_root: root is not unimodular");
  const double res = rho_residual(z);
  if (!(res < 1e-8))
    throw std::invalid_argument("biunimodular_from_root: not a cyclic root (rho residual " + std::to_string(res) + ")");
  const ComplexVector x = x_from_z(z).full();
  for (const Complex& c : dft(x))
    if (std::abs(std::abs(c) - 1.0) > tol)
      throw IntegrityError("unimodular cyclic root produced a sequence with |xhat_j| = " + std::to_string(std::abs(c)));
  return BiunimodularSequence(x, tol);
}

/// n x n matrix with h_{jk} = x_{(j-k) mod n}.
class CirculantMatrix {
 public:
  explicit CirculantMatrix(ComplexVector seed) : seed_(std::move(seed)) {}

  std::size_t dimension() const noexcept { return seed_.size(); }
  const ComplexVector& seed() const noexcept { return seed_; }
  Complex operator()(std::size_t j, std::size_t k) const {
    return seed_.cyclic(static_cast<long long>(j) - static_cast<long long>(k));
  }
  Eigen::MatrixXcd dense() const {
    const std::size_t n = dimension();
    Eigen::MatrixXcd h(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) h(j, k) = (*this)(j, k);
    return h;
  }

 private:
  ComplexVector seed_;
};

inline CirculantMatrix circulant_from_sequence(const BiunimodularSequence& x) { return CirculantMatrix(x.values()); }

/// Frobenius norm of H^* H - n I.
inline double hadamard_defect(const CirculantMatrix& h) {
  const Eigen::MatrixXcd m = h.dense();
  const auto n = static_cast<double>(h.dimension());
  return (m.adjoint() * m - n * Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm();
}

}  // namespace cyclic
