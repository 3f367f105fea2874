#pragma once

// Degenerate start solutions of phi(x', y') = 0.
//
// Every zero of phi is determined by a support pair (K, L) of subsets of
// {1..p-1} with |K| + |L| = p - 1:
//
//   supp(x) = L u {0},   supp(xhat) = K u {0},
//   supp(y) = Z_p \ L,  -supp(yhat) = Z_p \ K,
//
// and is obtained by solving two small DFT-minor systems. There are
// C(2p-2, p-1) of them, each with a nonsingular Jacobian.

#include <functional>

#include "cyclic/reformulations.hpp"

namespace cyclic {

class SupportPair {
 public:
  SupportPair(IndexSet k, IndexSet l) : k_(std::move(k)), l_(std::move(l)) {
    const std::size_t p = k_.modulus();
    if (l_.modulus() != p) throw std::invalid_argument("SupportPair: K and L moduli differ");
    if (k_.contains(0) || l_.contains(0))
      throw std::invalid_argument("SupportPair: K and L must lie in {1..p-1}");
    if (k_.size() + l_.size() != p - 1)
      throw std::invalid_argument("SupportPair: need |K| + |L| = p - 1");
  }

  std::size_t p() const noexcept { return k_.modulus(); }
  const IndexSet& k() const noexcept { return k_; }
  const IndexSet& l() const noexcept { return l_; }
  IndexSet k_complement() const { return k_.complement_in(IndexSet::units(p())); }
  IndexSet l_complement() const { return l_.complement_in(IndexSet::units(p())); }

  friend bool operator==(const SupportPair&, const SupportPair&) = default;

 private:
  IndexSet k_;
  IndexSet l_;
};

struct DegenerateSolution {
  SupportPair pair;
  XYPoint point;
  double residual = 0.0;         // infinity norm of phi(point)
  double jacobian_min_sv = 0.0;
};

/// Calls `visit` on every support pair for p, ordered by (|K|, lex K, lex L).
inline void for_each_support_pair(std::size_t p, const std::function<void(const SupportPair&)>& visit) {
  require_prime(p);
  const std::vector<std::size_t> units = IndexSet::units(p).members();
  for (std::size_t nk = 0; nk < p; ++nk) {
    const auto ks = combinations(units, nk);
    const auto ls = combinations(units, p - 1 - nk);
    for (const auto& k : ks)
      for (const auto& l : ls) visit(SupportPair(IndexSet(p, k), IndexSet(p, l)));
  }
}

inline std::vector<SupportPair> enumerate_support_pairs(std::size_t p) {
  std::vector<SupportPair> pairs;
  pairs.reserve(binomial(2 * p - 2, p - 1));
  for_each_support_pair(p, [&](const SupportPair& s) { pairs.push_back(s); });
  return pairs;
}

// ---------------------------------------------------------------------------

namespace detail {

// Jacobian of phi at full vectors x, y (x_0 = y_0 = 1).
inline Eigen::MatrixXcd phi_jacobian_full(std::span<const Complex> x, std::span<const Complex> y,
                                          const RootTable& w) {
  const std::size_t p = x.size();
  const std::size_t h = p - 1;
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  const std::vector<Complex> xh = dft_raw(x, w, +1);
  const std::vector<Complex> yh = dft_raw(y, w, +1);
  Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(2 * h, 2 * h);
  for (std::size_t j = 1; j < p; ++j) {
    jac(j - 1, j - 1) = y[j];
    jac(j - 1, h + j - 1) = x[j];
    const Complex yneg = yh[p - j] * scale;
    const Complex xpos = xh[j] * scale;
    for (std::size_t l = 1; l < p; ++l) {
      const auto jl = static_cast<long long>(j * l % p);
      jac(h + j - 1, l - 1) = yneg * w(jl);
      jac(h + j - 1, h + l - 1) = xpos * w(-jl);
    }
  }
  return jac;
}

}  // namespace detail

struct JacobianInfo {
  Eigen::MatrixXcd matrix;
  double min_sv = 0.0;
};

/// Analytic Jacobian of phi, columns ordered (x_1..x_{p-1}, y_1..y_{p-1}).
inline JacobianInfo phi_jacobian(const XYPoint& v) {
  JacobianInfo info;
  info.matrix = detail::phi_jacobian_full(v.full_x().values(), v.full_y().values(), roots_of_unity(v.p()));
  info.min_sv = smallest_singular_value(info.matrix);
  return info;
}

/// Below this the DFT minor is treated as singular, which Chebotarev's
/// theorem forbids for prime p.
inline constexpr double kMinorFloor = 1e-12;

namespace detail {

// Solves dft_submatrix(rows, cols)·v = -(1/sqrt p)·1 and scatters v into a
// length-p vector with leading 1.
inline std::vector<Complex> solve_support_block(const IndexSet& rows, const IndexSet& cols,
                                                std::size_t p, bool conjugate) {
  std::vector<Complex> full(p, Complex{0.0, 0.0});
  full[0] = 1.0;
  if (cols.empty()) return full;
  const Eigen::MatrixXcd m = dft_submatrix(rows, cols, p, conjugate);
  const double sv = smallest_singular_value(m);
  if (!(sv > kMinorFloor))
    throw IntegrityError("singular DFT minor " + to_string(rows) + " x " + to_string(cols) +
                         " (smallest singular value " + std::to_string(sv) + ")");
  const Eigen::VectorXcd rhs =
      Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(rows.size()), -1.0 / std::sqrt(static_cast<double>(p)));
  const Eigen::VectorXcd sol = m.fullPivLu().solve(rhs);
  for (std::size_t i = 0; i < cols.size(); ++i) full[cols.members()[i]] = sol(static_cast<Eigen::Index>(i));
  return full;
}

}  // namespace detail

/// The unique zero of phi with support pattern `pair`.
inline DegenerateSolution degenerate_solution(const SupportPair& pair) {
  const std::size_t p = pair.p();
  const IndexSet kc = pair.k_complement();
  const IndexSet lc = pair.l_complement();

  std::vector<Complex> x;
  std::vector<Complex> y;
  if (pair.k().empty()) {
    x.assign(p, Complex{1.0});
    y.assign(p, Complex{0.0});
    y[0] = 1.0;
  } else if (pair.l().empty()) {
    x.assign(p, Complex{0.0});
    x[0] = 1.0;
    y.assign(p, Complex{1.0});
  } else {
    // x on L from the K' x L minor, y on L' from the conjugate K x L' minor.
    x = detail::solve_support_block(kc, pair.l(), p, false);
    y = detail::solve_support_block(pair.k(), lc, p, true);
  }

  XYPoint point(ComplexVector(std::vector<Complex>(x.begin() + 1, x.end())),
                ComplexVector(std::vector<Complex>(y.begin() + 1, y.end())));
  const ComplexVector phi = phi_eval(point);
  const double residual = max_abs(phi.values());
  if (!(residual < 1e-10))
    throw IntegrityError("degenerate start for K=" + to_string(pair.k()) + " L=" + to_string(pair.l()) +
                         " has phi residual " + std::to_string(residual));
  const double sv = phi_jacobian(point).min_sv;
  return DegenerateSolution{pair, std::move(point), residual, sv};
}

}  // namespace cyclic
