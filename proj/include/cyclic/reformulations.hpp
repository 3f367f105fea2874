#pragma once

// The equivalent formulations of the cyclic p-root problem and the maps
// between them:
//
//   z-level      rho(z) = (0, ..., 0, 1)
//   x-level      sigma(x') = 0,             x_j = z_0 ... z_{j-1}
//   (x,y)-level  psi(x', y') = (1, 0),      y_j = 1 / x_j
//   Fourier      phi(x', y') = (1, 1)       phi = Lambda o psi
//
// x_0 = y_0 = 1 throughout and is never stored.

#include "cyclic/fourier.hpp"

namespace cyclic {

namespace detail {

inline void require_nonzero(std::span<const Complex> v, const char* what) {
  for (const Complex& c : v)
    if (std::abs(c) < kNearZero) throw std::domain_error(std::string(what) + ": zero coordinate");
}

inline std::vector<Complex> with_leading_one(std::span<const Complex> tail) {
  std::vector<Complex> v;
  v.reserve(tail.size() + 1);
  v.push_back(1.0);
  v.insert(v.end(), tail.begin(), tail.end());
  return v;
}

}  // namespace detail

/// Point z in (C^*)^p on z-level.
class ZRoot {
 public:
  explicit ZRoot(ComplexVector z) : z_(std::move(z)) { detail::require_nonzero(z_.values(), "ZRoot"); }
  std::size_t p() const noexcept { return z_.size(); }
  const ComplexVector& values() const noexcept { return z_; }
  const Complex& operator[](std::size_t i) const { return z_[i]; }

 private:
  ComplexVector z_;
};

/// Point on x-level, storing x_1 .. x_{p-1}.
class XPoint {
 public:
  explicit XPoint(ComplexVector coords) : x_(std::move(coords)) {}
  std::size_t p() const noexcept { return x_.size() + 1; }
  const ComplexVector& coords() const noexcept { return x_; }
  /// (1, x_1, ..., x_{p-1})
  ComplexVector full() const { return ComplexVector(detail::with_leading_one(x_.values())); }

 private:
  ComplexVector x_;
};

/// Point (x', y') in C^{2p-2}; zeros allowed.
class XYPoint {
 public:
  XYPoint(ComplexVector x, ComplexVector y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) throw std::invalid_argument("XYPoint: x' and y' lengths differ");
  }
  std::size_t p() const noexcept { return x_.size() + 1; }
  std::size_t dimension() const noexcept { return 2 * x_.size(); }
  const ComplexVector& x() const noexcept { return x_; }
  const ComplexVector& y() const noexcept { return y_; }
  ComplexVector full_x() const { return ComplexVector(detail::with_leading_one(x_.values())); }
  ComplexVector full_y() const { return ComplexVector(detail::with_leading_one(y_.values())); }

  /// Coordinates stacked as (x_1..x_{p-1}, y_1..y_{p-1}).
  std::vector<Complex> stacked() const {
    std::vector<Complex> v(x_.begin(), x_.end());
    v.insert(v.end(), y_.begin(), y_.end());
    return v;
  }
  static XYPoint from_stacked(std::span<const Complex> v) {
    if (v.size() < 2 || v.size() % 2 != 0)
      throw std::invalid_argument("XYPoint: stacked length must be even and >= 2");
    const std::size_t h = v.size() / 2;
    return XYPoint(ComplexVector(std::vector<Complex>(v.begin(), v.begin() + h)),
                   ComplexVector(std::vector<Complex>(v.begin() + h, v.end())));
  }

  friend bool operator==(const XYPoint&, const XYPoint&) = default;

 private:
  ComplexVector x_;
  ComplexVector y_;
};

/// Right-hand side (a, second) for the psi system (second = correlations c)
/// or the phi system (second = spectral products b).
struct TargetVector {
  enum class Kind { correlation, spectral };
  ComplexVector a;
  ComplexVector second;
  Kind kind;

  TargetVector(ComplexVector a_block, ComplexVector second_block, Kind k)
      : a(std::move(a_block)), second(std::move(second_block)), kind(k) {
    if (a.size() != second.size()) throw std::invalid_argument("TargetVector: block lengths differ");
  }
};

// ---------------------------------------------------------------------------
// z-level <-> x-level

/// x_j = z_0 z_1 ... z_{j-1}, 1 <= j <= p-1.
inline XPoint x_from_z(const ZRoot& z) {
  const std::size_t p = z.p();
  if (p < 2) throw std::invalid_argument("x_from_z: need p >= 2");
  std::vector<Complex> x(p - 1);
  Complex acc = 1.0;
  for (std::size_t j = 1; j < p; ++j) {
    acc *= z[j - 1];
    x[j - 1] = acc;
  }
  return XPoint(ComplexVector(std::move(x)));
}

/// z_j = x_{j+1} / x_j, indices mod p.
inline ZRoot z_from_x(const XPoint& x) {
  const ComplexVector full = x.full();
  detail::require_nonzero(full.values(), "z_from_x");
  const std::size_t p = full.size();
  std::vector<Complex> z(p);
  for (std::size_t j = 0; j < p; ++j) z[j] = full.cyclic(static_cast<long long>(j) + 1) / full[j];
  return ZRoot(ComplexVector(std::move(z)));
}

// ---------------------------------------------------------------------------
// (x,y)-level maps

namespace detail {

// phi on full vectors x, y of length p (x_0 = y_0 = 1 already in place).
// Writes 2p-2 outputs.
inline void phi_full(std::span<const Complex> x, std::span<const Complex> y, const RootTable& w,
                     std::span<Complex> out) {
  const std::size_t p = x.size();
  const std::vector<Complex> xh = dft_raw(x, w, +1);
  const std::vector<Complex> yh = dft_raw(y, w, +1);
  for (std::size_t j = 1; j < p; ++j) {
    out[j - 1] = x[j] * y[j];
    out[p - 2 + j] = xh[j] * yh[p - j];
  }
}

}  // namespace detail

/// phi(x', y') = (x_j y_j, xhat_j yhat_{-j}) for 1 <= j <= p-1.
inline ComplexVector phi_eval(const XYPoint& v) {
  const std::size_t p = v.p();
  std::vector<Complex> out(2 * (p - 1));
  detail::phi_full(v.full_x().values(), v.full_y().values(), roots_of_unity(p), out);
  return ComplexVector(std::move(out));
}

/// psi(x', y') = (x_j y_j, sum_m x_{j+m} y_m) for 1 <= j <= p-1.
inline ComplexVector psi_eval(const XYPoint& v) {
  const std::size_t p = v.p();
  const ComplexVector x = v.full_x();
  const ComplexVector y = v.full_y();
  std::vector<Complex> out(2 * (p - 1));
  for (std::size_t j = 1; j < p; ++j) {
    out[j - 1] = x[j] * y[j];
    Complex corr{0.0, 0.0};
    for (std::size_t m = 0; m < p; ++m) corr += x.cyclic(static_cast<long long>(j + m)) * y[m];
    out[p - 2 + j] = corr;
  }
  return ComplexVector(std::move(out));
}

/// b_j = (1/p)(1 + sum_m a_m + sum_k e^{i 2 pi jk/p} c_k).
inline ComplexVector lambda_forward(const ComplexVector& a, const ComplexVector& c, std::size_t p) {
  if (a.size() != p - 1 || c.size() != p - 1)
    throw std::invalid_argument("lambda_forward: blocks must have length p-1");
  const RootTable& w = roots_of_unity(p);
  Complex base = 1.0;
  for (const Complex& am : a) base += am;
  std::vector<Complex> b(p - 1);
  for (std::size_t j = 1; j < p; ++j) {
    Complex acc = base;
    for (std::size_t k = 1; k < p; ++k) acc += w(static_cast<long long>(j * k)) * c[k - 1];
    b[j - 1] = acc / static_cast<double>(p);
  }
  return ComplexVector(std::move(b));
}

/// c_k = 1 + sum_m a_m + sum_j (e^{-i 2 pi kj/p} - 1) b_j; inverse of lambda_forward in c.
inline ComplexVector lambda_inverse(const ComplexVector& a, const ComplexVector& b, std::size_t p) {
  if (a.size() != p - 1 || b.size() != p - 1)
    throw std::invalid_argument("lambda_inverse: blocks must have length p-1");
  const RootTable& w = roots_of_unity(p);
  Complex base = 1.0;
  for (const Complex& am : a) base += am;
  std::vector<Complex> c(p - 1);
  for (std::size_t k = 1; k < p; ++k) {
    Complex acc = base;
    for (std::size_t j = 1; j < p; ++j)
      acc += (w(-static_cast<long long>(k * j)) - 1.0) * b[j - 1];
    c[k - 1] = acc;
  }
  return ComplexVector(std::move(c));
}

/// The affine bijection Lambda on tagged target vectors (either direction).
inline TargetVector apply_lambda(const TargetVector& t) {
  const std::size_t p = t.a.size() + 1;
  if (t.kind == TargetVector::Kind::correlation)
    return TargetVector(t.a, lambda_forward(t.a, t.second, p), TargetVector::Kind::spectral);
  return TargetVector(t.a, lambda_inverse(t.a, t.second, p), TargetVector::Kind::correlation);
}

// ---------------------------------------------------------------------------
// x-level and z-level residual maps

/// sigma_a(x')_j = sum_{m=0}^{p-1} a_m x_{m+j} / x_m with a_0 = x_0 = 1.
/// `weights` holds a_1..a_{p-1}; empty means all ones.
inline ComplexVector sigma_eval(const XPoint& x, std::span<const Complex> weights = {}) {
  const ComplexVector full = x.full();
  detail::require_nonzero(full.values(), "sigma_eval");
  const std::size_t p = full.size();
  if (!weights.empty() && weights.size() != p - 1)
    throw std::invalid_argument("sigma_eval: weight block must have length p-1");
  std::vector<Complex> out(p - 1);
  for (std::size_t j = 1; j < p; ++j) {
    Complex acc{0.0, 0.0};
    for (std::size_t m = 0; m < p; ++m) {
      const Complex am = (m == 0 || weights.empty()) ? Complex{1.0} : weights[m - 1];
      acc += am * full.cyclic(static_cast<long long>(m + j)) / full[m];
    }
    out[j - 1] = acc;
  }
  return ComplexVector(std::move(out));
}

/// rho_j(z) = sum over i of z_i z_{i+1} ... z_{i+j-1} for j < p; rho_p = product.
inline ComplexVector rho_eval(const ZRoot& z) {
  const std::size_t p = z.p();
  const ComplexVector& v = z.values();
  std::vector<Complex> out(p);
  for (std::size_t j = 1; j < p; ++j) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < p; ++i) {
      Complex prod = 1.0;
      for (std::size_t l = 0; l < j; ++l) prod *= v.cyclic(static_cast<long long>(i + l));
      acc += prod;
    }
    out[j - 1] = acc;
  }
  Complex prod = 1.0;
  for (const Complex& c : v) prod *= c;
  out[p - 1] = prod;
  return ComplexVector(std::move(out));
}

/// Distance of rho(z) from the cyclic-root target (0, ..., 0, 1), infinity norm.
inline double rho_residual(const ZRoot& z) {
  const ComplexVector r = rho_eval(z);
  double m = 0.0;
  for (std::size_t j = 0; j + 1 < r.size(); ++j) m = std::max(m, std::abs(r[j]));
  return std::max(m, std::abs(r[r.size() - 1] - 1.0));
}

// ---------------------------------------------------------------------------
// The p-fold cover h(x', alpha) = (alpha x_1/x_0, alpha x_2/x_1, ..., alpha x_0/x_{p-1})

struct FiberPoint {
  XPoint x;
  Complex alpha;
};

inline ZRoot h_apply(const XPoint& x, Complex alpha) {
  if (std::abs(alpha) < kNearZero) throw std::domain_error("h_apply: alpha must be nonzero");
  const ComplexVector full = x.full();
  detail::require_nonzero(full.values(), "h_apply");
  const std::size_t p = full.size();
  std::vector<Complex> z(p);
  for (std::size_t j = 0; j < p; ++j)
    z[j] = alpha * full.cyclic(static_cast<long long>(j) + 1) / full[j];
  return ZRoot(ComplexVector(std::move(z)));
}

/// The p preimages of z under h, ordered by the principal argument of alpha.
inline std::vector<FiberPoint> h_fiber(const ZRoot& z) {
  const std::size_t p = z.p();
  Complex prod = 1.0;
  for (const Complex& c : z.values()) prod *= c;
  const double radius = std::pow(std::abs(prod), 1.0 / static_cast<double>(p));
  const double theta = std::arg(prod);

  std::vector<Complex> alphas(p);
  for (std::size_t r = 0; r < p; ++r)
    alphas[r] = std::polar(radius, (theta + kTwoPi * static_cast<double>(r)) / static_cast<double>(p));
  std::sort(alphas.begin(), alphas.end(),
            [](const Complex& a, const Complex& b) { return std::arg(a) < std::arg(b); });

  std::vector<FiberPoint> fiber;
  fiber.reserve(p);
  for (const Complex& alpha : alphas) {
    std::vector<Complex> x(p - 1);
    Complex partial = 1.0;
    Complex alpha_pow = 1.0;
    for (std::size_t j = 1; j < p; ++j) {
      partial *= z[j - 1];
      alpha_pow *= alpha;
      x[j - 1] = partial / alpha_pow;
    }
    fiber.push_back({XPoint(ComplexVector(std::move(x))), alpha});
  }
  return fiber;
}

}  // namespace cyclic
