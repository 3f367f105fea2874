#pragma once

// Numerical certificates: DFT-minor nonsingularity, the support
// uncertainty principle, the convolution identities behind the
// reformulations, and the p-fold cover h.

#include <random>

#include "cyclic/start_system.hpp"

namespace cyclic {

/// Seeded sampler built on raw mt19937_64 output.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  double normal() {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }
  Complex complex_normal() { return {normal(), normal()}; }
  std::vector<Complex> complex_vector(std::size_t n) {
    std::vector<Complex> v(n);
    for (auto& c : v) c = complex_normal();
    return v;
  }
  /// Uniformly random subset of {0..n-1} of the given size, sorted.
  std::vector<std::size_t> subset(std::size_t n, std::size_t size) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + below(n - i)]);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------

struct MinorScan {
  std::size_t p = 0;
  std::size_t minors = 0;
  std::size_t failures = 0;
  double min_singular_value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> worst_rows;
  std::vector<std::size_t> worst_cols;
  bool passed() const noexcept { return failures == 0 && minors > 0; }
};

namespace detail {

inline void record_minor(MinorScan& scan, const IndexSet& rows, const IndexSet& cols, double floor) {
  const double sv = minor_nonsingularity(rows, cols, scan.p);
  ++scan.minors;
  if (!(sv > floor)) ++scan.failures;
  if (sv < scan.min_singular_value) {
    scan.min_singular_value = sv;
    scan.worst_rows = rows.members();
    scan.worst_cols = cols.members();
  }
}

}  // namespace detail

/// Every nonempty square minor of F_p: sum_r C(p, r)^2 of them.
inline MinorScan chebotarev_exhaustive(std::size_t p, double floor = kMinorFloor) {
  require_prime(p);
  MinorScan scan;
  scan.p = p;
  const std::vector<std::size_t> all = IndexSet::all(p).members();
  for (std::size_t r = 1; r <= p; ++r) {
    const auto subsets = combinations(all, r);
    for (const auto& rows : subsets)
      for (const auto& cols : subsets) detail::record_minor(scan, IndexSet(p, rows), IndexSet(p, cols), floor);
  }
  return scan;
}

/// `count` random square minors with size uniform in 1..p.
inline MinorScan chebotarev_random(std::size_t p, std::size_t count, std::uint64_t seed,
                                   double floor = kMinorFloor) {
  require_prime(p);
  MinorScan scan;
  scan.p = p;
  SampleRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t r = 1 + rng.below(p);
    detail::record_minor(scan, IndexSet(p, rng.subset(p, r)), IndexSet(p, rng.subset(p, r)), floor);
  }
  return scan;
}

// ---------------------------------------------------------------------------

struct UncertaintyScan {
  std::size_t p = 0;
  std::size_t patterns = 0;
  std::size_t violations = 0;
  std::size_t min_support_sum = 0;
  std::size_t degenerate_checked = 0;
  std::size_t degenerate_not_tight = 0;  // x or y side with support sum != p+1
  bool passed() const noexcept { return violations == 0 && degenerate_not_tight == 0 && patterns > 0; }
};

/// Random values on every nonzero support pattern of length p, plus (when
/// `degenerate` is set) the equality case on every degenerate start.
inline UncertaintyScan uncertainty_scan(std::size_t p, std::uint64_t seed, bool degenerate = true,
                                        double tol = kSupportTol) {
  require_prime(p);
  UncertaintyScan scan;
  scan.p = p;
  scan.min_support_sum = 2 * p;
  SampleRng rng(seed);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
    std::vector<Complex> v(p, Complex{0.0});
    for (std::size_t i = 0; i < p; ++i)
      if (mask >> i & 1) v[i] = rng.complex_normal();
    const UncertaintyResult r = uncertainty_check(ComplexVector(std::move(v)), p, tol);
    ++scan.patterns;
    if (!r.holds) ++scan.violations;
    scan.min_support_sum = std::min(scan.min_support_sum, r.support_sum);
  }
  if (!degenerate) return scan;
  for_each_support_pair(p, [&](const SupportPair& pair) {
    const DegenerateSolution sol = degenerate_solution(pair);
    ++scan.degenerate_checked;
    const auto sx = uncertainty_check(sol.point.full_x(), p, tol).support_sum;
    const auto sy = uncertainty_check(sol.point.full_y(), p, tol).support_sum;
    if (sx != p + 1 || sy != p + 1) ++scan.degenerate_not_tight;
  });
  return scan;
}

// ---------------------------------------------------------------------------

struct IdentityScan {
  std::size_t p = 0;
  std::size_t samples = 0;
  double spectral_product = 0.0;    // uhat_j vhat_{-j} vs transformed correlations
  double inverse_correlation = 0.0; // sum_j e^{-i2pi kj/n} uhat_j vhat_{-j} vs correlations
  double parseval = 0.0;            // sum_j uhat_j vhat_{-j} vs sum_m u_m v_m
  double lambda_round_trip = 0.0;
  double factorization = 0.0;       // phi vs Lambda o psi
  double worst() const { return std::max({spectral_product, inverse_correlation, parseval, lambda_round_trip, factorization}); }
  bool passed(double tol = 1e-12) const { return samples > 0 && worst() < tol; }
};

namespace detail {

inline double relative_gap(std::span<const Complex> a, std::span<const Complex> b) {
  return max_abs_diff(a, b) / std::max(1.0, max_abs(b));
}

}  // namespace detail

/// Relative errors of the convolution identities over random (u, v),
/// Lambda round trips and phi = Lambda o psi on random points.
inline IdentityScan identity_scan(std::size_t n, std::size_t samples, std::uint64_t seed) {
  IdentityScan scan;
  scan.p = n;
  scan.samples = samples;
  SampleRng rng(seed);
  const RootTable& w = roots_of_unity(n);
  const auto nn = static_cast<long long>(n);
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexVector u(rng.complex_vector(n));
    const ComplexVector v(rng.complex_vector(n));
    const ComplexVector uh = dft(u), vh = dft(v);

    std::vector<Complex> corr(n);
    for (long long k = 0; k < nn; ++k) {
      Complex acc{0.0};
      for (long long m = 0; m < nn; ++m) acc += u.cyclic(k + m) * v.cyclic(m);
      corr[static_cast<std::size_t>(k)] = acc;
    }

    std::vector<Complex> lhs6(n), rhs6(n), lhs7(n);
    for (long long j = 0; j < nn; ++j) {
      lhs6[static_cast<std::size_t>(j)] = uh.cyclic(j) * vh.cyclic(-j);
      Complex acc{0.0};
      for (long long k = 0; k < nn; ++k) acc += w(j * k) * corr[static_cast<std::size_t>(k)];
      rhs6[static_cast<std::size_t>(j)] = acc / static_cast<double>(n);
    }
    // Inverse of the first identity: pairs uhat_j with vhat_{-j}, so that
    // k = 0 reduces to the third.
    for (long long k = 0; k < nn; ++k) {
      Complex acc{0.0};
      for (long long j = 0; j < nn; ++j) acc += w(-k * j) * uh.cyclic(j) * vh.cyclic(-j);
      lhs7[static_cast<std::size_t>(k)] = acc;
    }
    const std::vector<Complex>& rhs7 = corr;
    Complex lhs8{0.0}, rhs8{0.0};
    for (long long j = 0; j < nn; ++j) lhs8 += uh.cyclic(j) * vh.cyclic(-j);
    for (long long m = 0; m < nn; ++m) rhs8 += u.cyclic(m) * v.cyclic(m);

    scan.spectral_product = std::max(scan.spectral_product, detail::relative_gap(lhs6, rhs6));
    scan.inverse_correlation = std::max(scan.inverse_correlation, detail::relative_gap(lhs7, rhs7));
    scan.parseval = std::max(scan.parseval, std::abs(lhs8 - rhs8) / std::max(1.0, std::abs(rhs8)));

    if (n >= 2) {
      const ComplexVector a(rng.complex_vector(n - 1));
      const ComplexVector c(rng.complex_vector(n - 1));
      const ComplexVector back = lambda_inverse(a, lambda_forward(a, c, n), n);
      scan.lambda_round_trip = std::max(scan.lambda_round_trip, detail::relative_gap(back.values(), c.values()));

      const XYPoint point(ComplexVector(rng.complex_vector(n - 1)), ComplexVector(rng.complex_vector(n - 1)));
      const ComplexVector psi = psi_eval(point);
      const ComplexVector phi = phi_eval(point);
      const std::size_t h = n - 1;
      const ComplexVector pa(std::vector<Complex>(psi.begin(), psi.begin() + static_cast<long>(h)));
      const ComplexVector pc(std::vector<Complex>(psi.begin() + static_cast<long>(h), psi.end()));
      std::vector<Complex> composed = pa.vector();
      const ComplexVector b = lambda_forward(pa, pc, n);
      composed.insert(composed.end(), b.begin(), b.end());
      scan.factorization = std::max(scan.factorization, detail::relative_gap(composed, phi.values()));
    }
  }
  return scan;
}

// ---------------------------------------------------------------------------

struct FiberScan {
  std::size_t p = 0;
  std::size_t samples = 0;
  std::size_t wrong_size = 0;       // fibers without exactly p distinct points
  double max_round_trip = 0.0;      // max |h(x', alpha) - z|
  bool passed(double tol = 1e-10) const { return samples > 0 && wrong_size == 0 && max_round_trip < tol; }
};

inline FiberScan h_fiber_scan(std::size_t p, std::size_t samples, std::uint64_t seed) {
  FiberScan scan;
  scan.p = p;
  scan.samples = samples;
  SampleRng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Complex> zv(p);
    // Moduli in [0.5, 2] keep the sample away from the coordinate axes.
    for (auto& c : zv) c = std::polar(0.5 + 1.5 * rng.uniform(), kTwoPi * rng.uniform());
    const ZRoot z{ComplexVector(zv)};
    const auto fiber = h_fiber(z);
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      bool unique = true;
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(fiber[i].alpha - fiber[j].alpha) < 1e-9) unique = false;
      distinct += unique ? 1 : 0;
      const ZRoot back = h_apply(fiber[i].x, fiber[i].alpha);
      scan.max_round_trip = std::max(scan.max_round_trip, max_abs_diff(back.values().values(), z.values().values()));
    }
    if (fiber.size() != p || distinct != p) ++scan.wrong_size;
  }
  return scan;
}

}  // namespace cyclic
