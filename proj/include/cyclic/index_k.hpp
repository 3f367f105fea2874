#pragma once

// Cyclic p-roots of simple index k (k | p-1): x-level points that are
// constant on the cosets G_0, ..., G_{k-1} of the index-k subgroup of Z_p^*.
// They solve the k-variable system
//
//   chi(c)_a = c_a + 1/c_{a+m} + sum_{i,j} n_ij c_{a+j} / c_{a+i} = 0,
//
// where p-1 is in G_m and n_ij = #{b in G_i : b+1 in G_j}. The roots are
// found by tracking phi restricted to coset-constant (x', y') in 2k
// coordinates from the C(2k, k) degenerate starts built from unions of cosets.

#include <chrono>

#include "cyclic/solver.hpp"

namespace cyclic {

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

inline bool is_primitive_root(std::uint64_t g, std::uint64_t p) {
  if (g == 0 || g >= p) return false;
  std::uint64_t x = 1;
  for (std::uint64_t e = 1; e < p - 1; ++e) {
    x = x * g % p;
    if (x == 1) return false;
  }
  return true;
}

inline std::uint64_t smallest_primitive_root(std::uint64_t p) {
  require_prime(p);
  for (std::uint64_t g = 1; g < p; ++g)
    if (is_primitive_root(g, p)) return g;
  throw IntegrityError("no primitive root modulo " + std::to_string(p));
}

struct CyclotomicStructure {
  std::size_t p = 0;
  std::size_t k = 0;
  std::size_t generator = 0;
  std::vector<std::vector<std::size_t>> cosets;  // G_0..G_{k-1}, sorted
  std::vector<std::size_t> coset_of;             // coset index of each b in Z_p^*; entry 0 unused
  std::size_t m = 0;                             // p-1 lies in G_m
  std::vector<std::vector<long>> n;              // cyclotomic numbers n_ij

  std::size_t coset_size() const noexcept { return (p - 1) / k; }
};

/// Cosets, m and n_ij for (p, k). `generator` = 0 picks the smallest
/// primitive root.
inline CyclotomicStructure cyclotomic_structure(std::size_t p, std::size_t k, std::size_t generator = 0) {
  require_prime(p);
  if (k == 0 || (p - 1) % k != 0)
    throw std::invalid_argument("cyclotomic_structure: k=" + std::to_string(k) + " does not divide p-1=" +
                                std::to_string(p - 1));
  if (generator == 0) generator = smallest_primitive_root(p);
  if (!is_primitive_root(generator, p))
    throw std::invalid_argument("cyclotomic_structure: " + std::to_string(generator) + " is not a primitive root");

  CyclotomicStructure s;
  s.p = p;
  s.k = k;
  s.generator = generator;
  s.cosets.assign(k, {});
  s.coset_of.assign(p, k);
  // b = g^e lies in G_{e mod k}.
  std::size_t b = 1;
  for (std::size_t e = 0; e < p - 1; ++e) {
    s.coset_of[b] = e % k;
    s.cosets[e % k].push_back(b);
    b = b * generator % p;
  }
  for (auto& c : s.cosets) std::sort(c.begin(), c.end());
  s.m = s.coset_of[p - 1];
  s.n.assign(k, std::vector<long>(k, 0));
  for (std::size_t b2 = 1; b2 < p; ++b2) {
    const std::size_t next = (b2 + 1) % p;
    if (next == 0) continue;
    ++s.n[s.coset_of[b2]][s.coset_of[next]];
  }
  return s;
}

/// Point (c_0, ..., c_{k-1}) in (C^*)^k.
class IndexKPoint {
 public:
  explicit IndexKPoint(ComplexVector c) : c_(std::move(c)) { detail::require_nonzero(c_.values(), "IndexKPoint"); }
  std::size_t k() const noexcept { return c_.size(); }
  const ComplexVector& values() const noexcept { return c_; }
  const Complex& operator[](std::size_t i) const { return c_[i]; }

 private:
  ComplexVector c_;
};

inline ComplexVector chi_eval(const IndexKPoint& c, const CyclotomicStructure& s) {
  if (c.k() != s.k) throw std::invalid_argument("chi_eval: point has wrong length");
  const ComplexVector& v = c.values();
  const auto k = static_cast<long long>(s.k);
  std::vector<Complex> out(s.k);
  for (long long a = 0; a < k; ++a) {
    Complex acc = v.cyclic(a) + 1.0 / v.cyclic(a + static_cast<long long>(s.m));
    for (long long i = 0; i < k; ++i)
      for (long long j = 0; j < k; ++j)
        if (const long nij = s.n[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          acc += static_cast<double>(nij) * v.cyclic(a + j) / v.cyclic(a + i);
    out[static_cast<std::size_t>(a)] = acc;
  }
  return ComplexVector(std::move(out));
}

/// x_i = c_l for i in G_l.
inline XPoint lift_to_x_level(const IndexKPoint& c, const CyclotomicStructure& s) {
  if (c.k() != s.k) throw std::invalid_argument("lift_to_x_level: point has wrong length");
  std::vector<Complex> x(s.p - 1);
  for (std::size_t i = 1; i < s.p; ++i) x[i - 1] = c[s.coset_of[i]];
  return XPoint(ComplexVector(std::move(x)));
}

/// Coset-wise values of a coset-constant sequence indexed by 1..p-1, read
/// off the smallest member of each coset.
inline std::vector<Complex> compress(std::span<const Complex> by_unit, const CyclotomicStructure& s) {
  std::vector<Complex> out(s.k);
  for (std::size_t l = 0; l < s.k; ++l) out[l] = by_unit[s.cosets[l].front() - 1];
  return out;
}

/// Largest deviation from coset-constancy of a sequence indexed by 1..p-1.
inline double coset_spread(std::span<const Complex> by_unit, const CyclotomicStructure& s) {
  double spread = 0.0;
  for (const auto& g : s.cosets)
    for (std::size_t i : g) spread = std::max(spread, std::abs(by_unit[i - 1] - by_unit[g.front() - 1]));
  return spread;
}

/// phi restricted to E x E, in coordinates (c^x_0..c^x_{k-1}, c^y_0..c^y_{k-1}).
class RestrictedPhiSystem {
 public:
  explicit RestrictedPhiSystem(const CyclotomicStructure& s) : s_(&s), full_(s.p) {}

  Eigen::Index dimension() const noexcept { return static_cast<Eigen::Index>(2 * s_->k); }

  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& v) const {
    const Eigen::VectorXcd f = full_.evaluate(expand(v));
    const std::size_t h = s_->p - 1, k = s_->k;
    Eigen::VectorXcd out(dimension());
    for (std::size_t l = 0; l < k; ++l) {
      const std::size_t row = s_->cosets[l].front() - 1;
      out(static_cast<Eigen::Index>(l)) = f(static_cast<Eigen::Index>(row));
      out(static_cast<Eigen::Index>(k + l)) = f(static_cast<Eigen::Index>(h + row));
    }
    return out;
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& v) const {
    const Eigen::MatrixXcd jf = full_.jacobian(expand(v));
    const std::size_t h = s_->p - 1, k = s_->k;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dimension(), dimension());
    for (std::size_t r = 0; r < 2 * k; ++r) {
      const std::size_t row = (r < k ? 0 : h) + s_->cosets[r % k].front() - 1;
      for (std::size_t c = 0; c < 2 * k; ++c) {
        const std::size_t offset = c < k ? 0 : h;
        Complex acc{0.0, 0.0};
        for (std::size_t i : s_->cosets[c % k])
          acc += jf(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(offset + i - 1));
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
      }
    }
    return out;
  }

  /// Compressed coordinates -> stacked (x', y') in C^{2p-2}.
  Eigen::VectorXcd expand(const Eigen::VectorXcd& v) const {
    const std::size_t h = s_->p - 1, k = s_->k;
    Eigen::VectorXcd out(static_cast<Eigen::Index>(2 * h));
    for (std::size_t i = 1; i <= h; ++i) {
      const std::size_t l = s_->coset_of[i];
      out(static_cast<Eigen::Index>(i - 1)) = v(static_cast<Eigen::Index>(l));
      out(static_cast<Eigen::Index>(h + i - 1)) = v(static_cast<Eigen::Index>(k + l));
    }
    return out;
  }

 private:
  const CyclotomicStructure* s_;
  PhiSystem full_;
};

struct IndexKStart {
  std::vector<std::size_t> i;        // cosets forming K
  std::vector<std::size_t> i_prime;  // cosets forming L
  DegenerateSolution solution;
  std::vector<Complex> compressed;   // (c^x, c^y), length 2k
};

/// The C(2k, k) degenerate starts lying in E x E, ordered by (|I|, lex I, lex I').
inline std::vector<IndexKStart> index_k_starts(const CyclotomicStructure& s) {
  std::vector<std::size_t> labels(s.k);
  std::iota(labels.begin(), labels.end(), 0);
  auto union_of = [&](const std::vector<std::size_t>& ls) {
    std::vector<std::size_t> members;
    for (std::size_t l : ls) members.insert(members.end(), s.cosets[l].begin(), s.cosets[l].end());
    return IndexSet(s.p, std::move(members));
  };

  std::vector<IndexKStart> starts;
  for (std::size_t ni = 0; ni <= s.k; ++ni) {
    for (const auto& i : combinations(labels, ni)) {
      for (const auto& ip : combinations(labels, s.k - ni)) {
        DegenerateSolution sol = degenerate_solution(SupportPair(union_of(i), union_of(ip)));
        const std::vector<Complex> xs(sol.point.x().begin(), sol.point.x().end());
        const std::vector<Complex> ys(sol.point.y().begin(), sol.point.y().end());
        const double spread = std::max(coset_spread(xs, s), coset_spread(ys, s));
        if (!(spread < 1e-10))
          throw IntegrityError("index-k start is not coset-constant (spread " + std::to_string(spread) + ")");
        std::vector<Complex> packed = compress(xs, s);
        const std::vector<Complex> cy = compress(ys, s);
        packed.insert(packed.end(), cy.begin(), cy.end());
        starts.push_back({i, ip, std::move(sol), std::move(packed)});
      }
    }
  }
  return starts;
}

struct IndexKCluster {
  IndexKPoint c;                     // x-level coset values
  ComplexVector c_y;                 // y-level coset values
  std::vector<std::size_t> members;  // start indices
  std::size_t multiplicity = 0;
  XPoint x_level;
  ZRoot z_level;
  double chi_residual = 0.0;
  double sigma_residual = 0.0;
};

struct IndexKReport {
  CyclotomicStructure structure;
  Complex gamma;
  std::size_t start_count = 0;
  std::map<PathStatus, std::size_t> status_counts;
  std::vector<IndexKCluster> clusters;  // canonical order of c
  double wall_seconds = 0.0;

  std::size_t converged() const {
    auto it = status_counts.find(PathStatus::converged);
    return it == status_counts.end() ? 0 : it->second;
  }
  std::size_t total_multiplicity() const {
    std::size_t m = 0;
    for (const auto& c : clusters) m += c.multiplicity;
    return m;
  }
};

/// Tracks the C(2k, k) restricted paths to phi_E = (1, ..., 1).
inline IndexKReport solve_index_k(const CyclotomicStructure& s, const TrackerParams& params) {
  params.validate();
  const auto started = std::chrono::steady_clock::now();
  const std::vector<IndexKStart> starts = index_k_starts(s);
  const RestrictedPhiSystem sys(s);
  const Homotopy homotopy{gamma_from_seed(params.gamma_seed)};

  const std::vector<TrackOutcome> outcomes = parallel_map(
      starts.size(), [&](std::size_t i) { return track(sys, to_eigen(starts[i].compressed), homotopy, params); });

  IndexKReport report;
  report.structure = s;
  report.gamma = homotopy.gamma;
  report.start_count = starts.size();

  std::vector<std::size_t> index;
  std::vector<std::vector<Complex>> points;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    ++report.status_counts[outcomes[i].status];
    if (outcomes[i].status != PathStatus::converged) continue;
    index.push_back(i);
    points.push_back(to_std(outcomes[i].endpoint));
  }
  for (const auto& group : cluster_points(points, params.cluster_radius)) {
    std::vector<std::size_t> members;
    for (std::size_t g : group) members.push_back(index[g]);
    const std::vector<Complex>& v = points[group.front()];
    IndexKPoint c(ComplexVector(std::vector<Complex>(v.begin(), v.begin() + static_cast<long>(s.k))));
    ComplexVector cy(std::vector<Complex>(v.begin() + static_cast<long>(s.k), v.end()));
    XPoint x = lift_to_x_level(c, s);
    ZRoot z = z_from_x(x);
    const double chi_res = max_abs(chi_eval(c, s).values());
    const double sigma_res = max_abs(sigma_eval(x).values());
    report.clusters.push_back(IndexKCluster{std::move(c), std::move(cy), members, members.size(), std::move(x),
                                            std::move(z), chi_res, sigma_res});
  }
  std::sort(report.clusters.begin(), report.clusters.end(), [](const IndexKCluster& a, const IndexKCluster& b) {
    return canonical_less(a.c.values().values(), b.c.values().values());
  });
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace cyclic
