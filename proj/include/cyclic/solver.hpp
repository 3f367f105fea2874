#pragma once

// Full cyclic p-root solve: every degenerate zero of phi is tracked to
// phi = (1, ..., 1); endpoints are clustered, mapped to x- and z-level and
// flagged when unimodular.

#include <chrono>
#include <map>

#include "cyclic/start_system.hpp"
#include "cyclic/tracker.hpp"

namespace cyclic {

/// phi on C^{2p-2} in the stacked coordinates (x_1..x_{p-1}, y_1..y_{p-1}).
class PhiSystem {
 public:
  explicit PhiSystem(std::size_t p) : p_(p), roots_(&roots_of_unity(p)) {
    if (p < 2) throw std::invalid_argument("PhiSystem: need p >= 2");
  }

  std::size_t p() const noexcept { return p_; }
  Eigen::Index dimension() const noexcept { return static_cast<Eigen::Index>(2 * (p_ - 1)); }

  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& v) const {
    std::vector<Complex> x, y;
    split(v, x, y);
    Eigen::VectorXcd out(dimension());
    detail::phi_full(x, y, *roots_, std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())));
    return out;
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& v) const {
    std::vector<Complex> x, y;
    split(v, x, y);
    return detail::phi_jacobian_full(x, y, *roots_);
  }

 private:
  void split(const Eigen::VectorXcd& v, std::vector<Complex>& x, std::vector<Complex>& y) const {
    const std::size_t h = p_ - 1;
    x.assign(p_, Complex{1.0});
    y.assign(p_, Complex{1.0});
    for (std::size_t i = 0; i < h; ++i) {
      x[i + 1] = v(static_cast<Eigen::Index>(i));
      y[i + 1] = v(static_cast<Eigen::Index>(h + i));
    }
  }

  std::size_t p_;
  const RootTable* roots_;
};

inline Eigen::VectorXcd to_eigen(std::span<const Complex> v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

inline std::vector<Complex> to_std(const Eigen::VectorXcd& v) {
  return std::vector<Complex>(v.data(), v.data() + v.size());
}

struct PathResult {
  SupportPair start_pair;
  XYPoint endpoint;
  PathStatus status;
  double final_residual = 0.0;
  double endpoint_jacobian_min_sv = 0.0;
  int steps_taken = 0;
};

inline PathResult track_path(const DegenerateSolution& start, const TrackerParams& params) {
  params.validate();
  if (!(start.residual < 1e-10))
    throw std::invalid_argument("track_path: start residual must be below 1e-10");
  const PhiSystem sys(start.pair.p());
  const Homotopy homotopy{gamma_from_seed(params.gamma_seed)};
  const TrackOutcome out = track(sys, to_eigen(start.point.stacked()), homotopy, params);
  const std::vector<Complex> endpoint = to_std(out.endpoint);
  double sv = 0.0;
  if (out.endpoint.allFinite()) sv = smallest_singular_value(sys.jacobian(out.endpoint));
  return PathResult{start.pair,
                    XYPoint::from_stacked(endpoint),
                    out.status,
                    out.final_residual,
                    sv,
                    std::max(out.steps_taken, 1)};
}

struct RefineResult {
  XYPoint point;
  double residual = 0.0;
  bool converged = false;
};

/// Newton polish of a near-root of phi(v) = (1, ..., 1). When the target
/// tolerance is not reached the input comes back unchanged with
/// converged = false.
inline RefineResult refine_root(const XYPoint& endpoint, double tol, int max_iters = 20) {
  const PhiSystem sys(endpoint.p());
  const Eigen::VectorXcd v = to_eigen(endpoint.stacked());
  const double start = inf_norm(sys.evaluate(v) - Eigen::VectorXcd::Ones(sys.dimension()));
  if (!(start < 1e-2))
    throw std::invalid_argument("refine_root: residual " + std::to_string(start) + " is not below 1e-2");
  const NewtonResult r = newton_polish(sys, v, Complex{1.0}, tol, max_iters);
  if (!r.converged) return {endpoint, start, false};
  return {XYPoint::from_stacked(to_std(r.point)), r.residual, true};
}

// ---------------------------------------------------------------------------

struct RootCluster {
  XYPoint representative;
  std::vector<std::size_t> members;  // path indices in enumeration order
  std::size_t multiplicity = 0;
  bool is_unimodular = false;
  XPoint x_level;
  ZRoot z_level;
  double residual = 0.0;
  double jacobian_min_sv = 0.0;
};

inline bool is_unimodular(const ZRoot& z, double tol) {
  for (const Complex& c : z.values())
    if (std::abs(std::abs(c) - 1.0) > tol) return false;
  return true;
}

/// Lexicographic order on (re, im) of coordinates rounded to 1e-8.
inline bool canonical_less(std::span<const Complex> a, std::span<const Complex> b) {
  auto q = [](double v) { return std::llround(v * 1e8); };
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto ar = q(a[i].real()), br = q(b[i].real());
    if (ar != br) return ar < br;
    const auto ai = q(a[i].imag()), bi = q(b[i].imag());
    if (ai != bi) return ai < bi;
  }
  return a.size() < b.size();
}

/// True when a and b pair up one-to-one with infinity-norm distance <= tol.
inline bool same_point_set(const std::vector<std::vector<Complex>>& a, const std::vector<std::vector<Complex>>& b,
                           double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& pa : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && pa.size() == b[j].size() && max_abs_diff(pa, b[j]) <= tol) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

struct SolveReport {
  std::size_t p = 0;
  Complex gamma;
  std::size_t total_paths = 0;
  std::map<PathStatus, std::size_t> status_counts;
  std::vector<RootCluster> clusters;   // canonical z-level order
  std::vector<PathResult> failed;      // non-converged paths, enumeration order
  double wall_seconds = 0.0;

  std::size_t distinct() const noexcept { return clusters.size(); }
  std::size_t unimodular() const {
    return static_cast<std::size_t>(
        std::count_if(clusters.begin(), clusters.end(), [](const RootCluster& c) { return c.is_unimodular; }));
  }
  std::size_t total_multiplicity() const {
    std::size_t m = 0;
    for (const auto& c : clusters) m += c.multiplicity;
    return m;
  }
  std::size_t converged() const {
    auto it = status_counts.find(PathStatus::converged);
    return it == status_counts.end() ? 0 : it->second;
  }
};

/// Groups converged endpoints and attaches x/z-level data to each group.
inline std::vector<RootCluster> cluster_endpoints(const std::vector<PathResult>& paths, const TrackerParams& params) {
  std::vector<std::size_t> index;
  std::vector<std::vector<Complex>> points;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].status != PathStatus::converged) continue;
    index.push_back(i);
    points.push_back(paths[i].endpoint.stacked());
  }
  std::vector<RootCluster> clusters;
  for (const auto& group : cluster_points(points, params.cluster_radius)) {
    std::vector<std::size_t> members;
    for (std::size_t g : group) members.push_back(index[g]);
    const PathResult& rep = paths[members.front()];
    XPoint x(rep.endpoint.x());
    ZRoot z = z_from_x(x);
    const bool uni = is_unimodular(z, params.unimodular_tol);
    clusters.push_back(RootCluster{rep.endpoint, members, members.size(), uni, std::move(x), std::move(z),
                                   rep.final_residual, rep.endpoint_jacobian_min_sv});
  }
  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    return canonical_less(a.z_level.values().values(), b.z_level.values().values());
  });
  return clusters;
}

/// Tracks all C(2p-2, p-1) paths and reports the clustered roots.
inline SolveReport solve_cyclic_system(std::size_t p, const TrackerParams& params) {
  require_prime(p);
  params.validate();
  const auto started = std::chrono::steady_clock::now();

  const std::vector<SupportPair> pairs = enumerate_support_pairs(p);
  std::vector<PathResult> paths =
      parallel_map(pairs.size(), [&](std::size_t i) { return track_path(degenerate_solution(pairs[i]), params); });

  SolveReport report;
  report.p = p;
  report.gamma = gamma_from_seed(params.gamma_seed);
  report.total_paths = paths.size();
  for (const auto& path : paths) {
    ++report.status_counts[path.status];
    if (path.status != PathStatus::converged) report.failed.push_back(path);
  }
  report.clusters = cluster_endpoints(paths, params);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace cyclic
