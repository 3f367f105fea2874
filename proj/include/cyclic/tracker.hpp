#pragma once

// Predictor-corrector path tracking for square systems F(v) = tau(t) * 1,
// where tau(t) = t (1 + gamma (1 - t)) bends the target segment [0, 1]
// through a random complex arc. Also: Newton polishing, single-linkage
// clustering of endpoints and an order-preserving parallel map.

#include <Eigen/Dense>

#include <atomic>
#include <concepts>
#include <exception>
#include <mutex>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <string_view>
#include <thread>

#include "cyclic/types.hpp"

namespace cyclic {

struct TrackerParams {
  std::uint64_t gamma_seed = 1;
  double initial_step = 1e-2;
  double min_step = 1e-10;
  double max_step = 0.1;
  double newton_tol = 1e-11;
  int newton_max_iters = 10;
  double endpoint_tol = 1e-7;
  double cluster_radius = 1e-6;
  double unimodular_tol = 1e-6;

  void validate() const {
    if (!(min_step > 0.0 && min_step <= initial_step && initial_step <= max_step && max_step <= 1.0))
      throw std::invalid_argument("TrackerParams: need 0 < min_step <= initial_step <= max_step <= 1");
    if (!(newton_tol > 0.0 && endpoint_tol > 0.0 && cluster_radius > 0.0 && unimodular_tol > 0.0))
      throw std::invalid_argument("TrackerParams: tolerances must be positive");
    if (newton_max_iters < 1) throw std::invalid_argument("TrackerParams: newton_max_iters must be >= 1");
  }
};

enum class PathStatus { converged, step_underflow, newton_divergence, coordinate_blowup };

inline constexpr std::string_view to_string(PathStatus s) {
  switch (s) {
    case PathStatus::converged: return "converged";
    case PathStatus::step_underflow: return "step_underflow";
    case PathStatus::newton_divergence: return "newton_divergence";
    case PathStatus::coordinate_blowup: return "coordinate_blowup";
  }
  return "unknown";
}

inline PathStatus path_status_from_string(std::string_view s) {
  for (PathStatus st : {PathStatus::converged, PathStatus::step_underflow, PathStatus::newton_divergence,
                        PathStatus::coordinate_blowup})
    if (to_string(st) == s) return st;
  throw std::invalid_argument("unknown path status: " + std::string(s));
}

/// Random arc parameter with |gamma| in [0.15, 0.3], derived from raw
/// mt19937_64 output so it is identical across standard libraries.
inline Complex gamma_from_seed(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double u1 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::polar(0.15 + 0.15 * u1, kTwoPi * u2);
}

struct Homotopy {
  Complex gamma;
  Complex tau(double t) const { return t * (1.0 + gamma * (1.0 - t)); }
  Complex tau_prime(double t) const { return 1.0 + gamma * (1.0 - 2.0 * t); }
};

template <class S>
concept SquareSystem = requires(const S& s, const Eigen::VectorXcd& v) {
  { s.dimension() } -> std::convertible_to<Eigen::Index>;
  { s.evaluate(v) } -> std::convertible_to<Eigen::VectorXcd>;
  { s.jacobian(v) } -> std::convertible_to<Eigen::MatrixXcd>;
};

inline double inf_norm(const Eigen::VectorXcd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline constexpr double kBlowupBound = 1e8;

struct NewtonResult {
  Eigen::VectorXcd point;
  double residual = 0.0;  // infinity norm of F(point) - target
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton on F(v) = target * 1. The returned point never has a
/// larger residual than the input.
template <SquareSystem S>
NewtonResult newton_polish(const S& sys, Eigen::VectorXcd v, Complex target, double tol, int max_iters) {
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(sys.dimension());
  auto residual_of = [&](const Eigen::VectorXcd& p) { return inf_norm(sys.evaluate(p) - target * ones); };

  NewtonResult best{v, residual_of(v), 0, false};
  if (best.residual < tol) {
    best.converged = true;
    return best;
  }
  for (int it = 1; it <= max_iters; ++it) {
    const Eigen::VectorXcd r = sys.evaluate(best.point) - target * ones;
    const Eigen::VectorXcd delta = sys.jacobian(best.point).fullPivLu().solve(r);
    if (!delta.allFinite()) break;
    // Backtrack until the residual drops.
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 8; ++k, lambda *= 0.5) {
      Eigen::VectorXcd trial = best.point - lambda * delta;
      const double res = residual_of(trial);
      if (std::isfinite(res) && res < best.residual) {
        best.point = std::move(trial);
        best.residual = res;
        improved = true;
        break;
      }
    }
    best.iterations = it;
    if (best.residual < tol) {
      best.converged = true;
      return best;
    }
    if (!improved) break;
  }
  return best;
}

struct TrackOutcome {
  Eigen::VectorXcd endpoint;
  PathStatus status = PathStatus::step_underflow;
  double final_residual = 0.0;
  int steps_taken = 0;
};

namespace detail {

// Relative update size at which the corrector is considered converged
// while the path parameter is still moving.
inline constexpr double kCorrectorTol = 1e-10;
inline constexpr int kMaxTrackSteps = 200000;

struct CorrectorResult {
  Eigen::VectorXcd point;
  int iterations = 0;
  bool ok = false;
};

template <SquareSystem S>
CorrectorResult correct(const S& sys, Eigen::VectorXcd v, Complex target, const Eigen::VectorXcd& ones,
                        int max_iters) {
  double previous = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    const Eigen::VectorXcd r = sys.evaluate(v) - target * ones;
    const Eigen::VectorXcd delta = sys.jacobian(v).partialPivLu().solve(r);
    if (!delta.allFinite()) return {std::move(v), it, false};
    v -= delta;
    const double size = inf_norm(delta);
    const double scale = 1.0 + inf_norm(v);
    if (size <= kCorrectorTol * scale) return {std::move(v), it, true};
    // Newton must contract from the first step on; otherwise the predicted
    // point is outside the basin of the current path.
    if (it == 1 && size > 0.1 * scale) return {std::move(v), it, false};
    if (it > 1 && size > 0.25 * previous) return {std::move(v), it, false};
    previous = size;
  }
  return {std::move(v), max_iters, false};
}

}  // namespace detail

/// Tracks the solution path of F(v) = tau(t) * 1 from `start` (a solution at
/// t = 0) to t = 1, then polishes the endpoint to params.newton_tol.
template <SquareSystem S>
TrackOutcome track(const S& sys, Eigen::VectorXcd start, const Homotopy& homotopy, const TrackerParams& params) {
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(sys.dimension());
  TrackOutcome out;
  Eigen::VectorXcd v = std::move(start);
  double t = 0.0;
  double h = params.initial_step;
  int easy_streak = 0;

  while (t < 1.0) {
    if (out.steps_taken >= detail::kMaxTrackSteps) {
      out.status = PathStatus::step_underflow;
      out.endpoint = v;
      out.final_residual = inf_norm(sys.evaluate(v) - homotopy.tau(t) * ones);
      return out;
    }
    h = std::min(h, 1.0 - t);
    double t_next = t + h;
    if (1.0 - t_next < 1e-14) t_next = 1.0;

    // Euler predictor along dv/dt = J^{-1} tau'(t) 1.
    const Eigen::VectorXcd tangent = sys.jacobian(v).partialPivLu().solve(homotopy.tau_prime(t) * ones);
    detail::CorrectorResult corr;
    if (tangent.allFinite()) {
      const Eigen::VectorXcd predicted = v + (t_next - t) * tangent;
      corr = detail::correct(sys, predicted, homotopy.tau(t_next), ones, params.newton_max_iters);
    }

    if (corr.ok) {
      v = std::move(corr.point);
      t = t_next;
      ++out.steps_taken;
      if (inf_norm(v) > kBlowupBound) {
        out.status = PathStatus::coordinate_blowup;
        out.endpoint = v;
        out.final_residual = inf_norm(sys.evaluate(v) - homotopy.tau(t) * ones);
        return out;
      }
      if (corr.iterations <= 2) {
        if (++easy_streak >= 2) {
          h = std::min(2.0 * h, params.max_step);
          easy_streak = 0;
        }
      } else {
        easy_streak = 0;
      }
    } else {
      h *= 0.5;
      easy_streak = 0;
      if (h < params.min_step) {
        out.status = PathStatus::step_underflow;
        out.endpoint = v;
        out.final_residual = inf_norm(sys.evaluate(v) - homotopy.tau(t) * ones);
        out.steps_taken = std::max(out.steps_taken, 1);
        return out;
      }
    }
  }

  NewtonResult polished = newton_polish(sys, v, Complex{1.0}, params.newton_tol, params.newton_max_iters);
  out.endpoint = std::move(polished.point);
  out.final_residual = polished.residual;
  out.status = polished.converged ? PathStatus::converged : PathStatus::newton_divergence;
  return out;
}

// ---------------------------------------------------------------------------
// Clustering

/// Single-linkage groups of points within `radius` of each other in the
/// infinity norm. Groups are ordered by their smallest member index and
/// members are sorted.
inline std::vector<std::vector<std::size_t>> cluster_points(const std::vector<std::vector<Complex>>& points,
                                                            double radius) {
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  // Sweep in order of the real part of the first coordinate; only points
  // whose keys differ by at most `radius` can be linked.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) { return points[i].empty() ? 0.0 : points[i][0].real(); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n && key(order[b]) - key(order[a]) <= radius; ++b) {
      if (max_abs_diff(points[order[a]], points[order[b]]) <= radius) unite(order[a], order[b]);
    }
  }

  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

// ---------------------------------------------------------------------------
// Concurrency

/// Worker count: CYCLIC_THREADS if set, otherwise hardware concurrency.
inline std::size_t default_thread_count() {
  if (const char* env = std::getenv("CYCLIC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = fn(i) for i in [0, n), evaluated on a worker pool. Results land
/// in index order regardless of scheduling; the first exception is rethrown.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, std::size_t threads = default_thread_count()) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<R>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace cyclic
