#include "cyclic/tracker.hpp"

#include "test_support.hpp"

using namespace cyclic;

namespace {

// F(v)_i = v_i^2 + v_i: v = 0 solves F = 0, and F = 1 has the root (sqrt 5 - 1)/2.
struct QuadraticSystem {
  Eigen::Index n = 3;
  Eigen::Index dimension() const { return n; }
  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& v) const { return v.cwiseProduct(v) + v; }
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& v) const {
    return (2.0 * v + Eigen::VectorXcd::Ones(n)).asDiagonal();
  }
};

// F = 0 everywhere: the target is unreachable and the Jacobian is singular.
struct SingularSystem {
  Eigen::Index dimension() const { return 1; }
  Eigen::VectorXcd evaluate(const Eigen::VectorXcd&) const { return Eigen::VectorXcd::Zero(1); }
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd&) const { return Eigen::MatrixXcd::Zero(1, 1); }
};

}  // namespace

TEST(TrackerParams, Validation) {
  TrackerParams ok;
  EXPECT_NO_THROW(ok.validate());
  TrackerParams a;
  a.min_step = 0.5;
  EXPECT_THROW(a.validate(), std::invalid_argument);
  TrackerParams b;
  b.max_step = 2.0;
  EXPECT_THROW(b.validate(), std::invalid_argument);
  TrackerParams c;
  c.newton_tol = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  TrackerParams d;
  d.newton_max_iters = 0;
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(PathStatus, StringRoundTrip) {
  for (PathStatus s : {PathStatus::converged, PathStatus::step_underflow, PathStatus::newton_divergence,
                       PathStatus::coordinate_blowup})
    EXPECT_EQ(path_status_from_string(to_string(s)), s);
  EXPECT_THROW(path_status_from_string("lost"), std::invalid_argument);
}

TEST(Homotopy, GammaIsSeededAndBounded) {
  EXPECT_EQ(gamma_from_seed(1), gamma_from_seed(1));
  EXPECT_NE(gamma_from_seed(1), gamma_from_seed(2));
  for (std::uint64_t s = 0; s < 200; ++s) {
    const double r = std::abs(gamma_from_seed(s));
    EXPECT_GE(r, 0.15 - 1e-15);
    EXPECT_LE(r, 0.3 + 1e-15);
  }
  const Homotopy h{gamma_from_seed(9)};
  EXPECT_EQ(h.tau(0.0), Complex(0.0));
  EXPECT_NEAR(std::abs(h.tau(1.0) - 1.0), 0.0, 1e-15);
  const double t = 0.37, e = 1e-6;
  EXPECT_NEAR(std::abs((h.tau(t + e) - h.tau(t - e)) / (2 * e) - h.tau_prime(t)), 0.0, 1e-8);
}

TEST(NewtonPolish, ConvergesQuadratically) {
  const QuadraticSystem sys;
  const double root = (std::sqrt(5.0) - 1.0) / 2.0;
  const NewtonResult r = newton_polish(sys, Eigen::VectorXcd::Constant(3, 0.7), 1.0, 1e-13, 10);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.iterations, 6);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(r.point(i) - root), 0.0, 1e-13);
}

TEST(NewtonPolish, NeverIncreasesResidual) {
  const SingularSystem sys;
  const Eigen::VectorXcd v = Eigen::VectorXcd::Constant(1, 2.0);
  const NewtonResult r = newton_polish(sys, v, 1.0, 1e-12, 5);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.point, v);
  EXPECT_NEAR(r.residual, 1.0, 0.0);
}

TEST(Track, FollowsToyPathToTarget) {
  const QuadraticSystem sys;
  TrackerParams params;
  const TrackOutcome out = track(sys, Eigen::VectorXcd::Zero(3), Homotopy{gamma_from_seed(3)}, params);
  ASSERT_EQ(out.status, PathStatus::converged);
  EXPECT_LT(out.final_residual, params.newton_tol);
  EXPECT_GE(out.steps_taken, 1);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(out.endpoint(i) - (std::sqrt(5.0) - 1.0) / 2.0), 0.0, 1e-12);
}

TEST(Track, SingularJacobianUnderflows) {
  const SingularSystem sys;
  const TrackOutcome out = track(sys, Eigen::VectorXcd::Zero(1), Homotopy{gamma_from_seed(3)}, TrackerParams{});
  EXPECT_EQ(out.status, PathStatus::step_underflow);
  EXPECT_GE(out.steps_taken, 1);
}

TEST(ClusterPoints, SingleLinkageChains) {
  const std::vector<std::vector<Complex>> pts = {
      {0.0, 0.0}, {5e-7, 0.0}, {1.0, 1.0}, {1e-6, 0.0}, {1.0, 1.0 + 2e-6}, {1.0 + 5e-7, 1.0}};
  const auto groups = cluster_points(pts, 6e-7);
  // 0 - 1 - 3 chain together; 2 - 5 link; 4 is 2e-6 away from 2.
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0], (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(groups[1], (std::vector<std::size_t>{2, 5}));
  EXPECT_EQ(groups[2], (std::vector<std::size_t>{4}));
  EXPECT_TRUE(cluster_points({}, 1e-6).empty());
}

TEST(ParallelMap, PreservesOrderAcrossThreadCounts) {
  for (std::size_t threads : {1, 2, 4, 16}) {
    const auto out = parallel_map(100, [](std::size_t i) { return i * i; }, threads);
    ASSERT_EQ(out.size(), 100u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  }
}

TEST(ParallelMap, RethrowsWorkerException) {
  EXPECT_THROW(parallel_map(
                   50,
                   [](std::size_t i) {
                     if (i == 17) throw std::runtime_error("boom");
                     return i;
                   },
                   4),
               std::runtime_error);
}
