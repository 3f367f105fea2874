#include "cyclic/hadamard.hpp"

#include "cyclic/solver.hpp"
#include "test_support.hpp"

using namespace cyclic;
using cyclic::test::near;
using cyclic::test::unit_root;

namespace {

ComplexVector gauss_sequence(std::size_t n) {
  std::vector<Complex> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = unit_root(n, static_cast<long long>(j * j));
  return ComplexVector(std::move(x));
}

}  // namespace

TEST(Biunimodular, FromCubeRootTriple) {
  const Complex w = unit_root(3);
  const BiunimodularSequence x = biunimodular_from_root(ZRoot(ComplexVector{1.0, w, w * w}));
  EXPECT_TRUE(near(x.values(), {1.0, 1.0, w}, 1e-15));
  for (const Complex& c : dft(x.values())) EXPECT_NEAR(std::abs(c), 1.0, 1e-14);
}

TEST(Biunimodular, FromP2Root) {
  const Complex i{0.0, 1.0};
  EXPECT_TRUE(near(biunimodular_from_root(ZRoot(ComplexVector{i, -i})).values(), {1.0, i}, 0.0));
}

TEST(Biunimodular, GaussSequenceComesFromACyclicRoot) {
  const ComplexVector g = gauss_sequence(5);
  const ZRoot z = z_from_x(XPoint(ComplexVector(std::vector<Complex>(g.begin() + 1, g.end()))));
  EXPECT_LT(rho_residual(z), 1e-12);
  EXPECT_TRUE(near(biunimodular_from_root(z).values().values(), g.values(), 1e-14));
}

TEST(Biunimodular, Rejections) {
  EXPECT_THROW(biunimodular_from_root(ZRoot(ComplexVector{1.0, 1.0, 1.0})), std::invalid_argument);
  EXPECT_THROW(biunimodular_from_root(ZRoot(ComplexVector{2.0, 0.5})), std::invalid_argument);
  EXPECT_THROW(BiunimodularSequence(ComplexVector{1.0, 1.0, 1.0}, 1e-6), std::invalid_argument);
  EXPECT_THROW(BiunimodularSequence(ComplexVector{-1.0, 1.0}, 1e-6), std::invalid_argument);
  EXPECT_NO_THROW(BiunimodularSequence(gauss_sequence(7), 1e-9));
}

TEST(Circulant, Layout) {
  const Complex i{0.0, 1.0};
  const CirculantMatrix h = circulant_from_sequence(BiunimodularSequence(ComplexVector{1.0, i}, 1e-12));
  EXPECT_EQ(h(0, 0), Complex(1.0));
  EXPECT_EQ(h(0, 1), i);
  EXPECT_EQ(h(1, 0), i);
  EXPECT_EQ(h(1, 1), Complex(1.0));

  const Complex w = unit_root(3);
  const CirculantMatrix g(ComplexVector{1.0, 1.0, w});
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(g(j, k), g.seed()[(j + 3 - k) % 3]);
  EXPECT_EQ(g(0, 1), w);
  EXPECT_EQ(g(0, 2), Complex(1.0));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(g(j, j), Complex(1.0));
}

TEST(HadamardDefect, Examples) {
  const Complex w = unit_root(3);
  EXPECT_LT(hadamard_defect(CirculantMatrix(ComplexVector{1.0, 1.0, w})), 1e-12);
  EXPECT_LT(hadamard_defect(CirculantMatrix(gauss_sequence(5))), 1e-10);
  EXPECT_NEAR(hadamard_defect(CirculantMatrix(ComplexVector{1.0, 1.0, 1.0})), 3.0 * std::sqrt(6.0), 1e-12);
}

TEST(HadamardDefect, EveryUnimodularP5RootGivesAHadamardMatrix) {
  const SolveReport r = solve_cyclic_system(5, TrackerParams{});
  std::size_t count = 0;
  for (const auto& c : r.clusters) {
    if (!c.is_unimodular) {
      EXPECT_THROW(biunimodular_from_root(c.z_level), std::invalid_argument);
      continue;
    }
    ++count;
    EXPECT_LT(hadamard_defect(circulant_from_sequence(biunimodular_from_root(c.z_level))), 1e-8);
  }
  EXPECT_EQ(count, 20u);
}
