#include "cyclic/fourier.hpp"

#include "cyclic/verify.hpp"
#include "test_support.hpp"

using namespace cyclic;
using cyclic::test::near;
using cyclic::test::unit_root;

TEST(Dft, ConstantMapsToScaledDelta) {
  EXPECT_TRUE(near(dft(ComplexVector{1.0, 1.0, 1.0}), {std::sqrt(3.0), 0.0, 0.0}, 1e-15));
}

TEST(Dft, DeltaMapsToFlatSpectrum) {
  for (std::size_t p : {2, 3, 5, 7, 13}) {
    const ComplexVector h = dft(ComplexVector::delta(p));
    for (const Complex& c : h) EXPECT_NEAR(std::abs(c - 1.0 / std::sqrt(double(p))), 0.0, 1e-15);
  }
}

TEST(Dft, MatchesNumpyOracle) {
  // numpy: exp(2j*pi*outer(j,j)/5)/sqrt(5) @ u
  const ComplexVector u{{1, 0}, {0, 2}, {-1, 0}, {0.5, 0}, {3, -1}};
  EXPECT_TRUE(near(dft(u),
                   {{1.5652475842498528, 0.4472135954999579},
                    {-0.23327111421557606, -1.5320779454923996},
                    {-1.495891569866216, -0.5124119607896591},
                    {0.08130176649118481, -0.2111948369603185},
                    {2.318681310840545, 1.8084711477424196}},
                   1e-14));
}

TEST(Dft, InverseRecoversInput) {
  SampleRng rng(11);
  for (std::size_t n : {1, 2, 5, 8, 13, 32}) {
    const ComplexVector u(rng.complex_vector(n));
    EXPECT_TRUE(near(inverse_dft(dft(u)).values(), u.values(), 1e-12));
  }
}

TEST(Dft, IsUnitary) {
  SampleRng rng(12);
  for (std::size_t n : {3, 7, 16, 32}) {
    const ComplexVector u(rng.complex_vector(n)), v(rng.complex_vector(n));
    const ComplexVector uh = dft(u), vh = dft(v);
    Complex lhs{0.0}, rhs{0.0};
    for (std::size_t i = 0; i < n; ++i) {
      lhs += uh[i] * std::conj(vh[i]);
      rhs += u[i] * std::conj(v[i]);
    }
    EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-12);
  }
}

TEST(DftSubmatrix, EntriesFollowKernel) {
  const Eigen::MatrixXcd a = dft_submatrix(IndexSet(3, {0}), IndexSet(3, {0}), 3);
  ASSERT_EQ(a.rows(), 1);
  EXPECT_NEAR(std::abs(a(0, 0) - 1.0 / std::sqrt(3.0)), 0.0, 1e-15);

  const Complex w = unit_root(3);
  const Eigen::MatrixXcd b = dft_submatrix(IndexSet(3, {1, 2}), IndexSet(3, {1, 2}), 3);
  const double s = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(std::abs(b(0, 0) - s * w), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(0, 1) - s * w * w), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(1, 0) - s * w * w), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(1, 1) - s * w), 0.0, 1e-15);

  const Eigen::MatrixXcd c = dft_submatrix(IndexSet(5, {1, 2}), IndexSet(5, {3, 4}), 5);
  const double s5 = 1.0 / std::sqrt(5.0);
  EXPECT_NEAR(std::abs(c(0, 0) - s5 * unit_root(5, 3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c(1, 1) - s5 * unit_root(5, 8)), 0.0, 1e-15);

  const Eigen::MatrixXcd d = dft_submatrix(IndexSet(5, {1}), IndexSet(5, {2}), 5, true);
  EXPECT_NEAR(std::abs(d(0, 0) - s5 * unit_root(5, -2)), 0.0, 1e-15);
}

TEST(DftSubmatrix, RejectsModulusMismatch) {
  EXPECT_THROW(dft_submatrix(IndexSet(7, {1}), IndexSet(5, {1}), 5), std::invalid_argument);
}

TEST(MinorNonsingularity, SmallCases) {
  EXPECT_NEAR(minor_nonsingularity(IndexSet(3, {0}), IndexSet(3, {0}), 3), 1.0 / std::sqrt(3.0), 1e-15);
  // 2x2 minor: |det| = 1/sqrt(3) and both singular values are 1/sqrt(3).
  const Eigen::MatrixXcd b = dft_submatrix(IndexSet(3, {1, 2}), IndexSet(3, {1, 2}), 3);
  EXPECT_NEAR(std::abs(b.determinant()), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_GT(minor_nonsingularity(IndexSet(3, {1, 2}), IndexSet(3, {1, 2}), 3), 0.0);
  // numpy oracle for the weakest 3x3 minor at p = 7
  EXPECT_NEAR(minor_nonsingularity(IndexSet(7, {0, 2, 4}), IndexSet(7, {1, 4, 5}), 7), 0.11191721417123747, 1e-14);
}

TEST(MinorNonsingularity, RejectsShapeErrors) {
  EXPECT_THROW(minor_nonsingularity(IndexSet(5, {1, 2}), IndexSet(5, {1}), 5), std::invalid_argument);
  EXPECT_THROW(minor_nonsingularity(IndexSet(5, {}), IndexSet(5, {}), 5), std::invalid_argument);
}

TEST(Support, Thresholding) {
  EXPECT_EQ(support(ComplexVector{1.0, 0.0, 0.0}, 0.0), IndexSet(3, {0}));
  EXPECT_EQ(support(ComplexVector{1.0, 1e-14, 0.5}, 1e-9), IndexSet(3, {0, 2}));
  EXPECT_EQ(support(dft(ComplexVector::delta(5)), 1e-9), IndexSet::all(5));
  EXPECT_THROW(support(ComplexVector{1.0}, -1.0), std::invalid_argument);
}

TEST(Uncertainty, ExtremalCases) {
  const auto a = uncertainty_check(ComplexVector::delta(5), 5);
  EXPECT_EQ(a.support_sum, 6u);
  EXPECT_TRUE(a.holds);
  const auto b = uncertainty_check(ComplexVector::constant(7, 1.0), 7);
  EXPECT_EQ(b.support_sum, 8u);
  EXPECT_TRUE(b.holds);
}

TEST(Uncertainty, RejectsZeroAndWrongLength) {
  EXPECT_THROW(uncertainty_check(ComplexVector::constant(5, 0.0), 5), std::invalid_argument);
  EXPECT_THROW(uncertainty_check(ComplexVector::delta(4), 5), std::invalid_argument);
}

TEST(Uncertainty, CompositeLengthCanViolateTheBound) {
  // For n = 4 the comb (1,0,1,0) has a two-point spectrum: 2 + 2 < 5.
  const ComplexVector comb{1.0, 0.0, 1.0, 0.0};
  EXPECT_EQ(support(dft(comb), 1e-9).size(), 2u);
}
