#include "test_support.hpp"

using namespace cyclic;

TEST(ComplexVector, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(ComplexVector(std::vector<Complex>{}), std::invalid_argument);
  EXPECT_THROW(ComplexVector({Complex{1.0, 0.0}, Complex{std::nan(""), 0.0}}), std::invalid_argument);
  EXPECT_THROW(ComplexVector({Complex{INFINITY, 0.0}}), std::invalid_argument);
}

TEST(ComplexVector, CyclicIndexing) {
  const ComplexVector v{1.0, 2.0, 3.0};
  EXPECT_EQ(v.cyclic(3), Complex(1.0));
  EXPECT_EQ(v.cyclic(-1), Complex(3.0));
  EXPECT_EQ(v.cyclic(-7), Complex(3.0));
  EXPECT_EQ(ComplexVector::delta(4, 2)[2], Complex(1.0));
  EXPECT_EQ(ComplexVector::constant(3, 2.0)[1], Complex(2.0));
}

TEST(IndexSet, SortsAndValidates) {
  const IndexSet s(7, {5, 1, 3});
  EXPECT_EQ(s.members(), (std::vector<std::size_t>{1, 3, 5}));
  EXPECT_THROW(IndexSet(7, {1, 1}), std::invalid_argument);
  EXPECT_THROW(IndexSet(7, {7}), std::invalid_argument);
  EXPECT_THROW(IndexSet(0, {}), std::invalid_argument);
}

TEST(IndexSet, NegationAndComplement) {
  const IndexSet s(7, {0, 1, 3});
  EXPECT_EQ(s.negated(), IndexSet(7, {0, 6, 4}));
  EXPECT_EQ(IndexSet(7, {1, 3}).complement_in(IndexSet::units(7)), IndexSet(7, {2, 4, 5, 6}));
  EXPECT_EQ(IndexSet(5, {2}).with(0), IndexSet(5, {0, 2}));
  EXPECT_EQ(to_string(IndexSet(5, {1, 4})), "{1,4}");
}

TEST(NumberHelpers, PrimesAndBinomials) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(13));
  EXPECT_FALSE(is_prime(15));
  EXPECT_THROW(require_prime(9), std::invalid_argument);
  EXPECT_EQ(binomial(12, 6), 924u);
  EXPECT_EQ(binomial(20, 10), 184756u);
  EXPECT_EQ(binomial(3, 5), 0u);
}

TEST(NumberHelpers, CombinationsInLexOrder) {
  const auto c = combinations({1, 2, 3, 4}, 2);
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.front(), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(c[1], (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(c.back(), (std::vector<std::size_t>{3, 4}));
  EXPECT_EQ(combinations({1, 2}, 0).size(), 1u);
  EXPECT_TRUE(combinations({1, 2}, 3).empty());
}
