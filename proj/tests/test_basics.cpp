#include <gtest/gtest.h>

#include "dynkin/field.hpp"
#include "dynkin/stopping_set.hpp"
#include "dynkin/errors.hpp"

using namespace dynkin;

TEST(Field, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(parse_scalar<Rational>("60/11"), Rational(60, 11));
  EXPECT_EQ(parse_scalar<Rational>("0.2"), Rational(1, 5));
  EXPECT_EQ(parse_scalar<Rational>("-1.5e2"), Rational(-150));
  EXPECT_EQ(parse_scalar<Rational>("25e-2"), Rational(1, 4));
  EXPECT_DOUBLE_EQ(parse_scalar<double>("60/11"), 60.0 / 11.0);
  EXPECT_DOUBLE_EQ(parse_scalar<double>("1e-3"), 1e-3);
}

TEST(Field, RejectsGarbage) {
  EXPECT_THROW(parse_scalar<double>("abc"), std::invalid_argument);
  EXPECT_THROW(parse_scalar<Rational>("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_scalar<Rational>("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_scalar<double>(""), std::invalid_argument);
}

TEST(Field, FormatsShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(60.0 / 11.0), "5.454545454545454");
  EXPECT_EQ(parse_scalar<double>(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(format_scalar(Rational(60, 11)), "60/11");
  EXPECT_EQ(format_scalar(Rational(4)), "4");
}

TEST(StoppingSet, AlgebraAndCanonicalOrder) {
  StoppingSet a(6, {4, 1, 2});
  StoppingSet b(6, {2, 5});
  EXPECT_EQ(a.members(), (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_EQ((a | b).members(), (std::vector<std::size_t>{1, 2, 4, 5}));
  EXPECT_EQ((a & b).members(), (std::vector<std::size_t>{2}));
  EXPECT_EQ((a - b).members(), (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(a.complement().members(), (std::vector<std::size_t>{0, 3, 5}));
  EXPECT_TRUE(StoppingSet(6, {1}).subset_of(a));
  EXPECT_FALSE(a.subset_of(b));
  EXPECT_TRUE((a - b).disjoint_from(b));
  EXPECT_EQ(StoppingSet::all(3).size(), 3u);
  EXPECT_TRUE(StoppingSet(3).empty());
}

TEST(StoppingSet, RejectsOutOfRangeAndMixedUniverses) {
  StoppingSet a(3);
  EXPECT_THROW(a.insert(3), DimensionMismatch);
  EXPECT_THROW((void)(a | StoppingSet(4)), DimensionMismatch);
}
