#include <gtest/gtest.h>

#include "etaq/eisenstein.hpp"
#include "etaq/error.hpp"
#include "etaq/expand.hpp"
#include "oracles.hpp"

using namespace etaq;

namespace {

// B_m from sum_{k=0}^{m} C(m+1, k) B_k = 0, recomputed here with plain
// rationals.
std::vector<Rational> bernoulli_table(int m) {
  std::vector<Rational> b(m + 1);
  b[0] = 1;
  for (int n = 1; n <= m; ++n) {
    Rational s = 0;
    mpz_class binom = 1;  // C(n+1, k)
    for (int k = 0; k < n; ++k) {
      s += Rational(binom) * b[k];
      binom = binom * (n + 1 - k) / (k + 1);
    }
    b[n] = -s / Rational(n + 1);
  }
  return b;
}

}  // namespace

TEST(Bernoulli, KnownValues) {
  EXPECT_EQ(bernoulli(0), Rational(1));
  EXPECT_EQ(bernoulli(1), Rational(-1, 2));
  EXPECT_EQ(bernoulli(2), Rational(1, 6));
  EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
  const auto table = bernoulli_table(40);
  for (int m = 0; m <= 40; m += 2) EXPECT_EQ(bernoulli(m), table[m]) << m;
}

TEST(Bernoulli, RejectsOddAndNegative) {
  EXPECT_THROW(bernoulli(3), InvalidArgument);
  EXPECT_THROW(bernoulli(13), InvalidArgument);
  EXPECT_THROW(bernoulli(-2), InvalidArgument);
}

TEST(Eisenstein, Coefficients) {
  const auto e4 = eisenstein(4, 30).series;
  EXPECT_EQ(e4[0], 1);
  EXPECT_EQ(e4[1], 240);
  for (int n = 1; n < 30; ++n) EXPECT_EQ(e4[n], 240 * oracle::sigma(n, 3)) << n;
  const auto e6 = eisenstein(6, 30).series;
  for (int n = 1; n < 30; ++n) EXPECT_EQ(e6[n], -504 * oracle::sigma(n, 5)) << n;
  const auto e2 = eisenstein(2, 30).series;
  for (int n = 1; n < 30; ++n) EXPECT_EQ(e2[n], -24 * oracle::sigma(n, 1)) << n;
  EXPECT_EQ(eisenstein(12, 5, Prime(13)).weight, 12);
}

TEST(Eisenstein, IntegralityChecks) {
  // 2w/B_w for w = 12 is -65520/691: not integral, but 691 is the only bad prime.
  EXPECT_THROW(eisenstein(12, 10), InvalidArgument);
  EXPECT_THROW(eisenstein(12, 10, Prime(691)), InvalidArgument);
  EXPECT_NO_THROW(eisenstein(12, 10, Prime(13)));
  EXPECT_THROW(eisenstein(5, 10), InvalidArgument);
  EXPECT_THROW(eisenstein(0, 10), InvalidArgument);
}

TEST(Eisenstein, ProductIdentities) {
  const auto e4 = eisenstein(4, 60).series;
  const auto e6 = eisenstein(6, 60).series;
  EXPECT_EQ(mul(e4, e4), eisenstein(8, 60).series);
  EXPECT_EQ(mul(e4, e6), eisenstein(10, 60).series);
  // 1728 Delta = E4^3 - E6^2.
  EXPECT_EQ(sub(pow(e4, 3), pow(e6, 2)), scale(delta(60).series, 1728));
}

class EisensteinModL : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(EisensteinModL, CongruencesAtLPlusMinusOne) {
  const std::int64_t l = GetParam();
  const Prime ell(l);
  EXPECT_EQ(eisenstein(l - 1, 200, ell).series, TruncatedSeries::one(200, ell));
  EXPECT_EQ(eisenstein(l + 1, 200, ell).series, eisenstein(2, 200, ell).series);
}

INSTANTIATE_TEST_SUITE_P(Primes, EisensteinModL, ::testing::Values(5, 7, 11, 13));

TEST(Delta, Coefficients) {
  const auto d = delta(51).series;
  EXPECT_EQ(d[0], 0);
  EXPECT_EQ(d[1], 1);
  EXPECT_EQ(d[2], -24);
  EXPECT_EQ(d[12], -370944);
  EXPECT_EQ(oracle::coefficients(d, 0, 51), oracle::delta_direct(50));
  EXPECT_EQ(delta(51, Prime(691)).series, reduce_mod(d, Prime(691)));
  EXPECT_THROW(delta(1), InvalidArgument);
}

TEST(BuildF, WeightOffsetAndLeadingTerm) {
  EXPECT_EQ(delta_ell(Prime(5)), 1);
  EXPECT_EQ(delta_ell(Prime(7)), 2);
  EXPECT_EQ(delta_ell(Prime(11)), 5);
  EXPECT_THROW(delta_ell(Prime(3)), InvalidArgument);

  const auto spec = ProductSpec::parse("1^-1 2^-1");
  const auto f5 = build_F(spec, Prime(5), 40);
  EXPECT_EQ(f5.weight, 24);
  EXPECT_EQ(f5.level, 2);
  EXPECT_EQ(f5.series.valuation(), 3);
  EXPECT_EQ(f5.series[3], 1);
  for (std::int64_t l : {5, 7, 11, 13}) {
    const auto f = build_F(spec, Prime(l), 200);
    const auto offset = delta_ell(Prime(l)) * 3;
    for (Exponent n = 0; n < offset && n < 200; ++n) EXPECT_EQ(f.series[n], 0);
    if (offset < 200) EXPECT_EQ(f.series[offset], 1);
  }
  EXPECT_THROW(build_F(spec, Prime(3), 10), InvalidArgument);
  EXPECT_THROW(build_F(ProductSpec::parse("1^1"), Prime(5), 10), InvalidArgument);
}

TEST(BuildF, ExactFormIsProductOfDilatedDeltas) {
  const auto spec = ProductSpec::parse("1^-1 2^-1");
  const Prime ell(7);
  const Exponent P = 306;
  const auto d = delta(P).series;
  const auto lhs = pow(mul(d, dilate(d, 2).truncate(P)), delta_ell(ell));
  EXPECT_EQ(build_F(spec, ell, P, true).series, lhs);
  EXPECT_EQ(build_F(spec, ell, P).series, reduce_mod(lhs, ell));
}

TEST(BuildF, PrecisionBelowOffset) {
  const auto f = build_F(ProductSpec::parse("1^-1 2^-1"), Prime(13), 5);
  EXPECT_TRUE(f.series.is_zero());
  EXPECT_EQ(f.series.precision(), 5);
}

class ComputeR : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(ComputeR, CongruentToTheta) {
  const std::int64_t l = GetParam();
  const Prime ell(l);
  const std::vector<FormWithWeight> forms{
      delta(120), eisenstein(4, 120), eisenstein(6, 120),
      {mul(delta(120).series, eisenstein(4, 120).series), 16, 1},
      {pow(delta(120).series, 3), 36, 1},
      build_F(ProductSpec::parse("1^-2"), ell, 120, true),
      build_F(ProductSpec::parse("1^-1 3^-1"), ell, 120)};
  for (const auto& f : forms) {
    const auto r = compute_R(f, ell);
    EXPECT_EQ(r.weight, f.weight + l + 1);
    EXPECT_EQ(r.series, theta(reduce_mod(f.series, ell))) << "weight " << f.weight;
    EXPECT_EQ(r.series.modulus(), ell);
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, ComputeR, ::testing::Values(5, 7, 11, 13));

TEST(ComputeRErrors, SmallPrimes) {
  EXPECT_THROW(compute_R(delta(20), Prime(3)), InvalidArgument);
  EXPECT_THROW(compute_R(delta(20), Prime(2)), InvalidArgument);
  EXPECT_EQ(compute_R(delta(20), Prime(5)).weight, 18);
}
