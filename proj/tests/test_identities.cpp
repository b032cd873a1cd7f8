#include <gtest/gtest.h>

#include "etaq/eisenstein.hpp"
#include "etaq/expand.hpp"
#include "oracles.hpp"

using namespace etaq;

namespace {

// (f|U_l)^l and f - theta^{l-1} f agree mod l to the given number of terms.
void expect_u_power_identity(const TruncatedSeries& f_exact, std::int64_t l, Exponent terms) {
  const Prime ell(l);
  const auto f = reduce_mod(f_exact, ell).truncate(terms * l);
  const auto lhs = pow(u_operator(f, ell), l);
  const auto rhs = sub(f, theta_power(f, l - 1));
  ASSERT_GE(lhs.precision(), terms);
  EXPECT_EQ(lhs.truncate(terms), rhs.truncate(terms));
}

}  // namespace

class UPowerIdentity : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(UPowerIdentity, NamedSeries) {
  const std::int64_t l = GetParam();
  const Exponent P = 100 * l;
  expect_u_power_identity(delta(P).series, l, 100);
  expect_u_power_identity(expand_product(ProductSpec::parse("1^-1"), P), l, 100);
  expect_u_power_identity(expand_product(ProductSpec::parse("1^-1 2^-1"), P), l, 100);
  expect_u_power_identity(expand_product(ProductSpec::parse("1^3 4^-2"), P), l, 100);
  expect_u_power_identity(eisenstein(4, P).series, l, 100);
}

TEST_P(UPowerIdentity, RandomSeries) {
  oracle::SeriesGen gen(static_cast<std::uint32_t>(GetParam()));
  for (int rep = 0; rep < 5; ++rep) expect_u_power_identity(gen.integers(0, 100 * GetParam()), GetParam(), 100);
}

INSTANTIATE_TEST_SUITE_P(Primes, UPowerIdentity, ::testing::Values(5, 7, 11));

// q^{-delta sum a} (prod Delta(a z))^delta = (prod prod (1 - q^{a n}))^{l^2} * sum c(n) q^n.
TEST(DeltaProductIdentity, TwoColorPartitionsAtSeven) {
  const auto spec = ProductSpec::parse("1^-1 2^-1");
  const Prime ell(7);
  const std::int64_t dl = delta_ell(ell);
  const Exponent shift_by = dl * *spec.parts_sum();
  const Exponent terms = 300;

  const auto d = delta(terms + shift_by + 2).series;
  const auto lhs = shift(pow(mul(d, dilate(d, 2)), dl), -shift_by);
  const auto eta_part = expand_product(ProductSpec::parse("1^1 2^1"), terms);
  const auto rhs = mul(pow(eta_part, 49), expand_product(spec, terms));
  ASSERT_GE(lhs.precision(), terms);
  ASSERT_GE(rhs.precision(), terms);
  EXPECT_EQ(lhs.truncate(terms), rhs.truncate(terms));
  EXPECT_EQ(shift(build_F(spec, ell, terms + shift_by, true).series, -shift_by).truncate(terms), rhs.truncate(terms));

  // Direct oracle for the left side body.
  const auto body = oracle::direct_product({{1, 48}, {2, 48}}, static_cast<int>(terms - 1));
  EXPECT_EQ(oracle::coefficients(lhs, 0, terms), body);
}
