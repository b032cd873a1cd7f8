#include "etaq/eisenstein.hpp"

#include <string>

#include "etaq/error.hpp"
#include "etaq/expand.hpp"

namespace etaq {
namespace {

Integer binomial(std::int64_t n, std::int64_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

Rational bernoulli(std::int64_t m) {
  if (m < 0) throw InvalidArgument("Bernoulli index must be nonnegative");
  if (m > 1 && m % 2 == 1) {
    throw InvalidArgument("odd Bernoulli index " + std::to_string(m) + " rejected");
  }
  // sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1; odd k > 1 contribute nothing.
  std::vector<Rational> b(static_cast<std::size_t>(m) + 1);
  b[0] = 1;
  for (std::int64_t n = 1; n <= m; ++n) {
    if (n > 1 && n % 2 == 1) continue;
    Rational acc = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      if (k > 1 && k % 2 == 1) continue;
      acc += Rational(binomial(n + 1, k)) * b[k];
    }
    b[n] = -acc / Rational(n + 1);
    b[n].canonicalize();
  }
  return b[m];
}

FormWithWeight eisenstein(std::int64_t weight, Exponent precision, std::optional<Prime> p) {
  if (weight < 2 || weight % 2 != 0) {
    throw InvalidArgument("Eisenstein weight must be even and at least 2, got " + std::to_string(weight));
  }
  if (precision < 1) throw InvalidArgument("precision must be at least 1");
  Rational factor = Rational(-2 * weight) / bernoulli(weight);
  factor.canonicalize();
  const auto len = static_cast<std::size_t>(precision);
  const auto e = static_cast<unsigned long>(weight - 1);
  if (p) {
    if (mod(Integer(factor.get_den()), *p) == 0) {
      throw InvalidArgument("E_" + std::to_string(weight) + " normalization " + factor.get_str() + " is not " +
                            std::to_string(p->value()) + "-integral");
    }
    const std::uint64_t f = mod(factor, *p);
    TruncatedSeries::Residues c(len, 0);
    c[0] = 1 % p->value();
    // sigma_{w-1}(n) accumulated divisor by divisor.
    std::vector<std::uint64_t> sigma(len, 0);
    for (std::size_t d = 1; d < len; ++d) {
      const std::uint64_t dp = pow_mod(d % p->value(), e, *p);
      for (std::size_t n = d; n < len; n += d) sigma[n] = (sigma[n] + dp) % p->value();
    }
    for (std::size_t n = 1; n < len; ++n) c[n] = static_cast<std::uint32_t>(mul_mod(sigma[n], f, *p));
    return {TruncatedSeries::from_residues(0, std::move(c), *p), weight, 1};
  }
  if (factor.get_den() != 1) {
    throw InvalidArgument("E_" + std::to_string(weight) + " normalization " + factor.get_str() +
                          " is not integral; request a modulus");
  }
  const Integer f(factor.get_num());
  TruncatedSeries::Integers c(len);
  c[0] = 1;
  Integer dp;
  for (std::size_t d = 1; d < len; ++d) {
    mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), e);
    for (std::size_t n = d; n < len; n += d) c[n] += dp;
  }
  for (std::size_t n = 1; n < len; ++n) c[n] *= f;
  return {TruncatedSeries::from_integers(0, std::move(c)), weight, 1};
}

FormWithWeight delta(Exponent precision, std::optional<Prime> p) {
  if (precision < 2) throw InvalidArgument("Delta needs precision at least 2");
  auto series = shift(expand_product(ProductSpec({{1, 24}}), precision - 1, p), 1);
  return {std::move(series), 12, 1};
}

std::int64_t delta_ell(Prime ell) {
  if (ell.value() <= 3) throw InvalidArgument("delta_l requires a prime l > 3");
  const std::int64_t l = ell.signed_value();
  return (l * l - 1) / 24;
}

FormWithWeight build_F(const ProductSpec& spec, Prime ell, Exponent precision, bool exact) {
  if (ell.value() <= 3) throw InvalidArgument("F_l requires a prime l > 3");
  if (!spec.is_reciprocal()) {
    throw InvalidArgument("F_l needs a spec with only negative exponents, got '" + spec.to_string() + "'");
  }
  const std::int64_t dl = delta_ell(ell);
  const Exponent offset = dl * *spec.parts_sum();
  const std::int64_t weight = 12 * *spec.parts_count() * dl;
  const std::optional<Prime> p = exact ? std::nullopt : std::optional<Prime>(ell);
  if (precision <= offset) {
    return {TruncatedSeries::zero(precision, precision, p), weight, spec.level()};
  }
  // Delta(d z)^{delta_l} = q^{d delta_l} prod (1 - q^{d n})^{24 delta_l}.
  std::vector<EtaFactor> factors;
  for (const auto& f : spec.factors()) factors.push_back({f.d, -f.e * 24 * dl});
  auto series = shift(expand_product(ProductSpec(std::move(factors)), precision - offset, p), offset);
  return {std::move(series), weight, spec.level()};
}

FormWithWeight compute_R(const FormWithWeight& f, Prime ell, std::optional<Exponent> precision) {
  if (ell.value() < 5) throw InvalidArgument("compute_R requires l >= 5");
  const std::int64_t l = ell.signed_value();
  auto g = reduce_mod(f.series, ell);
  if (precision) g = g.truncate(std::min(*precision, g.precision()));
  const Exponent prec = std::max<Exponent>(g.precision(), 1);
  // k/12 as an element of F_l; 12 is a unit for l >= 5.
  const Integer kk(static_cast<long>(mod(Rational(f.weight, 12), ell)));
  const auto e2 = eisenstein(2, prec, ell).series;
  const auto e_lm1 = eisenstein(l - 1, prec, ell).series;
  const auto e_lp1 = eisenstein(l + 1, prec, ell).series;
  auto r = mul(sub(theta(g), scale(mul(e2, g), kk)), e_lm1) + scale(mul(e_lp1, g), kk);
  return {std::move(r), f.weight + l + 1, f.level};
}

}  // namespace etaq
