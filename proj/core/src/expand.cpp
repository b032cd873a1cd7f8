#include "etaq/expand.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "etaq/error.hpp"

namespace etaq {
namespace {

using Integers = TruncatedSeries::Integers;
using Residues = TruncatedSeries::Residues;

struct PentagonalTerm {
  Exponent exponent;  // k(3k - 1)/2 for k = +-1, +-2, ...
  int sign;           // (-1)^k
};

// Nonzero terms of prod (1 - q^n) - 1 with exponent below bound, increasing.
std::vector<PentagonalTerm> pentagonal_terms(Exponent bound) {
  std::vector<PentagonalTerm> terms;
  for (Exponent k = 1;; ++k) {
    const int sign = (k % 2 == 0) ? 1 : -1;
    const Exponent g1 = k * (3 * k - 1) / 2;
    const Exponent g2 = k * (3 * k + 1) / 2;
    if (g1 >= bound) break;
    terms.push_back({g1, sign});
    if (g2 < bound) terms.push_back({g2, sign});
  }
  return terms;
}

// c <- c * E(q^stride) or c <- c / E(q^stride), in place.
void apply_euler(Integers& c, Exponent stride, bool divide) {
  const auto len = static_cast<Exponent>(c.size());
  if (stride >= len) return;
  const auto terms = pentagonal_terms(ceil_div(len, stride));
  auto step = [&](Exponent m) {
    for (const auto& t : terms) {
      const Exponent src = m - t.exponent * stride;
      if (src < 0) break;
      // Multiplying adds s_t c[m - g]; dividing subtracts it.
      if ((t.sign > 0) != divide) {
        c[m] += c[src];
      } else {
        c[m] -= c[src];
      }
    }
  };
  if (divide) {
    for (Exponent m = 0; m < len; ++m) step(m);
  } else {
    for (Exponent m = len - 1; m >= 0; --m) step(m);
  }
}

void apply_euler(Residues& c, Exponent stride, bool divide, Prime p) {
  const auto len = static_cast<Exponent>(c.size());
  if (stride >= len) return;
  const auto terms = pentagonal_terms(ceil_div(len, stride));
  const std::uint64_t pv = p.value();
  auto step = [&](Exponent m) {
    std::uint64_t acc = c[m];
    for (const auto& t : terms) {
      const Exponent src = m - t.exponent * stride;
      if (src < 0) break;
      acc += ((t.sign > 0) != divide) ? c[src] : pv - c[src];
    }
    c[m] = static_cast<std::uint32_t>(acc % pv);
  };
  if (divide) {
    for (Exponent m = 0; m < len; ++m) step(m);
  } else {
    for (Exponent m = len - 1; m >= 0; --m) step(m);
  }
}

std::vector<std::int64_t> divisor_sums(Exponent len) {
  std::vector<std::int64_t> sigma(static_cast<std::size_t>(len), 0);
  for (Exponent d = 1; d < len; ++d) {
    for (Exponent m = d; m < len; m += d) sigma[m] += d;
  }
  return sigma;
}

Integers expand_log_derivative(const ProductSpec& spec, Exponent len) {
  const auto sigma = divisor_sums(len);
  std::vector<std::int64_t> g(static_cast<std::size_t>(len), 0);
  for (const auto& f : spec.factors()) {
    for (Exponent t = 1; f.d * t < len; ++t) g[f.d * t] += f.e * f.d * sigma[t];
  }
  Integers c(static_cast<std::size_t>(len));
  c[0] = 1;
  Integer acc;
  for (Exponent m = 1; m < len; ++m) {
    acc = 0;
    for (Exponent k = 1; k <= m; ++k) {
      const std::int64_t gk = g[k];
      if (gk > 0) {
        mpz_submul_ui(acc.get_mpz_t(), c[m - k].get_mpz_t(), static_cast<unsigned long>(gk));
      } else if (gk < 0) {
        mpz_addmul_ui(acc.get_mpz_t(), c[m - k].get_mpz_t(), static_cast<unsigned long>(-gk));
      }
    }
    mpz_divexact_ui(c[m].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(m));
  }
  return c;
}

Integers expand_pentagonal(const ProductSpec& spec, Exponent len) {
  Integers c(static_cast<std::size_t>(len));
  c[0] = 1;
  for (const auto& f : spec.factors()) {
    for (std::int64_t i = 0; i < std::abs(f.e); ++i) apply_euler(c, f.d, f.e < 0);
  }
  return c;
}

Residues expand_pentagonal(const ProductSpec& spec, Exponent len, Prime p) {
  Residues c(static_cast<std::size_t>(len), 0);
  c[0] = 1 % p.value();
  for (const auto& f : spec.factors()) {
    // (1 - x)^{p^i} = 1 - x^{p^i} (mod p): peel balanced base-p digits of e,
    // each in (-p/2, p/2].
    const std::int64_t pv = p.signed_value();
    std::int64_t rest = f.e;
    Exponent stride = f.d;
    while (rest != 0 && stride < len) {
      std::int64_t digit = ((rest % pv) + pv) % pv;
      if (digit > pv / 2) digit -= pv;
      for (std::int64_t i = 0; i < std::abs(digit); ++i) apply_euler(c, stride, digit < 0, p);
      rest = (rest - digit) / pv;
      stride *= pv;
    }
  }
  return c;
}

// Rough operation counts of the two integer routes.
bool prefer_log_derivative(const ProductSpec& spec, Exponent len) {
  double pentagonal = 0;
  for (const auto& f : spec.factors()) {
    const double terms = 2.0 * std::sqrt(2.0 * static_cast<double>(len) / (3.0 * static_cast<double>(f.d))) + 1;
    pentagonal += static_cast<double>(std::abs(f.e)) * static_cast<double>(len) * terms;
  }
  const double log_derivative = 0.5 * static_cast<double>(len) * static_cast<double>(len);
  return log_derivative < pentagonal;
}

void require_positive_precision(Exponent precision) {
  if (precision < 1) {
    throw InvalidArgument("precision must be at least 1, got " + std::to_string(precision));
  }
}

}  // namespace

TruncatedSeries euler_series(Exponent precision, std::optional<Prime> p) {
  require_positive_precision(precision);
  std::vector<std::int64_t> c(static_cast<std::size_t>(precision), 0);
  c[0] = 1;
  for (const auto& t : pentagonal_terms(precision)) c[t.exponent] = t.sign;
  return TruncatedSeries::from_ints(0, c, p);
}

TruncatedSeries expand_product(const ProductSpec& spec, Exponent precision, std::optional<Prime> p,
                               ExpansionMethod method) {
  require_positive_precision(precision);
  if (p) {
    if (method == ExpansionMethod::log_derivative) {
      throw InvalidArgument("the log-derivative recurrence divides by n and is not available mod p");
    }
    return TruncatedSeries::from_residues(0, expand_pentagonal(spec, precision, *p), *p);
  }
  const bool use_log = method == ExpansionMethod::log_derivative ||
                       (method == ExpansionMethod::automatic && prefer_log_derivative(spec, precision));
  if (use_log) return TruncatedSeries::from_integers(0, expand_log_derivative(spec, precision));
  return TruncatedSeries::from_integers(0, expand_pentagonal(spec, precision));
}

}  // namespace etaq
