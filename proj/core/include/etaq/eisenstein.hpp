#pragma once

#include <cstdint>
#include <optional>

#include "etaq/product_spec.hpp"
#include "etaq/series.hpp"

namespace etaq {

// A q-expansion tagged with the weight and level of the form it represents.
struct FormWithWeight {
  TruncatedSeries series;
  std::int64_t weight = 0;
  std::int64_t level = 1;
};

// Exact Bernoulli number B_m (B_1 = -1/2). Odd m > 1 is rejected.
Rational bernoulli(std::int64_t m);

// E_w = 1 - (2w / B_w) sum_{n>=1} sigma_{w-1}(n) q^n for even w >= 2.
// Without a modulus the normalizing factor must be an integer; with modulus p
// it must be p-integral. Otherwise InvalidArgument.
FormWithWeight eisenstein(std::int64_t weight, Exponent precision,
                          std::optional<Prime> p = std::nullopt);

// Delta = q prod (1 - q^n)^24, weight 12, level 1.
FormWithWeight delta(Exponent precision, std::optional<Prime> p = std::nullopt);

// (l^2 - 1) / 24 for a prime l > 3.
std::int64_t delta_ell(Prime ell);

// F_l = (prod_i Delta(a_i z))^{delta_l} for a reciprocal spec, reduced mod l
// unless exact is requested. Weight j (l^2 - 1) / 2, level N, offset
// delta_l * sum a_i.
FormWithWeight build_F(const ProductSpec& spec, Prime ell, Exponent precision,
                       bool exact = false);

// R = (theta f - (k/12) E_2 f) E_{l-1} + (k/12) E_{l+1} f, reduced mod l.
// Weight k + l + 1 and R = theta f (mod l). Every rational prefactor is
// checked for l-integrality before reduction. Requires l >= 5.
FormWithWeight compute_R(const FormWithWeight& f, Prime ell,
                         std::optional<Exponent> precision = std::nullopt);

}  // namespace etaq
