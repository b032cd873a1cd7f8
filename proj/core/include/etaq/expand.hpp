#pragma once

#include <optional>

#include "etaq/product_spec.hpp"
#include "etaq/series.hpp"

namespace etaq {

// prod_{n>=1} (1 - q^n) + O(q^precision), from the pentagonal number theorem.
TruncatedSeries euler_series(Exponent precision, std::optional<Prime> p = std::nullopt);

enum class ExpansionMethod {
  automatic,
  // factor. Mod p, exponents are first split into balanced base-p digits using
  // factor. Mod p, exponents are first split into base-p digits using
  // (1 - x)^p = 1 - x^p.
  pentagonal,
  // m c(m) = -sum_{k=1}^{m} g(k) c(m - k) with g(k) = sum_{d | k} e_d d sigma(k/d).
  // Integers only (the recurrence divides by m).
  log_derivative,
};

// q-expansion of prod_d prod_n (1 - q^{d n})^{e_d} to the given precision,
// offset 0, constant term 1.
TruncatedSeries expand_product(const ProductSpec& spec, Exponent precision,
                               std::optional<Prime> p = std::nullopt,
                               ExpansionMethod method = ExpansionMethod::automatic);

}  // namespace etaq
