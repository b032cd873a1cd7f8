#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "etaq/arith.hpp"

namespace etaq {

// A truncated q-expansion  sum_{offset <= n < precision} c(n) q^n + O(q^precision).
//
// Coefficients below the offset are known to be zero; coefficients at or above
// the precision are unknown. Coefficients are exact integers, or residues in
// [0, p) when the series carries a modulus. Values are immutable; every
// operation returns a new series whose precision is the tightest one that the
// inputs justify.
class TruncatedSeries {
 public:
  using Integers = std::vector<Integer>;
  using Residues = std::vector<std::uint32_t>;

  // The zero series known to precision 0.
  TruncatedSeries();

  static TruncatedSeries from_integers(Exponent offset, Integers coeffs);
  // Coefficients are reduced into [0, p).
  static TruncatedSeries from_integers(Exponent offset, const Integers& coeffs, Prime p);
  static TruncatedSeries from_residues(Exponent offset, Residues coeffs, Prime p);
  static TruncatedSeries from_ints(Exponent offset, std::span<const std::int64_t> coeffs,
                                   std::optional<Prime> p = std::nullopt);

  static TruncatedSeries zero(Exponent offset, Exponent precision,
                              std::optional<Prime> p = std::nullopt);
  // q^exponent + O(q^precision).
  static TruncatedSeries monomial(Exponent exponent, Exponent precision,
                                  std::optional<Prime> p = std::nullopt);
  static TruncatedSeries one(Exponent precision, std::optional<Prime> p = std::nullopt) {
    return monomial(0, precision, p);
  }

  Exponent offset() const { return offset_; }
  Exponent precision() const { return offset_ + static_cast<Exponent>(size()); }
  std::size_t size() const;
  std::optional<Prime> modulus() const { return modulus_; }
  bool is_modular() const { return modulus_.has_value(); }

  // Coefficient of q^n. Zero below the offset; throws PrecisionShortfall at or
  // beyond the precision. Residues are returned in [0, p).
  Integer coefficient(Exponent n) const;
  Integer operator[](Exponent n) const { return coefficient(n); }

  // Storage access; throws InvalidArgument on the wrong representation.
  const Integers& integers() const;
  const Residues& residues() const;

  // First exponent with a nonzero coefficient, or precision() if none is known.
  Exponent valuation() const;
  bool is_zero() const { return valuation() == precision(); }

  // Drop coefficients at or beyond new_precision (which must not exceed the
  // current precision).
  TruncatedSeries truncate(Exponent new_precision) const;

  // Agreement on every exponent below min(precision) and equal moduli.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  TruncatedSeries(Exponent offset, std::variant<Integers, Residues> coeffs,
                  std::optional<Prime> modulus);

  Exponent offset_ = 0;
  std::variant<Integers, Residues> coeffs_;
  std::optional<Prime> modulus_;
};

// Ring operations. Binary operations require equal moduli (ModulusMismatch).
TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries negate(const TruncatedSeries& a);
TruncatedSeries scale(const TruncatedSeries& a, const Integer& k);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// a^k. For k < 0 the lowest stored coefficient must be a unit (+-1 over the
// integers, nonzero mod p); otherwise NotInvertible.
TruncatedSeries pow(const TruncatedSeries& a, std::int64_t k);
TruncatedSeries inverse(const TruncatedSeries& a);

// sum n c(n) q^n.
TruncatedSeries theta(const TruncatedSeries& a);
// sum n^k c(n) q^n, k >= 0.
TruncatedSeries theta_power(const TruncatedSeries& a, std::int64_t k);

// sum c(l n) q^n.
TruncatedSeries u_operator(const TruncatedSeries& a, Prime ell);
// sum c(l n + r) q^n, 0 <= r < l.
TruncatedSeries ap_extract(const TruncatedSeries& a, Prime ell, std::int64_t r);
// f(q) -> f(q^m), m >= 1.
TruncatedSeries dilate(const TruncatedSeries& a, std::int64_t m);

TruncatedSeries reduce_mod(const TruncatedSeries& a, Prime p);
// q^s * a.
TruncatedSeries shift(const TruncatedSeries& a, Exponent s);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  return add(a, b);
}
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return sub(a, b);
}
inline TruncatedSeries operator-(const TruncatedSeries& a) { return negate(a); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return mul(a, b);
}

}  // namespace etaq
