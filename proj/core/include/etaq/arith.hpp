#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace etaq {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponent = std::int64_t;

// A prime below 2^31, validated on construction. Residues mod a Prime fit in
// 32 bits, so products of two residues fit in 64.
class Prime {
 public:
  explicit Prime(std::int64_t p);

  std::uint32_t value() const { return p_; }
  std::int64_t signed_value() const { return static_cast<std::int64_t>(p_); }

  friend bool operator==(Prime, Prime) = default;
  friend auto operator<=>(Prime, Prime) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
std::vector<std::int64_t> prime_divisors(std::int64_t n);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

// Canonical residue in [0, p).
std::uint64_t mod(std::int64_t a, Prime p);
std::uint64_t mod(const Integer& a, Prime p);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, Prime p);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, Prime p);
// Throws NotInvertible when a = 0 mod p.
std::uint64_t inv_mod(std::uint64_t a, Prime p);

// Image of an l-integral rational in F_p. Throws NotInvertible when p divides
// the denominator.
std::uint64_t mod(const Rational& r, Prime p);

}  // namespace etaq
