#include "etaq/arith.hpp"

#include <numeric>
#include <string>

#include "etaq/error.hpp"

namespace etaq {

Prime::Prime(std::int64_t p) {
  if (p >= (std::int64_t{1} << 31) || !is_prime(p)) {
    throw InvalidArgument("not a prime below 2^31: " + std::to_string(p));
  }
  p_ = static_cast<std::uint32_t>(p);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t k = i * i; k <= bound; k += i) composite[k] = true;
  }
  return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::uint64_t mod(std::int64_t a, Prime p) {
  std::int64_t r = a % p.signed_value();
  if (r < 0) r += p.signed_value();
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mod(const Integer& a, Prime p) {
  return mpz_fdiv_ui(a.get_mpz_t(), p.value());
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, Prime p) { return (a * b) % p.value(); }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, Prime p) {
  std::uint64_t result = 1 % p.value();
  base %= p.value();
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, Prime p) {
  a %= p.value();
  if (a == 0) throw NotInvertible("zero has no inverse mod " + std::to_string(p.value()));
  return pow_mod(a, p.value() - 2, p);
}

std::uint64_t mod(const Rational& r, Prime p) {
  std::uint64_t den = mod(Integer(r.get_den()), p);
  if (den == 0) {
    throw NotInvertible(r.get_str() + " is not " + std::to_string(p.value()) + "-integral");
  }
  return mul_mod(mod(Integer(r.get_num()), p), inv_mod(den, p), p);
}

}  // namespace etaq
