#include "etaq/series.hpp"

#include <algorithm>
#include <string>

#include "etaq/error.hpp"

namespace etaq {
namespace {

using Integers = TruncatedSeries::Integers;
using Residues = TruncatedSeries::Residues;

// Below these sizes the schoolbook product wins.
constexpr std::size_t kKaratsubaIntegers = 24;
constexpr std::size_t kKaratsubaResidues = 64;

// --- integer kernels -------------------------------------------------------

void schoolbook(const Integer* a, std::size_t n, const Integer* b, std::size_t m, Integer* out) {
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
}

// out[0 .. 2n-1) += a * b, both of length n.
void karatsuba(const Integer* a, const Integer* b, std::size_t n, Integer* out) {
  if (n <= kKaratsubaIntegers) {
    schoolbook(a, n, b, n, out);
    return;
  }
  const std::size_t h = n / 2;
  const std::size_t hi = n - h;
  Integers z0(2 * h - 1), z2(2 * hi - 1), z1(2 * hi - 1);
  karatsuba(a, b, h, z0.data());
  karatsuba(a + h, b + h, hi, z2.data());
  Integers sa(hi), sb(hi);
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = a[h + i];
    sb[i] = b[h + i];
    if (i < h) {
      sa[i] += a[i];
      sb[i] += b[i];
    }
  }
  karatsuba(sa.data(), sb.data(), hi, z1.data());
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] += z0[i];
  for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] += z2[i];
}

// First len coefficients of a * b.
Integers mul_truncated(const Integers& a, const Integers& b, std::size_t len) {
  Integers out(len);
  const std::size_t n = std::min(a.size(), len);
  const std::size_t m = std::min(b.size(), len);
  if (n == 0 || m == 0) return out;
  if (std::min(n, m) <= kKaratsubaIntegers) {
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(a[i]) == 0) continue;
      const std::size_t jmax = std::min(m, len - i);
      for (std::size_t j = 0; j < jmax; ++j) {
        mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
      }
    }
    return out;
  }
  const std::size_t k = std::max(n, m);
  Integers pa(a.begin(), a.begin() + n), pb(b.begin(), b.begin() + m);
  pa.resize(k);
  pb.resize(k);
  Integers full(2 * k - 1);
  karatsuba(pa.data(), pb.data(), k, full.data());
  for (std::size_t i = 0; i < len && i < full.size(); ++i) out[i] = std::move(full[i]);
  return out;
}

// --- residue kernels -------------------------------------------------------

__extension__ using Wide = unsigned __int128;

void schoolbook(const std::uint32_t* a, std::size_t n, const std::uint32_t* b, std::size_t m,
                std::uint64_t* out, std::uint32_t p) {
  for (std::size_t k = 0; k + 1 < n + m; ++k) {
    const std::size_t lo = k >= m ? k - m + 1 : 0;
    const std::size_t hi = std::min(k, n - 1);
    Wide acc = 0;
    for (std::size_t i = lo; i <= hi; ++i) acc += static_cast<std::uint64_t>(a[i]) * b[k - i];
    out[k] = static_cast<std::uint64_t>((out[k] + acc) % p);
  }
}

// out[0 .. 2n-1) += a * b (mod p), both of length n; out holds reduced values.
void karatsuba(const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint64_t* out,
               std::uint32_t p) {
  if (n <= kKaratsubaResidues) {
    schoolbook(a, n, b, n, out, p);
    return;
  }
  const std::size_t h = n / 2;
  const std::size_t hi = n - h;
  std::vector<std::uint64_t> z0(2 * h - 1), z2(2 * hi - 1), z1(2 * hi - 1);
  karatsuba(a, b, h, z0.data(), p);
  karatsuba(a + h, b + h, hi, z2.data(), p);
  std::vector<std::uint32_t> sa(hi), sb(hi);
  for (std::size_t i = 0; i < hi; ++i) {
    std::uint64_t x = a[h + i], y = b[h + i];
    if (i < h) {
      x += a[i];
      y += b[i];
    }
    sa[i] = static_cast<std::uint32_t>(x % p);
    sb[i] = static_cast<std::uint32_t>(y % p);
  }
  karatsuba(sa.data(), sb.data(), hi, z1.data(), p);
  for (std::size_t i = 0; i < z1.size(); ++i) {
    std::uint64_t v = z1[i] + 2 * static_cast<std::uint64_t>(p);
    if (i < z0.size()) v -= z0[i];
    v -= z2[i];
    z1[i] = v % p;
  }
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = (out[i] + z0[i]) % p;
  for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] = (out[h + i] + z1[i]) % p;
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] = (out[2 * h + i] + z2[i]) % p;
}

Residues mul_truncated(const Residues& a, const Residues& b, std::size_t len, std::uint32_t p) {
  Residues out(len, 0);
  const std::size_t n = std::min(a.size(), len);
  const std::size_t m = std::min(b.size(), len);
  if (n == 0 || m == 0) return out;
  if (std::min(n, m) <= kKaratsubaResidues) {
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t lo = k >= m ? k - m + 1 : 0;
      const std::size_t hi = std::min(k, n - 1);
      Wide acc = 0;
      for (std::size_t i = lo; i <= hi; ++i) acc += static_cast<std::uint64_t>(a[i]) * b[k - i];
      out[k] = static_cast<std::uint32_t>(acc % p);
    }
    return out;
  }
  const std::size_t k = std::max(n, m);
  Residues pa(a.begin(), a.begin() + n), pb(b.begin(), b.begin() + m);
  pa.resize(k, 0);
  pb.resize(k, 0);
  std::vector<std::uint64_t> full(2 * k - 1, 0);
  karatsuba(pa.data(), pb.data(), k, full.data(), p);
  for (std::size_t i = 0; i < len && i < full.size(); ++i) out[i] = static_cast<std::uint32_t>(full[i]);
  return out;
}

// --- inversion -------------------------------------------------------------

Integers invert(const Integers& u, std::size_t len) {
  const int lead = sgn(u[0]);
  if (!(u[0] == 1 || u[0] == -1)) {
    throw NotInvertible("leading coefficient " + u[0].get_str() + " is not a unit");
  }
  Integers v(len);
  v[0] = u[0];
  Integer acc;
  for (std::size_t n = 1; n < len; ++n) {
    acc = 0;
    const std::size_t kmax = std::min(n, u.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) {
      mpz_addmul(acc.get_mpz_t(), u[k].get_mpz_t(), v[n - k].get_mpz_t());
    }
    v[n] = lead > 0 ? Integer(-acc) : acc;
  }
  return v;
}

Residues invert(const Residues& u, std::size_t len, Prime p) {
  if (u[0] == 0) throw NotInvertible("leading coefficient is zero mod " + std::to_string(p.value()));
  const std::uint64_t inv0 = inv_mod(u[0], p);
  Residues v(len);
  v[0] = static_cast<std::uint32_t>(inv0);
  for (std::size_t n = 1; n < len; ++n) {
    Wide acc = 0;
    const std::size_t kmax = std::min(n, u.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) acc += static_cast<std::uint64_t>(u[k]) * v[n - k];
    const std::uint64_t s = static_cast<std::uint64_t>(acc % p.value());
    v[n] = static_cast<std::uint32_t>(mul_mod((p.value() - s) % p.value(), inv0, p));
  }
  return v;
}

void require_same_modulus(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.modulus() != b.modulus()) {
    auto name = [](const TruncatedSeries& s) {
      return s.modulus() ? "mod " + std::to_string(s.modulus()->value()) : std::string("integer");
    };
    throw ModulusMismatch("cannot combine " + name(a) + " and " + name(b) + " series");
  }
}

// Coefficients from the valuation onward; the returned offset is the valuation.
TruncatedSeries strip(const TruncatedSeries& a) {
  const Exponent v = a.valuation();
  if (v == a.offset()) return a;
  if (a.is_modular()) {
    const auto& r = a.residues();
    return TruncatedSeries::from_residues(v, Residues(r.begin() + (v - a.offset()), r.end()), *a.modulus());
  }
  const auto& z = a.integers();
  return TruncatedSeries::from_integers(v, Integers(z.begin() + (v - a.offset()), z.end()));
}

}  // namespace

// --- TruncatedSeries -------------------------------------------------------

TruncatedSeries::TruncatedSeries() : coeffs_(Integers{}) {}

TruncatedSeries::TruncatedSeries(Exponent offset, std::variant<Integers, Residues> coeffs,
                                 std::optional<Prime> modulus)
    : offset_(offset), coeffs_(std::move(coeffs)), modulus_(modulus) {}

TruncatedSeries TruncatedSeries::from_integers(Exponent offset, Integers coeffs) {
  return TruncatedSeries(offset, std::move(coeffs), std::nullopt);
}

TruncatedSeries TruncatedSeries::from_integers(Exponent offset, const Integers& coeffs, Prime p) {
  Residues r(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] = static_cast<std::uint32_t>(mod(coeffs[i], p));
  return TruncatedSeries(offset, std::move(r), p);
}

TruncatedSeries TruncatedSeries::from_residues(Exponent offset, Residues coeffs, Prime p) {
  for (auto& c : coeffs) c %= p.value();
  return TruncatedSeries(offset, std::move(coeffs), p);
}

TruncatedSeries TruncatedSeries::from_ints(Exponent offset, std::span<const std::int64_t> coeffs,
                                           std::optional<Prime> p) {
  if (p) {
    Residues r(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] = static_cast<std::uint32_t>(mod(coeffs[i], *p));
    return TruncatedSeries(offset, std::move(r), p);
  }
  Integers z;
  z.reserve(coeffs.size());
  for (auto c : coeffs) z.emplace_back(static_cast<long>(c));
  return TruncatedSeries(offset, std::move(z), std::nullopt);
}

TruncatedSeries TruncatedSeries::zero(Exponent offset, Exponent precision, std::optional<Prime> p) {
  if (precision < offset) {
    throw InvalidArgument("precision " + std::to_string(precision) + " below offset " +
                          std::to_string(offset));
  }
  const auto len = static_cast<std::size_t>(precision - offset);
  if (p) return TruncatedSeries(offset, Residues(len, 0), p);
  return TruncatedSeries(offset, Integers(len), std::nullopt);
}

TruncatedSeries TruncatedSeries::monomial(Exponent exponent, Exponent precision, std::optional<Prime> p) {
  if (precision <= exponent) return zero(precision, precision, p);
  auto s = zero(exponent, precision, p);
  if (p) {
    std::get<Residues>(s.coeffs_)[0] = 1;
  } else {
    std::get<Integers>(s.coeffs_)[0] = 1;
  }
  return s;
}

std::size_t TruncatedSeries::size() const {
  return std::visit([](const auto& c) { return c.size(); }, coeffs_);
}

Integer TruncatedSeries::coefficient(Exponent n) const {
  if (n >= precision()) {
    throw PrecisionShortfall("coefficient of q^" + std::to_string(n) + " requested from a series known to O(q^" +
                             std::to_string(precision()) + ")");
  }
  if (n < offset_) return 0;
  const auto i = static_cast<std::size_t>(n - offset_);
  if (modulus_) return Integer(static_cast<unsigned long>(std::get<Residues>(coeffs_)[i]));
  return std::get<Integers>(coeffs_)[i];
}

const TruncatedSeries::Integers& TruncatedSeries::integers() const {
  if (modulus_) throw InvalidArgument("series holds residues, not integers");
  return std::get<Integers>(coeffs_);
}

const TruncatedSeries::Residues& TruncatedSeries::residues() const {
  if (!modulus_) throw InvalidArgument("series holds integers, not residues");
  return std::get<Residues>(coeffs_);
}

Exponent TruncatedSeries::valuation() const {
  return std::visit(
      [this](const auto& c) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] != 0) return offset_ + static_cast<Exponent>(i);
        }
        return precision();
      },
      coeffs_);
}

TruncatedSeries TruncatedSeries::truncate(Exponent new_precision) const {
  if (new_precision > precision()) {
    throw PrecisionShortfall("cannot extend precision from " + std::to_string(precision()) + " to " +
                             std::to_string(new_precision));
  }
  if (new_precision <= offset_) return zero(new_precision, new_precision, modulus_);
  const auto len = static_cast<std::size_t>(new_precision - offset_);
  return std::visit(
      [&](const auto& c) {
        using V = std::decay_t<decltype(c)>;
        return TruncatedSeries(offset_, V(c.begin(), c.begin() + len), modulus_);
      },
      coeffs_);
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.modulus_ != b.modulus_) return false;
  const Exponent hi = std::min(a.precision(), b.precision());
  const Exponent lo = std::min(a.offset(), b.offset());
  for (Exponent n = lo; n < hi; ++n) {
    if (a.coefficient(n) != b.coefficient(n)) return false;
  }
  return true;
}

// --- operations ------------------------------------------------------------

namespace {

template <class Combine>
TruncatedSeries combine(const TruncatedSeries& a, const TruncatedSeries& b, Combine op) {
  require_same_modulus(a, b);
  const Exponent lo = std::min(a.offset(), b.offset());
  const Exponent hi = std::min(a.precision(), b.precision());
  const auto len = static_cast<std::size_t>(hi - lo);
  auto at = [](const TruncatedSeries& s, Exponent n) { return static_cast<std::size_t>(n - s.offset()); };
  if (auto p = a.modulus()) {
    Residues r(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      const Exponent n = lo + static_cast<Exponent>(i);
      std::uint64_t x = n >= a.offset() ? a.residues()[at(a, n)] : 0;
      std::uint64_t y = n >= b.offset() ? b.residues()[at(b, n)] : 0;
      r[i] = static_cast<std::uint32_t>(op(x, y, p->value()));
    }
    return TruncatedSeries::from_residues(lo, std::move(r), *p);
  }
  Integers z(len);
  for (std::size_t i = 0; i < len; ++i) {
    const Exponent n = lo + static_cast<Exponent>(i);
    if (n >= a.offset()) z[i] = a.integers()[at(a, n)];
    if (n >= b.offset()) z[i] = op(z[i], b.integers()[at(b, n)]);
  }
  return TruncatedSeries::from_integers(lo, std::move(z));
}

struct Plus {
  std::uint64_t operator()(std::uint64_t x, std::uint64_t y, std::uint32_t p) const { return (x + y) % p; }
  Integer operator()(const Integer& x, const Integer& y) const { return x + y; }
};

struct Minus {
  std::uint64_t operator()(std::uint64_t x, std::uint64_t y, std::uint32_t p) const { return (x + p - y) % p; }
  Integer operator()(const Integer& x, const Integer& y) const { return x - y; }
};

}  // namespace

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, Plus{}); }

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, Minus{}); }

TruncatedSeries negate(const TruncatedSeries& a) { return scale(a, Integer(-1)); }

TruncatedSeries scale(const TruncatedSeries& a, const Integer& k) {
  if (auto p = a.modulus()) {
    const std::uint64_t km = mod(k, *p);
    Residues r(a.residues());
    for (auto& c : r) c = static_cast<std::uint32_t>(mul_mod(c, km, *p));
    return TruncatedSeries::from_residues(a.offset(), std::move(r), *p);
  }
  Integers z(a.integers());
  for (auto& c : z) c *= k;
  return TruncatedSeries::from_integers(a.offset(), std::move(z));
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_modulus(a, b);
  const Exponent va = a.valuation();
  const Exponent vb = b.valuation();
  const Exponent precision = std::min(a.precision() + vb, b.precision() + va);
  if (va == a.precision() || vb == b.precision()) {
    return TruncatedSeries::zero(std::min(a.offset() + b.offset(), precision), precision, a.modulus());
  }
  const auto sa = strip(a);
  const auto sb = strip(b);
  const Exponent offset = va + vb;
  const auto len = static_cast<std::size_t>(precision - offset);
  if (auto p = a.modulus()) {
    return TruncatedSeries::from_residues(offset, mul_truncated(sa.residues(), sb.residues(), len, p->value()),
                                          *p);
  }
  return TruncatedSeries::from_integers(offset, mul_truncated(sa.integers(), sb.integers(), len));
}

TruncatedSeries inverse(const TruncatedSeries& a) {
  const auto len = a.size();
  if (len == 0) throw NotInvertible("cannot invert a series with no known coefficients");
  if (auto p = a.modulus()) {
    return TruncatedSeries::from_residues(-a.offset(), invert(a.residues(), len, *p), *p);
  }
  return TruncatedSeries::from_integers(-a.offset(), invert(a.integers(), len));
}

TruncatedSeries pow(const TruncatedSeries& a, std::int64_t k) {
  const auto len = static_cast<Exponent>(a.size());
  if (k == 0) return shift(TruncatedSeries::one(len, a.modulus()), 0);
  if (k < 0) return pow(inverse(a), -k);
  // Relative to the offset: a = q^o u, a^k = q^{k o} u^k with u^k known to len terms.
  auto unit = shift(a, -a.offset());
  auto result = TruncatedSeries::one(len, a.modulus());
  auto base = unit;
  auto e = static_cast<std::uint64_t>(k);
  while (true) {
    if (e & 1) result = mul(result, base).truncate(len);
    e >>= 1;
    if (e == 0) break;
    base = mul(base, base).truncate(len);
  }
  // mul may raise the offset past zero when u has leading zeros; restore it.
  result = add(result, TruncatedSeries::zero(0, len, a.modulus()));
  return shift(result, k * a.offset());
}

TruncatedSeries theta(const TruncatedSeries& a) { return theta_power(a, 1); }

TruncatedSeries theta_power(const TruncatedSeries& a, std::int64_t k) {
  if (k < 0) throw InvalidArgument("theta power must be nonnegative");
  if (auto p = a.modulus()) {
    Residues r(a.residues());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Exponent n = a.offset() + static_cast<Exponent>(i);
      const std::uint64_t w = pow_mod(mod(n, *p), static_cast<std::uint64_t>(k), *p);
      r[i] = static_cast<std::uint32_t>(mul_mod(r[i], w, *p));
    }
    return TruncatedSeries::from_residues(a.offset(), std::move(r), *p);
  }
  Integers z(a.integers());
  Integer w;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Exponent n = a.offset() + static_cast<Exponent>(i);
    mpz_pow_ui(w.get_mpz_t(), Integer(static_cast<long>(n)).get_mpz_t(), static_cast<unsigned long>(k));
    z[i] *= w;
  }
  return TruncatedSeries::from_integers(a.offset(), std::move(z));
}

TruncatedSeries u_operator(const TruncatedSeries& a, Prime ell) {
  const Exponent l = ell.signed_value();
  const Exponent offset = ceil_div(a.offset(), l);
  const Exponent precision = floor_div(a.precision() - 1, l) + 1;
  const auto len = static_cast<std::size_t>(std::max<Exponent>(precision - offset, 0));
  auto index = [&](std::size_t i) {
    return static_cast<std::size_t>((offset + static_cast<Exponent>(i)) * l - a.offset());
  };
  if (auto p = a.modulus()) {
    Residues r(len);
    for (std::size_t i = 0; i < len; ++i) r[i] = a.residues()[index(i)];
    return TruncatedSeries::from_residues(offset, std::move(r), *p);
  }
  Integers z(len);
  for (std::size_t i = 0; i < len; ++i) z[i] = a.integers()[index(i)];
  return TruncatedSeries::from_integers(offset, std::move(z));
}

TruncatedSeries ap_extract(const TruncatedSeries& a, Prime ell, std::int64_t r) {
  if (r < 0 || r >= ell.signed_value()) {
    throw InvalidArgument("residue " + std::to_string(r) + " outside [0, " + std::to_string(ell.value()) + ")");
  }
  return u_operator(shift(a, -r), ell);
}

TruncatedSeries dilate(const TruncatedSeries& a, std::int64_t m) {
  if (m < 1) throw InvalidArgument("dilation factor must be positive");
  const Exponent offset = a.offset() * m;
  const Exponent precision = a.precision() * m;
  const auto len = static_cast<std::size_t>(precision - offset);
  if (auto p = a.modulus()) {
    Residues r(len, 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i * m] = a.residues()[i];
    return TruncatedSeries::from_residues(offset, std::move(r), *p);
  }
  Integers z(len);
  for (std::size_t i = 0; i < a.size(); ++i) z[i * m] = a.integers()[i];
  return TruncatedSeries::from_integers(offset, std::move(z));
}

TruncatedSeries reduce_mod(const TruncatedSeries& a, Prime p) {
  if (auto q = a.modulus()) {
    if (*q != p) {
      throw ModulusMismatch("series is already reduced mod " + std::to_string(q->value()));
    }
    return a;
  }
  return TruncatedSeries::from_integers(a.offset(), a.integers(), p);
}

TruncatedSeries shift(const TruncatedSeries& a, Exponent s) {
  if (auto p = a.modulus()) return TruncatedSeries::from_residues(a.offset() + s, a.residues(), *p);
  return TruncatedSeries::from_integers(a.offset() + s, a.integers());
}

}  // namespace etaq
