#include "etaq/product_spec.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "etaq/arith.hpp"
#include "etaq/error.hpp"

namespace etaq {
namespace {

std::int64_t parse_int(std::string_view text, std::string_view token) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InvalidArgument("bad factor token '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

ProductSpec::ProductSpec(std::vector<EtaFactor> factors) {
  std::map<std::int64_t, std::int64_t> merged;
  for (const auto& f : factors) {
    if (f.d <= 0) throw InvalidArgument("factor base d must be positive, got " + std::to_string(f.d));
    merged[f.d] += f.e;
  }
  for (const auto& [d, e] : merged) {
    if (e != 0) factors_.push_back({d, e});
  }
}

ProductSpec ProductSpec::parse(std::string_view text) {
  std::vector<EtaFactor> factors;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    auto caret = token.find('^');
    if (caret == std::string::npos) {
      throw InvalidArgument("factor token '" + token + "' is not of the form d^e");
    }
    std::int64_t d = parse_int(std::string_view(token).substr(0, caret), token);
    std::int64_t e = parse_int(std::string_view(token).substr(caret + 1), token);
    if (d <= 0) throw InvalidArgument("factor token '" + token + "': d must be positive");
    if (e == 0) throw InvalidArgument("factor token '" + token + "': e must be nonzero");
    factors.push_back({d, e});
  }
  if (factors.empty()) throw InvalidArgument("empty product spec");
  return ProductSpec(std::move(factors));
}

ProductSpec ProductSpec::reciprocal(const std::vector<std::int64_t>& parts) {
  if (parts.empty()) throw InvalidArgument("reciprocal spec needs at least one part");
  std::vector<EtaFactor> factors;
  factors.reserve(parts.size());
  for (auto a : parts) factors.push_back({a, -1});
  return ProductSpec(std::move(factors));
}

std::int64_t ProductSpec::level() const {
  std::int64_t n = 1;
  for (const auto& f : factors_) n = lcm(n, f.d);
  return n;
}

bool ProductSpec::is_reciprocal() const {
  return !factors_.empty() &&
         std::all_of(factors_.begin(), factors_.end(), [](const EtaFactor& f) { return f.e < 0; });
}

std::optional<std::int64_t> ProductSpec::parts_count() const {
  if (!is_reciprocal()) return std::nullopt;
  std::int64_t j = 0;
  for (const auto& f : factors_) j -= f.e;
  return j;
}

std::optional<std::int64_t> ProductSpec::parts_sum() const {
  if (!is_reciprocal()) return std::nullopt;
  std::int64_t s = 0;
  for (const auto& f : factors_) s -= f.d * f.e;
  return s;
}

bool ProductSpec::has_factor_divisible_by(std::int64_t p) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [p](const EtaFactor& f) { return f.d % p == 0; });
}

std::string ProductSpec::to_string() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(f.d) + '^' + std::to_string(f.e);
  }
  return out;
}

}  // namespace etaq
