#include "etaq/filtration.hpp"

#include <string>

#include "etaq/eisenstein.hpp"
#include "etaq/error.hpp"

namespace etaq {
namespace {

// Cached powers of E_4 and E_6 at a fixed precision.
class MonomialTable {
 public:
  MonomialTable(Exponent precision, std::optional<Prime> p)
      : precision_(precision),
        p_(p),
        e4_{TruncatedSeries::one(precision, p)},
        e6_{TruncatedSeries::one(precision, p)} {}

  std::vector<TruncatedSeries> basis(std::int64_t weight) {
    std::vector<TruncatedSeries> out;
    for (std::int64_t a = 0; 4 * a <= weight; ++a) {
      const std::int64_t rest = weight - 4 * a;
      if (rest % 6 != 0) continue;
      out.push_back(mul(e4_power(a), e6_power(rest / 6)).truncate(precision_));
    }
    return out;
  }

 private:
  const TruncatedSeries& e4_power(std::int64_t a) { return power(e4_, 4, a); }
  const TruncatedSeries& e6_power(std::int64_t b) { return power(e6_, 6, b); }

  const TruncatedSeries& power(std::vector<TruncatedSeries>& cache, std::int64_t weight, std::int64_t k) {
    while (static_cast<std::int64_t>(cache.size()) <= k) {
      if (cache.size() == 1) {
        cache.push_back(eisenstein(weight, precision_, p_).series);
      } else {
        cache.push_back(mul(cache.back(), cache[1]).truncate(precision_));
      }
    }
    return cache[static_cast<std::size_t>(k)];
  }

  Exponent precision_;
  std::optional<Prime> p_;
  std::vector<TruncatedSeries> e4_;
  std::vector<TruncatedSeries> e6_;
};

// Whether target lies in the F_p-span of columns, comparing coefficients of
// q^0 .. q^{precision-1}.
bool in_span(const std::vector<TruncatedSeries>& columns, const TruncatedSeries& target, Prime p) {
  const Exponent rows = target.precision();
  const std::size_t cols = columns.size();
  const std::uint64_t pv = p.value();
  // Augmented matrix, one row per coefficient.
  std::vector<std::vector<std::uint64_t>> m(static_cast<std::size_t>(rows), std::vector<std::uint64_t>(cols + 1, 0));
  for (Exponent r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = mod(columns[c].coefficient(r), p);
    m[r][cols] = mod(target.coefficient(r), p);
  }
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < m.size(); ++c) {
    std::size_t sel = pivot_row;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[pivot_row]);
    const std::uint64_t inv = inv_mod(m[pivot_row][c], p);
    for (auto& x : m[pivot_row]) x = mul_mod(x, inv, p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == pivot_row || m[r][c] == 0) continue;
      const std::uint64_t factor = m[r][c];
      for (std::size_t k = c; k <= cols; ++k) {
        m[r][k] = (m[r][k] + pv - mul_mod(factor, m[pivot_row][k], p)) % pv;
      }
    }
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < m.size(); ++r) {
    if (m[r][cols] != 0) return false;
  }
  return true;
}

void require_filtration_prime(Prime ell) {
  if (ell.value() < 5) throw InvalidArgument("filtrations are computed for primes l >= 5");
}

std::int64_t filtration_with(MonomialTable& table, const TruncatedSeries& f, std::int64_t declared_weight,
                             Prime ell) {
  if (declared_weight < 0 || declared_weight % 2 != 0) {
    throw InvalidArgument("declared weight must be even and nonnegative, got " + std::to_string(declared_weight));
  }
  if (f.is_zero()) throw InvalidArgument("filtration of a series that vanishes mod l is undefined");
  if (f.valuation() < 0) throw NotModular("series has a pole at infinity");
  const Exponent needed = level1_sturm_bound(declared_weight) + 1;
  if (f.precision() < needed) {
    throw PrecisionShortfall("filtration at weight " + std::to_string(declared_weight) + " needs " +
                             std::to_string(needed) + " coefficients, series has " + std::to_string(f.precision()));
  }
  if (!in_span(table.basis(declared_weight), f, ell)) {
    throw NotModular("series is not the reduction of a level-1 form of weight " + std::to_string(declared_weight));
  }
  const std::int64_t step = ell.signed_value() - 1;
  std::int64_t w = declared_weight;
  while (w - step >= 0 && in_span(table.basis(w - step), f, ell)) w -= step;
  return w;
}

}  // namespace

std::vector<TruncatedSeries> level1_basis(std::int64_t weight, Exponent precision, std::optional<Prime> p) {
  if (weight < 0 || weight % 2 != 0) {
    throw InvalidArgument("level-1 weight must be even and nonnegative, got " + std::to_string(weight));
  }
  MonomialTable table(precision, p);
  return table.basis(weight);
}

Exponent level1_sturm_bound(std::int64_t weight) { return weight / 12 + 1; }

std::int64_t filtration(const TruncatedSeries& f, std::int64_t declared_weight, Prime ell) {
  require_filtration_prime(ell);
  const auto g = reduce_mod(f, ell);
  MonomialTable table(g.precision(), ell);
  return filtration_with(table, g, declared_weight, ell);
}

std::string_view to_string(ThetaCycleCase c) {
  switch (c) {
    case ThetaCycleCase::I: return "I";
    case ThetaCycleCase::II: return "II";
    case ThetaCycleCase::III: return "III";
    case ThetaCycleCase::IV: return "IV";
    case ThetaCycleCase::none: return "none";
  }
  return "none";
}

ThetaCycleReport theta_cycle(const TruncatedSeries& f, std::int64_t declared_weight, Prime ell) {
  require_filtration_prime(ell);
  const std::int64_t l = ell.signed_value();
  FormWithWeight current{reduce_mod(f, ell), declared_weight, 1};
  if (theta(current.series).is_zero()) throw InvalidArgument("theta f vanishes mod l");
  const std::int64_t top_weight = declared_weight + (l - 1) * (l + 1);
  const Exponent needed = level1_sturm_bound(top_weight) + 1;
  if (current.series.precision() < needed) {
    throw PrecisionShortfall("theta-cycle up to weight " + std::to_string(top_weight) + " needs " +
                             std::to_string(needed) + " coefficients, series has " +
                             std::to_string(current.series.precision()));
  }

  MonomialTable table(current.series.precision(), ell);
  ThetaCycleReport report;
  for (std::int64_t i = 0; i < l; ++i) {
    report.filtrations.push_back(filtration_with(table, current.series, current.weight, ell));
    if (i + 1 < l) {
      auto next = compute_R(current, ell);
      if (!(next.series == theta(current.series))) {
        throw Error("internal: R differs from theta f mod l");
      }
      current = std::move(next);
    }
  }

  const auto& w = report.filtrations;
  // theta^l f = theta f (mod l), so the step after i = l-1 lands on w[1].
  auto next_w = [&](std::int64_t i) { return i + 1 < l ? w[i + 1] : w[1]; };
  for (std::int64_t i = 0; i < l; ++i) {
    if (w[i] % l != 0) continue;
    report.drop_indices.push_back(i);
    report.drops.push_back((w[i] + (l + 1) - next_w(i)) / (l - 1));
  }

  const std::int64_t k = w[0];
  const std::int64_t k_mod = ((k % l) + l) % l;
  if (k_mod != 0) report.k0 = l - k_mod;
  report.stable = w[0] == w[l - 1];

  const auto& idx = report.drop_indices;
  const auto& s = report.drops;
  const std::size_t v = idx.size();
  if (k_mod == 1 && v == 1 && idx[0] == l - 1 && s[0] == l + 1) {
    report.case_label = ThetaCycleCase::I;
  } else if (k_mod == 2 && v == 1 && idx[0] == l - 2 && s[0] == l + 1) {
    report.case_label = ThetaCycleCase::II;
  } else if (report.k0 && k_mod != 1 && v == 2) {
    const std::int64_t k0 = *report.k0;
    if (idx[0] == k0 && idx[1] == l - 1 && s[0] == k0 + 1 && s[1] == l - k0) {
      report.case_label = ThetaCycleCase::III;
    } else if (idx[0] == k0 && idx[1] == l - 2 && s[0] == k0 + 2 && s[1] == l - k0 - 1) {
      report.case_label = ThetaCycleCase::IV;
    }
  }
  return report;
}

}  // namespace etaq
