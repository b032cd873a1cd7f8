#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "etaq/series.hpp"

namespace etaq {

// The monomials E_4^a E_6^b with 4a + 6b = weight. They span M_weight(SL_2(Z))
// over Q, and over Z_(l) for l >= 5.
std::vector<TruncatedSeries> level1_basis(std::int64_t weight, Exponent precision,
                                          std::optional<Prime> p = std::nullopt);

// Minimum number of coefficients that decides equality of two level-1 forms
// of the given weight: floor(weight / 12) + 1.
Exponent level1_sturm_bound(std::int64_t weight);

// w_l(f) for the reduction f of a level-1 form of the given declared weight.
// Candidate weights k' = k, k - (l-1), ... are tested for membership by
// solving over F_l against every computed coefficient; the scan stops at the
// first failure. Needs precision >= level1_sturm_bound(k) + 1.
std::int64_t filtration(const TruncatedSeries& f, std::int64_t declared_weight, Prime ell);

enum class ThetaCycleCase { I, II, III, IV, none };

std::string_view to_string(ThetaCycleCase c);

struct ThetaCycleReport {
  // w_l(theta^i f) for i = 0 .. l-1.
  std::vector<std::int64_t> filtrations;
  // k0 in [1, l-1] with w_l(f) = -k0 (mod l); empty when w_l(f) = 0 (mod l).
  std::optional<std::int64_t> k0;
  ThetaCycleCase case_label = ThetaCycleCase::none;
  // Indices i in [0, l-1] with w_l(theta^i f) = 0 (mod l), increasing.
  std::vector<std::int64_t> drop_indices;
  // s_j from w(theta^{i_j + 1} f) = w(theta^{i_j} f) + (l + 1) - s_j (l - 1).
  std::vector<std::int64_t> drops;
  // w_l(f) == w_l(theta^{l-1} f).
  bool stable = false;
};

// Filtrations along the theta-cycle of f and its classification into the four
// drop patterns. theta^i f is carried with declared weight k + i(l + 1)
// through compute_R. Requires theta f != 0 (mod l).
ThetaCycleReport theta_cycle(const TruncatedSeries& f, std::int64_t declared_weight, Prime ell);

}  // namespace etaq
