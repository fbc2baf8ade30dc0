#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "starnet/encoding.hpp"
#include "starnet/scenario.hpp"

namespace starnet::lhv {

// One deterministic hidden-variable model: per-party outcome signs for
// each setting, plus the hub outcome per term.
struct DeterministicStrategy {
  std::vector<std::vector<int>> edge_assignments;  // [k][x] over {+1,-1}, n x m
  std::vector<int> hub_assignments;                // [i] over {+1,-1}, 2^{m-1}
};

struct ClassicalBoundReport {
  int m = 0;
  std::int64_t alpha_closed = 0;
  std::int64_t alpha_enumerated = 0;
  std::optional<std::int64_t> alpha_strategy_max;
  bool agree = false;
};

// Classical bound sum_{j=0}^{floor(m/2)} C(m,j)(m-2j), exact integers.
std::int64_t alpha_closed_form(int m);

// Independent route: sum_i |m - 2 wt(row i)| over the encoding rows.
// Equals the all-(+1) assignment value, which is the deterministic maximum.
std::int64_t alpha_by_enumeration(const encoding::EncodingTable& table);

// sum_i |prod_k (sum_x sign * a^k_x) * b_i|^{1/n}.
double evaluate_strategy(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                         const DeterministicStrategy& strategy);

inline constexpr std::int64_t kDefaultMaxStates = std::int64_t{1} << 24;

// Exhaustive search over all 2^{nm} deterministic edge assignments. Hub
// outcomes are fixed to +1: each b_i multiplies exactly one term and |.|
// absorbs its sign, so the search space stays 2^{nm}.
ClassicalBoundReport exhaustive_strategy_max(const ScenarioConfig& cfg,
                                             std::int64_t max_states = kDefaultMaxStates);

std::int64_t binomial(int n, int k);

}  // namespace starnet::lhv
