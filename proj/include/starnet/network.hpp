#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "starnet/encoding.hpp"
#include "starnet/qcore.hpp"
#include "starnet/scenario.hpp"

namespace starnet::network {

// A full quantum strategy: per-party edge observables, the hub observable
// stored as one factor per link per term, and the per-link states.
struct QuantumStrategy {
  std::vector<std::vector<qcore::Observable>> edge_observables;  // [k][x], n x m
  std::vector<std::vector<qcore::Observable>> hub_factors;       // [k][i], n x 2^{m-1}
  std::vector<qcore::LinkState> link_states;                     // [k]
};

struct EvaluationReport {
  int n = 0;
  int m = 0;
  int copies = 0;
  std::vector<double> per_i_values;  // |J_i| >= 0, one per hub setting
  double delta = 0.0;                // sum_i |J_i|^{1/n}
  double classical_bound = 0.0;      // alpha_m
  double quantum_optimum = 0.0;      // 2^{m-1} sqrt(m)
  double ratio = 0.0;                // delta / classical_bound
  bool violated = false;             // delta > classical_bound + 1e-9
};

inline constexpr double kViolationTol = 1e-9;

// sum_x s_x A_x over a party's observables.
qcore::Matrix signed_sum(const std::vector<qcore::Observable>& obs,
                         const encoding::SignVector& signs);

// The unnormalized edge factor of the i-th term for party k.
qcore::Matrix edge_operator(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                            int k, int i, const std::vector<qcore::Observable>& obs);

// (1/sqrt(m)) * transpose of the edge operator; requires edge_op^2 = m*I,
// which anticommuting inputs guarantee.
qcore::Observable optimal_hub_factor(const qcore::Matrix& edge_op, int m);

// tr[rho (edge (x) hub)]; the imaginary part must vanish within 1e-10.
double link_correlator(const qcore::Matrix& edge_op, const qcore::Matrix& hub_factor,
                       const qcore::LinkState& state);

// 2^{m-1} sqrt(m); independent of n.
double quantum_optimum_formula(int n, int m);

// Anticommuting observables for every party, floor(m/2) Bell copies per
// link, hub factors from optimal_hub_factor.
QuantumStrategy build_optimal_strategy(const ScenarioConfig& cfg);

EvaluationReport evaluate_quantum(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                                  const QuantumStrategy& strategy);

// Dense path for n = 2 with a joint (not necessarily factorized) hub
// observable per term, acting on the two Bob spaces together.
EvaluationReport evaluate_quantum_joint(const ScenarioConfig& cfg,
                                        const encoding::EncodingTable& table,
                                        const std::vector<std::vector<qcore::Observable>>& edges,
                                        const std::vector<qcore::Observable>& joint_hubs,
                                        const std::vector<qcore::LinkState>& states);

// Cross-check path for n = 2: materializes the joint state and the joint
// hub observable and takes one dense trace per term.
EvaluationReport evaluate_quantum_dense(const ScenarioConfig& cfg,
                                        const encoding::EncodingTable& table,
                                        const QuantumStrategy& strategy);

// Replaces every link state, keeping observables and hub factors.
QuantumStrategy with_link_states(QuantumStrategy strategy, const qcore::LinkState& state);
QuantumStrategy with_link_states(QuantumStrategy strategy,
                                 const std::vector<qcore::LinkState>& states);

// Haar-conjugated anticommuting sets with random per-observable signs and
// the matching optimal hub factors, on Bell-copy states.
QuantumStrategy random_anticommuting_strategy(const ScenarioConfig& cfg, std::mt19937_64& rng);

// Independent generic Hermitian involutions everywhere, Bell-copy states.
QuantumStrategy random_involution_strategy(const ScenarioConfig& cfg, std::mt19937_64& rng);

struct BoundsRow {
  int m = 0;
  std::int64_t alpha = 0;
  double qopt = 0.0;
  double ratio = 0.0;  // qopt / alpha
};

// The data behind the quantum/classical ratio curve, for 2 <= m <= 50.
std::vector<BoundsRow> bounds_table(int m_min, int m_max);

}  // namespace starnet::network
