#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "starnet/encoding.hpp"
#include "starnet/network.hpp"
#include "starnet/scenario.hpp"

namespace starnet::optimize {

struct SweepPoint {
  double v = 0.0;
  double delta = 0.0;
  bool violated = false;
};

struct SweepResult {
  std::vector<SweepPoint> grid;
  std::optional<double> critical_v;  // smallest violating visibility, bisected to 1e-6
  double alpha = 0.0;
};

using StrategyBuilder = std::function<network::QuantumStrategy(double visibility)>;

// Homogeneous visibility across links. The grid is evaluated in ascending
// order; the first bracketed crossing of delta - alpha is bisected.
SweepResult visibility_sweep(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                             const StrategyBuilder& strat_builder,
                             const std::vector<double>& v_grid);

// Builder for the optimal observables with Werner link states.
StrategyBuilder optimal_werner_builder(const ScenarioConfig& cfg);

// Builder that keeps the given observables and hub factors and swaps the
// link states for Werner states at the requested visibility.
StrategyBuilder werner_builder_from(const ScenarioConfig& cfg, network::QuantumStrategy base);

// Heterogeneous variant: one visibility per link.
network::EvaluationReport evaluate_at_visibilities(const ScenarioConfig& cfg,
                                                   const encoding::EncodingTable& table,
                                                   const network::QuantumStrategy& base,
                                                   const std::vector<double>& v_per_link);

struct SeesawOptions {
  int max_iters = 500;
  double improvement_tol = 1e-9;
  double visibility = 1.0;
};

struct SeesawState {
  std::vector<std::vector<qcore::Observable>> edge_observables;
  std::vector<std::vector<qcore::Observable>> hub_factors;
  double delta = 0.0;               // best value found
  int iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  int zero_eigenvalue_projections = 0;
  std::vector<double> trajectory;   // accepted (non-decreasing) delta values
};

// Alternating maximization at fixed link width: edge observables and hub
// factors are projected onto Hermitian involutions by eigenvalue sign.
// Returns a lower bound on the constrained-dimension quantum value.
SeesawState seesaw_maximize(const ScenarioConfig& cfg, std::uint64_t seed,
                            const SeesawOptions& options = {});

// Independent restarts seeded base_seed + 0 .. base_seed + restarts - 1;
// returns the best state (ties broken toward the lower seed).
SeesawState seesaw_best_of(const ScenarioConfig& cfg, std::uint64_t base_seed, int restarts,
                           const SeesawOptions& options = {});

network::QuantumStrategy to_strategy(const ScenarioConfig& cfg, const SeesawState& state,
                                     double visibility = 1.0);

struct ActivationResult {
  int n = 0;
  int m = 0;
  double v = 0.0;
  double alpha = 0.0;
  double delta_single = 0.0;
  double delta_multi = 0.0;
  bool violated_single = false;
  bool violated_multi = false;
};

// Seesaw at one copy vs floor(m/2) copies of the v-visibility state; an
// activation instance is (violated_single, violated_multi) = (false, true).
ActivationResult activation_experiment(int n, int m, double v, std::uint64_t base_seed = 1,
                                       int restarts = 20, const SeesawOptions& options = {});

}  // namespace starnet::optimize
