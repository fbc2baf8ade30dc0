#include "starnet/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "starnet/errors.hpp"
#include "starnet/lhv.hpp"
#include "starnet/sos.hpp"
#include "starnet/util.hpp"

namespace starnet::optimize {

using network::QuantumStrategy;
using qcore::Matrix;

namespace {

double delta_of(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                const QuantumStrategy& s) {
  return evaluate_quantum(cfg, table, s).delta;
}

}  // namespace

SweepResult visibility_sweep(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                             const StrategyBuilder& strat_builder,
                             const std::vector<double>& v_grid) {
  validate(cfg);
  if (v_grid.empty()) throw DomainError("visibility grid is empty");
  std::vector<double> grid = v_grid;
  std::sort(grid.begin(), grid.end());
  if (grid.front() < 0.0 || grid.back() > 1.0)
    throw DomainError("visibility grid must lie in [0, 1]");

  SweepResult result;
  result.alpha = static_cast<double>(lhv::alpha_closed_form(cfg.m));

  for (double v : grid) {
    const double delta = delta_of(cfg, table, strat_builder(v));
    if (!result.grid.empty() && delta < result.grid.back().delta - 1e-9)
      throw NumericError("delta decreased along the visibility grid beyond 1e-9");
    result.grid.push_back({v, delta, delta > result.alpha + network::kViolationTol});
  }

  // Bisect the first non-violating/violating bracket to width 1e-6.
  for (std::size_t j = 0; j + 1 < result.grid.size(); ++j) {
    if (!result.grid[j].violated && result.grid[j + 1].violated) {
      double lo = result.grid[j].v;
      double hi = result.grid[j + 1].v;
      while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double delta = delta_of(cfg, table, strat_builder(mid));
        if (delta > result.alpha + network::kViolationTol) hi = mid;
        else lo = mid;
      }
      result.critical_v = 0.5 * (lo + hi);
      break;
    }
  }
  return result;
}

StrategyBuilder optimal_werner_builder(const ScenarioConfig& cfg) {
  return werner_builder_from(cfg, network::build_optimal_strategy(cfg));
}

StrategyBuilder werner_builder_from(const ScenarioConfig& cfg, QuantumStrategy base) {
  const int copies = cfg.copies_per_link;
  return [copies, base = std::move(base)](double v) {
    return network::with_link_states(base, qcore::werner_copies(copies, v));
  };
}

network::EvaluationReport evaluate_at_visibilities(const ScenarioConfig& cfg,
                                                   const encoding::EncodingTable& table,
                                                   const QuantumStrategy& base,
                                                   const std::vector<double>& v_per_link) {
  if (static_cast<int>(v_per_link.size()) != cfg.n)
    throw DimensionError("need one visibility per link");
  std::vector<qcore::LinkState> states;
  states.reserve(v_per_link.size());
  for (double v : v_per_link) states.push_back(qcore::werner_copies(cfg.copies_per_link, v));
  return evaluate_quantum(cfg, table, network::with_link_states(base, states));
}

namespace {

struct SeesawWorkspace {
  std::vector<encoding::SignVector> term_signs; // [i]
  std::vector<std::vector<Matrix>> edges;       // [k][i]
  std::vector<std::vector<double>> correlators; // [k][i]
  std::vector<double> j_values;                 // [i]
};

void refresh_edges(const std::vector<std::vector<qcore::Observable>>& obs, int k,
                   SeesawWorkspace& ws) {
  for (std::size_t i = 0; i < ws.term_signs.size(); ++i)
    ws.edges[static_cast<std::size_t>(k)][i] =
        network::signed_sum(obs[static_cast<std::size_t>(k)], ws.term_signs[i]);
}

void refresh_correlators(const qcore::LinkState& state,
                         const std::vector<qcore::Observable>& hub_row, int k,
                         SeesawWorkspace& ws) {
  const int terms = static_cast<int>(hub_row.size());
  for (int i = 0; i < terms; ++i)
    ws.correlators[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
        network::link_correlator(ws.edges[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)],
                                 hub_row[static_cast<std::size_t>(i)].matrix, state);
}

double compute_delta(int n, int terms, SeesawWorkspace& ws) {
  double delta = 0.0;
  for (int i = 0; i < terms; ++i) {
    double product = 1.0;
    for (int k = 0; k < n; ++k)
      product *= ws.correlators[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    ws.j_values[static_cast<std::size_t>(i)] = product;
    delta += std::pow(std::abs(product), 1.0 / n);
  }
  return delta;
}

}  // namespace

SeesawState seesaw_maximize(const ScenarioConfig& cfg, std::uint64_t seed,
                            const SeesawOptions& options) {
  validate(cfg);
  if (options.visibility < 0.0 || options.visibility > 1.0)
    throw DomainError("visibility must lie in [0, 1]");

  const encoding::EncodingTable table = encoding::generate_table(cfg.m);
  const int n = cfg.n;
  const int m = cfg.m;
  const int terms = table.size();
  const int dim = 1 << cfg.copies_per_link;
  const qcore::LinkState state = options.visibility == 1.0
                                     ? qcore::bell_copies(cfg.copies_per_link)
                                     : qcore::werner_copies(cfg.copies_per_link, options.visibility);

  std::mt19937_64 rng(seed);
  SeesawState best;
  best.seed = seed;

  std::vector<std::vector<qcore::Observable>> obs(static_cast<std::size_t>(n));
  std::vector<std::vector<qcore::Observable>> hubs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int x = 1; x <= m; ++x)
      obs[static_cast<std::size_t>(k)].push_back(
          qcore::Observable{qcore::random_involution(dim, rng), k + 1, x});
    for (int i = 1; i <= terms; ++i)
      hubs[static_cast<std::size_t>(k)].push_back(
          qcore::Observable{qcore::random_involution(dim, rng), 0, i});
  }

  SeesawWorkspace ws;
  ws.term_signs.reserve(static_cast<std::size_t>(terms));
  for (int i = 1; i <= terms; ++i) ws.term_signs.push_back(sign_vector(table, i));
  ws.edges.assign(static_cast<std::size_t>(n), std::vector<Matrix>(static_cast<std::size_t>(terms)));
  ws.correlators.assign(static_cast<std::size_t>(n),
                        std::vector<double>(static_cast<std::size_t>(terms), 0.0));
  ws.j_values.assign(static_cast<std::size_t>(terms), 0.0);

  for (int k = 0; k < n; ++k) {
    refresh_edges(obs, k, ws);
    refresh_correlators(state, hubs[static_cast<std::size_t>(k)], k, ws);
  }
  double delta = compute_delta(n, terms, ws);
  best.delta = delta;
  best.edge_observables = obs;
  best.hub_factors = hubs;
  best.trajectory.push_back(delta);

  const double root_exponent = 1.0 / n - 1.0;
  std::vector<double> weights(static_cast<std::size_t>(terms));
  std::vector<double> signs_ws(static_cast<std::size_t>(terms));

  int iter = 0;
  for (; iter < options.max_iters; ++iter) {
    // Frozen linearization coefficients for this pass.
    for (int i = 0; i < terms; ++i) {
      const double j = ws.j_values[static_cast<std::size_t>(i)];
      weights[static_cast<std::size_t>(i)] =
          std::pow(std::max(std::abs(j), 1e-12), root_exponent) / n;
      signs_ws[static_cast<std::size_t>(i)] = j >= 0.0 ? 1.0 : -1.0;
    }

    for (int k = 0; k < n; ++k) {
      // Alice-side fields depend only on the state and hub factors.
      std::vector<Matrix> fields(static_cast<std::size_t>(terms));
      std::vector<double> rest(static_cast<std::size_t>(terms));
      for (int i = 0; i < terms; ++i) {
        fields[static_cast<std::size_t>(i)] = qcore::alice_field(
            state.matrix, hubs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].matrix,
            state.dim_a, state.dim_b);
        double product = 1.0;
        for (int k2 = 0; k2 < n; ++k2) {
          if (k2 == k) continue;
          product *= ws.correlators[static_cast<std::size_t>(k2)][static_cast<std::size_t>(i)];
        }
        rest[static_cast<std::size_t>(i)] = product;
      }
      for (int x = 0; x < m; ++x) {
        Matrix effective = Matrix::Zero(dim, dim);
        for (int i = 0; i < terms; ++i) {
          effective += weights[static_cast<std::size_t>(i)] *
                       signs_ws[static_cast<std::size_t>(i)] *
                       rest[static_cast<std::size_t>(i)] *
                       static_cast<double>(
                           ws.term_signs[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)]) *
                       fields[static_cast<std::size_t>(i)];
        }
        obs[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)].matrix =
            qcore::sign_involution(effective, &best.zero_eigenvalue_projections);
      }
      refresh_edges(obs, k, ws);
      refresh_correlators(state, hubs[static_cast<std::size_t>(k)], k, ws);
    }

    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < terms; ++i) {
        double product = 1.0;
        for (int k2 = 0; k2 < n; ++k2) {
          if (k2 == k) continue;
          product *= ws.correlators[static_cast<std::size_t>(k2)][static_cast<std::size_t>(i)];
        }
        const Matrix field = qcore::bob_field(
            state.matrix, ws.edges[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)],
            state.dim_a, state.dim_b);
        const double scale = signs_ws[static_cast<std::size_t>(i)] * product;
        hubs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].matrix =
            qcore::sign_involution(scale * field, &best.zero_eigenvalue_projections);
      }
      refresh_correlators(state, hubs[static_cast<std::size_t>(k)], k, ws);
    }

    const double updated = compute_delta(n, terms, ws);
    if (updated > best.delta) {
      best.delta = updated;
      best.edge_observables = obs;
      best.hub_factors = hubs;
    }
    const double improvement = updated - delta;
    delta = updated;
    if (improvement >= options.improvement_tol) {
      best.trajectory.push_back(updated);
    } else {
      best.converged = true;
      ++iter;
      break;
    }
  }
  best.iterations = iter;
  return best;
}

SeesawState seesaw_best_of(const ScenarioConfig& cfg, std::uint64_t base_seed, int restarts,
                           const SeesawOptions& options) {
  if (restarts < 1) throw DomainError("need at least one restart");
  std::vector<SeesawState> states(static_cast<std::size_t>(restarts));
  util::parallel_for(0, restarts, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t r = lo; r < hi; ++r)
      states[static_cast<std::size_t>(r)] =
          seesaw_maximize(cfg, base_seed + static_cast<std::uint64_t>(r), options);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < states.size(); ++r)
    if (states[r].delta > states[best].delta) best = r;
  return states[best];
}

network::QuantumStrategy to_strategy(const ScenarioConfig& cfg, const SeesawState& state,
                                     double visibility) {
  QuantumStrategy strategy;
  strategy.edge_observables = state.edge_observables;
  strategy.hub_factors = state.hub_factors;
  const qcore::LinkState link = visibility == 1.0
                                    ? qcore::bell_copies(cfg.copies_per_link)
                                    : qcore::werner_copies(cfg.copies_per_link, visibility);
  strategy.link_states.assign(static_cast<std::size_t>(cfg.n), link);
  return strategy;
}

ActivationResult activation_experiment(int n, int m, double v, std::uint64_t base_seed,
                                       int restarts, const SeesawOptions& options) {
  if (m < 4) throw InvalidScenarioError("activation experiment needs m >= 4");
  SeesawOptions at_v = options;
  at_v.visibility = v;

  ActivationResult result;
  result.n = n;
  result.m = m;
  result.v = v;
  result.alpha = static_cast<double>(lhv::alpha_closed_form(m));

  const SeesawState single = seesaw_best_of(make_config(n, m, 1), base_seed, restarts, at_v);
  const SeesawState multi = seesaw_best_of(make_config(n, m, m / 2), base_seed, restarts, at_v);
  result.delta_single = single.delta;
  result.delta_multi = multi.delta;
  result.violated_single = single.delta > result.alpha + network::kViolationTol;
  result.violated_multi = multi.delta > result.alpha + network::kViolationTol;
  return result;
}

}  // namespace starnet::optimize
