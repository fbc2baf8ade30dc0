#include "starnet/sos.hpp"

#include <cmath>

#include "starnet/errors.hpp"

namespace starnet::sos {

using qcore::Matrix;

namespace {

double real_checked(const qcore::Complex& value, const char* what) {
  if (std::abs(value.imag()) > qcore::kImagTol) throw NumericError(what);
  return value.real();
}

double sqrt_radicand(double radicand) {
  if (radicand < -1e-10) throw NumericError("omega radicand negative beyond -1e-10");
  return std::sqrt(radicand < 0.0 ? 0.0 : radicand);
}

}  // namespace

double omega(const qcore::Matrix& edge_op, const qcore::LinkState& state) {
  if (edge_op.rows() != state.dim_a || edge_op.cols() != state.dim_a)
    throw DimensionError("edge operator does not match the link's Alice dimension");
  const Matrix alice_marginal = qcore::partial_trace_bob(state.matrix, state.dim_a, state.dim_b);
  const double radicand =
      real_checked((edge_op * edge_op * alice_marginal).trace(), "omega radicand not real");
  return sqrt_radicand(radicand);
}

double omega_anticommutator_expansion(const std::vector<qcore::Observable>& obs,
                                      const encoding::SignVector& signs,
                                      const qcore::LinkState& state) {
  if (obs.empty() || obs.size() != signs.size())
    throw DimensionError("expansion needs one sign per observable");
  const int m = static_cast<int>(obs.size());
  const int dim = obs.front().dim();
  if (dim != state.dim_a) throw DimensionError("observables do not match the link's Alice dimension");

  const Matrix alice_marginal = qcore::partial_trace_bob(state.matrix, state.dim_a, state.dim_b);

  double radicand = static_cast<double>(m);
  for (int x = 0; x + 1 < m; ++x) {
    Matrix tail = Matrix::Zero(dim, dim);
    for (int y = x + 1; y < m; ++y)
      tail += static_cast<double>(signs[static_cast<std::size_t>(y)]) *
              obs[static_cast<std::size_t>(y)].matrix;
    const Matrix head = static_cast<double>(signs[static_cast<std::size_t>(x)]) *
                        obs[static_cast<std::size_t>(x)].matrix;
    const Matrix anti = head * tail + tail * head;
    radicand += real_checked((anti * alice_marginal).trace(), "anticommutator expectation not real");
  }
  const double expanded = sqrt_radicand(radicand);

  // Dual-route consistency. The value-level comparison loses meaning when
  // omega is close to zero (the root amplifies radicand cancellation), so
  // the radicands are compared there instead.
  const double direct = omega(network::signed_sum(obs, signs), state);
  const bool values_agree = std::abs(expanded - direct) <= 1e-10;
  const bool radicands_agree = std::abs(radicand - direct * direct) <= 1e-10;
  if (!values_agree && !radicands_agree)
    throw NumericError("anticommutator expansion disagrees with omega beyond 1e-10");
  return expanded;
}

SosReport certificate(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                      const network::QuantumStrategy& strategy) {
  const network::EvaluationReport evaluation = evaluate_quantum(cfg, table, strategy);

  SosReport report;
  report.n = cfg.n;
  report.m = cfg.m;
  report.delta_q = evaluation.delta;

  const int terms = table.size();
  report.omegas.assign(static_cast<std::size_t>(cfg.n),
                       std::vector<double>(static_cast<std::size_t>(terms), 0.0));
  for (int k = 0; k < cfg.n; ++k) {
    const auto& state = strategy.link_states[static_cast<std::size_t>(k)];
    for (int i = 1; i <= terms; ++i) {
      const Matrix edge = network::signed_sum(strategy.edge_observables[static_cast<std::size_t>(k)],
                                              sign_vector(table, i));
      report.omegas[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)] =
          omega(edge, state);
    }
  }

  double bound = 0.0;
  for (int i = 0; i < terms; ++i) {
    double product = 1.0;
    for (int k = 0; k < cfg.n; ++k)
      product *= report.omegas[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    bound += std::pow(product, 1.0 / cfg.n);
  }
  report.gamma = bound - report.delta_q;
  report.slack_ok = report.gamma >= kSlackTol;
  report.tight = std::abs(report.gamma) < kTightTol;

  for (const auto& state : strategy.link_states) {
    const double purity = real_checked((state.matrix * state.matrix).trace(), "purity not real");
    if (purity < 1.0 - 1e-9) {
      report.extended_regime = true;
      break;
    }
  }
  return report;
}

}  // namespace starnet::sos
