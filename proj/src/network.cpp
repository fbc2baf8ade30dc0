#include "starnet/network.hpp"

#include <cmath>

#include "starnet/errors.hpp"
#include "starnet/lhv.hpp"

namespace starnet::network {

using qcore::Matrix;

qcore::Matrix signed_sum(const std::vector<qcore::Observable>& obs,
                         const encoding::SignVector& signs) {
  if (obs.empty()) throw DimensionError("signed sum needs at least one observable");
  if (obs.size() != signs.size()) throw DimensionError("sign vector length differs from observable count");
  const int dim = obs.front().dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t x = 0; x < obs.size(); ++x) {
    if (obs[x].dim() != dim) throw DimensionError("observables have mixed dimensions");
    sum += static_cast<double>(signs[x]) * obs[x].matrix;
  }
  return sum;
}

qcore::Matrix edge_operator(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                            int k, int i, const std::vector<qcore::Observable>& obs) {
  validate(cfg);
  if (k < 1 || k > cfg.n) throw IndexError("party index out of range [1, n]");
  if (table.m() != cfg.m) throw DimensionError("table does not match scenario m");
  if (static_cast<int>(obs.size()) != cfg.m)
    throw DimensionError("party must supply exactly m observables");
  return signed_sum(obs, sign_vector(table, i));
}

qcore::Observable optimal_hub_factor(const qcore::Matrix& edge_op, int m) {
  if (m < 2) throw InvalidScenarioError("hub factor requires m >= 2");
  const Matrix square = edge_op * edge_op;
  const Matrix expected = static_cast<double>(m) * qcore::identity(static_cast<int>(edge_op.rows()));
  if ((square - expected).cwiseAbs().maxCoeff() > 1e-8 * m)
    throw NumericError("edge operator does not square to m*I; hub factor not normalizable");
  return qcore::make_observable(edge_op.transpose() / std::sqrt(static_cast<double>(m)), 0, 0);
}

double link_correlator(const qcore::Matrix& edge_op, const qcore::Matrix& hub_factor,
                       const qcore::LinkState& state) {
  if (edge_op.rows() != state.dim_a || edge_op.cols() != state.dim_a)
    throw DimensionError("edge operator does not match the link's Alice dimension");
  if (hub_factor.rows() != state.dim_b || hub_factor.cols() != state.dim_b)
    throw DimensionError("hub factor does not match the link's Bob dimension");
  const Matrix field = qcore::alice_field(state.matrix, hub_factor, state.dim_a, state.dim_b);
  const qcore::Complex value = (edge_op * field).trace();
  if (std::abs(value.imag()) > qcore::kImagTol)
    throw NumericError("link correlator has imaginary part beyond 1e-10");
  return value.real();
}

double quantum_optimum_formula(int n, int m) {
  (void)n;  // the optimum has no n dependence
  if (m < 2) throw InvalidScenarioError("optimum defined for m >= 2");
  return std::ldexp(1.0, m - 1) * std::sqrt(static_cast<double>(m));
}

namespace {

void check_strategy(const ScenarioConfig& cfg, const QuantumStrategy& s) {
  const std::size_t n = static_cast<std::size_t>(cfg.n);
  const std::size_t terms = static_cast<std::size_t>(hub_setting_count(cfg));
  if (s.edge_observables.size() != n) throw DimensionError("strategy party count differs from n");
  if (s.hub_factors.size() != n) throw DimensionError("hub factor rows differ from n");
  if (s.link_states.size() != n) throw DimensionError("link state count differs from n");
  for (std::size_t k = 0; k < n; ++k) {
    if (s.edge_observables[k].size() != static_cast<std::size_t>(cfg.m))
      throw DimensionError("party observable count differs from m");
    if (s.hub_factors[k].size() != terms)
      throw DimensionError("hub factor count differs from 2^{m-1}");
    const auto& state = s.link_states[k];
    for (const auto& o : s.edge_observables[k])
      if (o.dim() != state.dim_a) throw DimensionError("edge observable does not fit its link");
    for (const auto& o : s.hub_factors[k])
      if (o.dim() != state.dim_b) throw DimensionError("hub factor does not fit its link");
  }
}

EvaluationReport finish_report(const ScenarioConfig& cfg, std::vector<double> per_i) {
  EvaluationReport report;
  report.n = cfg.n;
  report.m = cfg.m;
  report.copies = cfg.copies_per_link;
  report.per_i_values = std::move(per_i);
  double delta = 0.0;
  for (double v : report.per_i_values) delta += std::pow(v, 1.0 / cfg.n);
  report.delta = delta;
  report.classical_bound = static_cast<double>(lhv::alpha_closed_form(cfg.m));
  report.quantum_optimum = quantum_optimum_formula(cfg.n, cfg.m);
  report.ratio = report.delta / report.classical_bound;
  report.violated = report.delta > report.classical_bound + kViolationTol;
  return report;
}

}  // namespace

QuantumStrategy build_optimal_strategy(const ScenarioConfig& cfg) {
  validate(cfg);
  if (cfg.copies_per_link != cfg.m / 2)
    throw InvalidScenarioError(
        "optimal construction needs copies_per_link = floor(m/2); supply observables "
        "externally for narrower links");

  const encoding::EncodingTable table = encoding::generate_table(cfg.m);
  const std::vector<qcore::Observable> base = qcore::anticommuting_set(cfg.m);
  const qcore::LinkState state = qcore::bell_copies(cfg.copies_per_link);

  std::vector<qcore::Observable> hub_row;
  hub_row.reserve(static_cast<std::size_t>(table.size()));
  for (int i = 1; i <= table.size(); ++i) {
    const Matrix edge = signed_sum(base, sign_vector(table, i));
    hub_row.push_back(optimal_hub_factor(edge, cfg.m).with_label(0, i));
  }

  QuantumStrategy strategy;
  for (int k = 1; k <= cfg.n; ++k) {
    std::vector<qcore::Observable> party;
    party.reserve(base.size());
    for (std::size_t x = 0; x < base.size(); ++x)
      party.push_back(base[x].with_label(k, static_cast<int>(x) + 1));
    strategy.edge_observables.push_back(std::move(party));
    strategy.hub_factors.push_back(hub_row);
    strategy.link_states.push_back(state);
  }
  return strategy;
}

EvaluationReport evaluate_quantum(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                                  const QuantumStrategy& strategy) {
  validate(cfg);
  if (table.m() != cfg.m) throw DimensionError("table does not match scenario m");
  check_strategy(cfg, strategy);

  const int terms = table.size();
  std::vector<double> per_i(static_cast<std::size_t>(terms));
  for (int i = 1; i <= terms; ++i) {
    const encoding::SignVector signs = sign_vector(table, i);
    double product = 1.0;
    for (int k = 0; k < cfg.n; ++k) {
      const Matrix edge = signed_sum(strategy.edge_observables[static_cast<std::size_t>(k)], signs);
      product *= link_correlator(edge,
                                 strategy.hub_factors[static_cast<std::size_t>(k)]
                                                     [static_cast<std::size_t>(i - 1)].matrix,
                                 strategy.link_states[static_cast<std::size_t>(k)]);
    }
    per_i[static_cast<std::size_t>(i - 1)] = std::abs(product);
  }
  return finish_report(cfg, std::move(per_i));
}

EvaluationReport evaluate_quantum_joint(const ScenarioConfig& cfg,
                                        const encoding::EncodingTable& table,
                                        const std::vector<std::vector<qcore::Observable>>& edges,
                                        const std::vector<qcore::Observable>& joint_hubs,
                                        const std::vector<qcore::LinkState>& states) {
  validate(cfg);
  if (cfg.n != 2) throw InvalidScenarioError("joint-hub dense path supports n = 2 only");
  if (table.m() != cfg.m) throw DimensionError("table does not match scenario m");
  if (edges.size() != 2 || states.size() != 2)
    throw DimensionError("joint evaluation needs two parties and two link states");
  if (static_cast<int>(joint_hubs.size()) != table.size())
    throw DimensionError("need one joint hub observable per term");

  const auto& s0 = states[0];
  const auto& s1 = states[1];
  const Eigen::Index full = s0.matrix.rows() * s1.matrix.rows();
  if (full > 1024) throw CapacityError("dense path limited to joint dimension 1024");
  const int db = s0.dim_b * s1.dim_b;

  const Matrix rho = qcore::kron(s0.matrix, s1.matrix);
  const int terms = table.size();
  std::vector<double> per_i(static_cast<std::size_t>(terms));
  for (int i = 1; i <= terms; ++i) {
    const encoding::SignVector signs = sign_vector(table, i);
    const Matrix edge0 = signed_sum(edges[0], signs);
    const Matrix edge1 = signed_sum(edges[1], signs);
    const Matrix& hub = joint_hubs[static_cast<std::size_t>(i - 1)].matrix;
    if (hub.rows() != db) throw DimensionError("joint hub does not match the Bob dimensions");

    // Operator on (A1 B1 A2 B2): E1 x E2 x B with B across (B1, B2).
    Matrix op(full, full);
    for (int a1 = 0; a1 < s0.dim_a; ++a1)
      for (int b1 = 0; b1 < s0.dim_b; ++b1)
        for (int a2 = 0; a2 < s1.dim_a; ++a2)
          for (int b2 = 0; b2 < s1.dim_b; ++b2) {
            const Eigen::Index row =
                ((static_cast<Eigen::Index>(a1) * s0.dim_b + b1) * s1.dim_a + a2) * s1.dim_b + b2;
            for (int a1p = 0; a1p < s0.dim_a; ++a1p)
              for (int b1p = 0; b1p < s0.dim_b; ++b1p)
                for (int a2p = 0; a2p < s1.dim_a; ++a2p)
                  for (int b2p = 0; b2p < s1.dim_b; ++b2p) {
                    const Eigen::Index col =
                        ((static_cast<Eigen::Index>(a1p) * s0.dim_b + b1p) * s1.dim_a + a2p) *
                            s1.dim_b +
                        b2p;
                    op(row, col) = edge0(a1, a1p) * edge1(a2, a2p) *
                                   hub(b1 * s1.dim_b + b2, b1p * s1.dim_b + b2p);
                  }
          }
    const qcore::Complex value = (rho * op).trace();
    if (std::abs(value.imag()) > qcore::kImagTol)
      throw NumericError("dense correlator has imaginary part beyond 1e-10");
    per_i[static_cast<std::size_t>(i - 1)] = std::abs(value.real());
  }
  return finish_report(cfg, std::move(per_i));
}

EvaluationReport evaluate_quantum_dense(const ScenarioConfig& cfg,
                                        const encoding::EncodingTable& table,
                                        const QuantumStrategy& strategy) {
  validate(cfg);
  if (cfg.n != 2) throw InvalidScenarioError("dense cross-check path supports n = 2 only");
  check_strategy(cfg, strategy);

  std::vector<qcore::Observable> joint_hubs;
  joint_hubs.reserve(strategy.hub_factors[0].size());
  for (std::size_t i = 0; i < strategy.hub_factors[0].size(); ++i)
    joint_hubs.push_back(qcore::Observable{
        qcore::kron(strategy.hub_factors[0][i].matrix, strategy.hub_factors[1][i].matrix), 0,
        static_cast<int>(i) + 1});
  return evaluate_quantum_joint(cfg, table, strategy.edge_observables, joint_hubs,
                                strategy.link_states);
}

QuantumStrategy with_link_states(QuantumStrategy strategy, const qcore::LinkState& state) {
  for (auto& s : strategy.link_states) s = state;
  return strategy;
}

QuantumStrategy with_link_states(QuantumStrategy strategy,
                                 const std::vector<qcore::LinkState>& states) {
  if (states.size() != strategy.link_states.size())
    throw DimensionError("state count differs from link count");
  strategy.link_states = states;
  return strategy;
}

QuantumStrategy random_anticommuting_strategy(const ScenarioConfig& cfg, std::mt19937_64& rng) {
  validate(cfg);
  if (cfg.copies_per_link != cfg.m / 2)
    throw InvalidScenarioError("anticommuting sampler needs copies_per_link = floor(m/2)");

  const encoding::EncodingTable table = encoding::generate_table(cfg.m);
  const std::vector<qcore::Observable> base = qcore::anticommuting_set(cfg.m);
  const qcore::LinkState state = qcore::bell_copies(cfg.copies_per_link);
  const int dim = base.front().dim();

  QuantumStrategy strategy;
  for (int k = 1; k <= cfg.n; ++k) {
    const Matrix u = qcore::random_unitary(dim, rng);
    std::vector<qcore::Observable> party;
    party.reserve(base.size());
    for (std::size_t x = 0; x < base.size(); ++x) {
      const double sign = (rng() & 1) ? -1.0 : 1.0;
      party.push_back(qcore::make_observable(sign * (u * base[x].matrix * u.adjoint()), k,
                                             static_cast<int>(x) + 1));
    }
    std::vector<qcore::Observable> hub_row;
    hub_row.reserve(static_cast<std::size_t>(table.size()));
    for (int i = 1; i <= table.size(); ++i) {
      const Matrix edge = signed_sum(party, sign_vector(table, i));
      hub_row.push_back(optimal_hub_factor(edge, cfg.m).with_label(0, i));
    }
    strategy.edge_observables.push_back(std::move(party));
    strategy.hub_factors.push_back(std::move(hub_row));
    strategy.link_states.push_back(state);
  }
  return strategy;
}

QuantumStrategy random_involution_strategy(const ScenarioConfig& cfg, std::mt19937_64& rng) {
  validate(cfg);
  const int dim = 1 << cfg.copies_per_link;
  const qcore::LinkState state = qcore::bell_copies(cfg.copies_per_link);
  const int terms = hub_setting_count(cfg);

  QuantumStrategy strategy;
  for (int k = 1; k <= cfg.n; ++k) {
    std::vector<qcore::Observable> party;
    for (int x = 1; x <= cfg.m; ++x)
      party.push_back(qcore::Observable{qcore::random_involution(dim, rng), k, x});
    std::vector<qcore::Observable> hub_row;
    for (int i = 1; i <= terms; ++i)
      hub_row.push_back(qcore::Observable{qcore::random_involution(dim, rng), 0, i});
    strategy.edge_observables.push_back(std::move(party));
    strategy.hub_factors.push_back(std::move(hub_row));
    strategy.link_states.push_back(state);
  }
  return strategy;
}

std::vector<BoundsRow> bounds_table(int m_min, int m_max) {
  if (m_min < 2) throw InvalidScenarioError("bounds table starts at m = 2");
  if (m_max > 50) throw CapacityError("bounds table capped at m = 50");
  if (m_min > m_max) throw InvalidScenarioError("empty m range");
  std::vector<BoundsRow> rows;
  rows.reserve(static_cast<std::size_t>(m_max - m_min + 1));
  for (int m = m_min; m <= m_max; ++m) {
    BoundsRow row;
    row.m = m;
    row.alpha = lhv::alpha_closed_form(m);
    row.qopt = quantum_optimum_formula(2, m);
    row.ratio = row.qopt / static_cast<double>(row.alpha);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace starnet::network
