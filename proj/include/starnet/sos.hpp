#pragma once

#include <vector>

#include "starnet/encoding.hpp"
#include "starnet/network.hpp"
#include "starnet/qcore.hpp"
#include "starnet/scenario.hpp"

namespace starnet::sos {

inline constexpr double kSlackTol = -1e-8;
inline constexpr double kTightTol = 1e-7;

struct SosReport {
  int n = 0;
  int m = 0;
  std::vector<std::vector<double>> omegas;  // [k][i], per-link edge-operator norms
  double gamma = 0.0;                       // sum_i (prod_k omega)^{1/n} - delta
  double delta_q = 0.0;
  bool slack_ok = false;        // gamma >= -1e-8
  bool tight = false;           // |gamma| < 1e-7
  bool extended_regime = false; // certificate evaluated on mixed link states
};

// sqrt(tr[rho (edge^2 (x) I)]), the norm of the edge operator on the state.
double omega(const qcore::Matrix& edge_op, const qcore::LinkState& state);

// Same value through the anticommutator expansion
//   [m + <{s_1 A_1, sum_{x>1} s_x A_x}> + <{s_2 A_2, sum_{x>2} s_x A_x}> + ...]^{1/2};
// cross-checked against omega() within 1e-10.
double omega_anticommutator_expansion(const std::vector<qcore::Observable>& obs,
                                      const encoding::SignVector& signs,
                                      const qcore::LinkState& state);

SosReport certificate(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                      const network::QuantumStrategy& strategy);

}  // namespace starnet::sos
