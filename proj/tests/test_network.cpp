#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "starnet/encoding.hpp"
#include "starnet/errors.hpp"
#include "starnet/lhv.hpp"
#include "starnet/network.hpp"

using namespace starnet;
using network::QuantumStrategy;
using qcore::Matrix;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<qcore::Observable> observables(std::vector<Matrix> ms) {
  std::vector<qcore::Observable> out;
  int x = 1;
  for (auto& m : ms) out.push_back(qcore::make_observable(std::move(m), 1, x++));
  return out;
}

}  // namespace

TEST_CASE("edge_operator builds signed sums") {
  const auto cfg = make_config(2, 2);
  const auto table = encoding::generate_table(2);
  const auto xy = observables({qcore::pauli_x(), qcore::pauli_y()});

  const Matrix plus = network::edge_operator(cfg, table, 1, 1, xy);
  CHECK(max_abs(plus - (qcore::pauli_x() + qcore::pauli_y())) < 1e-15);

  const auto xx = observables({qcore::pauli_x(), qcore::pauli_x()});
  const Matrix zero = network::edge_operator(cfg, table, 1, 2, xx);
  CHECK(max_abs(zero) < 1e-15);

  const auto cfg3 = make_config(2, 3);
  const auto table3 = encoding::generate_table(3);
  std::vector<qcore::Observable> set = qcore::anticommuting_set(3);
  const Matrix op = network::edge_operator(cfg3, table3, 1, 1, set);
  CHECK(max_abs(op * op - 3.0 * qcore::identity(2)) < 1e-10);

  CHECK_THROWS_AS(network::edge_operator(cfg, table, 3, 1, xy), IndexError);
  CHECK_THROWS_AS(network::edge_operator(cfg, table, 1, 1, set), DimensionError);
}

TEST_CASE("optimal_hub_factor transposes and normalizes") {
  const Matrix xy = qcore::pauli_x() + qcore::pauli_y();
  const auto hub = network::optimal_hub_factor(xy, 2);
  CHECK(max_abs(hub.matrix - (qcore::pauli_x() - qcore::pauli_y()) / std::sqrt(2.0)) < 1e-12);
  CHECK(qcore::is_involution(hub.matrix));

  const Matrix xyz = qcore::pauli_x() + qcore::pauli_y() + qcore::pauli_z();
  const auto hub3 = network::optimal_hub_factor(xyz, 3);
  CHECK(max_abs(hub3.matrix -
                (qcore::pauli_x() - qcore::pauli_y() + qcore::pauli_z()) / std::sqrt(3.0)) < 1e-12);

  // 2X squares to 4I, not 2I: not normalizable.
  CHECK_THROWS_AS(network::optimal_hub_factor(2.0 * qcore::pauli_x(), 2), NumericError);
}

TEST_CASE("link_correlator hand-checked values") {
  const auto bell = qcore::bell_copies(1);
  CHECK(network::link_correlator(qcore::pauli_z(), qcore::pauli_z(), bell) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const Matrix edge = qcore::pauli_x() + qcore::pauli_y();
  const Matrix hub = (qcore::pauli_x() - qcore::pauli_y()) / std::sqrt(2.0);
  CHECK(network::link_correlator(edge, hub, bell) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto werner = qcore::werner_copies(1, 0.6);
  CHECK(network::link_correlator(qcore::pauli_z(), qcore::pauli_z(), werner) ==
        doctest::Approx(0.6).epsilon(1e-12));

  // A non-Hermitian edge operator produces a complex expectation.
  const Matrix imaginary = qcore::Complex{0.0, 1.0} * qcore::pauli_x();
  CHECK_THROWS_AS(network::link_correlator(imaginary, qcore::pauli_x(), bell), NumericError);
  CHECK_THROWS_AS(network::link_correlator(qcore::identity(4), qcore::pauli_z(), bell),
                  DimensionError);
}

TEST_CASE("quantum_optimum_formula published values") {
  CHECK(network::quantum_optimum_formula(2, 2) == doctest::Approx(2.828427).epsilon(1e-6));
  CHECK(network::quantum_optimum_formula(2, 3) == doctest::Approx(6.928203).epsilon(1e-6));
  CHECK(network::quantum_optimum_formula(3, 5) == doctest::Approx(35.77709).epsilon(1e-6));
  CHECK(network::quantum_optimum_formula(2, 5) == doctest::Approx(16.0 * std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("optimal strategy reaches 2^{m-1} sqrt(m)") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 4}, {4, 3}}) {
    const auto cfg = make_config(n, m);
    const auto table = encoding::generate_table(m);
    const auto report = evaluate_quantum(cfg, table, network::build_optimal_strategy(cfg));
    CHECK(report.delta == doctest::Approx(network::quantum_optimum_formula(n, m)).epsilon(1e-10));
    CHECK(report.violated);
    CHECK(report.ratio == doctest::Approx(report.delta / report.classical_bound).epsilon(1e-12));
  }
}

TEST_CASE("optimal strategy at m=6") {
  const auto cfg = make_config(2, 6);
  const auto table = encoding::generate_table(6);
  const auto report = evaluate_quantum(cfg, table, network::build_optimal_strategy(cfg));
  CHECK(std::abs(report.delta - 32.0 * std::sqrt(6.0)) < 1e-7);
}

TEST_CASE("build_optimal_strategy needs the full link width") {
  CHECK_THROWS_AS(network::build_optimal_strategy(make_config(2, 4, 1)), InvalidScenarioError);
}

TEST_CASE("report delta recomputes from per-term values") {
  const auto cfg = make_config(3, 3);
  const auto table = encoding::generate_table(3);
  const auto report = evaluate_quantum(cfg, table, network::build_optimal_strategy(cfg));
  double delta = 0.0;
  for (double v : report.per_i_values) delta += std::pow(v, 1.0 / 3.0);
  CHECK(std::abs(delta - report.delta) < 1e-10);
}

TEST_CASE("dense path agrees with the factorized evaluation") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const auto cfg = make_config(2, m);
    const auto table = encoding::generate_table(m);
    const QuantumStrategy strategy = network::random_involution_strategy(cfg, rng);
    const auto fast = evaluate_quantum(cfg, table, strategy);
    const auto dense = network::evaluate_quantum_dense(cfg, table, strategy);
    REQUIRE(fast.per_i_values.size() == dense.per_i_values.size());
    for (std::size_t i = 0; i < fast.per_i_values.size(); ++i)
      CHECK(std::abs(fast.per_i_values[i] - dense.per_i_values[i]) < 1e-10);
    // n-th roots amplify term-level arithmetic noise near |J| = 0.
    CHECK(std::abs(fast.delta - dense.delta) < 1e-5);
  }
  CHECK_THROWS_AS(network::evaluate_quantum_dense(make_config(3, 2), encoding::generate_table(2),
                                                  network::build_optimal_strategy(make_config(3, 2))),
                  InvalidScenarioError);
}

// A joint hub observable that is not a product across the two links; the
// oracle assembles the same operator by qubit permutation.
TEST_CASE("joint hub observables evaluate through the dense path") {
  std::mt19937_64 rng(43);
  const auto cfg = make_config(2, 2);
  const auto table = encoding::generate_table(2);

  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;

  for (int trial = 0; trial < 20; ++trial) {
    const QuantumStrategy base = network::random_involution_strategy(cfg, rng);
    std::vector<qcore::Observable> joint_hubs;
    joint_hubs.push_back(qcore::make_observable(swap, 0, 1));
    joint_hubs.push_back(qcore::make_observable(qcore::random_involution(4, rng), 0, 2));

    const auto report = network::evaluate_quantum_joint(cfg, table, base.edge_observables,
                                                        joint_hubs, base.link_states);

    const Matrix rho = qcore::kron(base.link_states[0].matrix, base.link_states[1].matrix);
    for (int i = 1; i <= 2; ++i) {
      const auto signs = encoding::sign_vector(table, i);
      const Matrix product = qcore::kron(
          qcore::kron(network::signed_sum(base.edge_observables[0], signs),
                      network::signed_sum(base.edge_observables[1], signs)),
          joint_hubs[static_cast<std::size_t>(i - 1)].matrix);
      // (A1 A2 B1 B2) -> (A1 B1 A2 B2)
      const Matrix arranged = qcore::permute_qubits(product, {0, 2, 1, 3});
      const double expected = std::abs((rho * arranged).trace().real());
      CHECK(std::abs(report.per_i_values[static_cast<std::size_t>(i - 1)] - expected) < 1e-10);
    }
  }
}

namespace {

// Conjugates party k's observables by u and its link state by u (x) I.
void conjugate_party(QuantumStrategy& strategy, std::size_t k, const Matrix& u) {
  const auto& state = strategy.link_states[k];
  for (auto& obs : strategy.edge_observables[k]) obs.matrix = u * obs.matrix * u.adjoint();
  const Matrix big_u = qcore::kron(u, qcore::identity(state.dim_b));
  strategy.link_states[k] =
      qcore::make_link_state(big_u * state.matrix * big_u.adjoint(), state.dim_a, state.dim_b,
                             state.copies, state.visibility_per_copy);
}

}  // namespace

TEST_CASE("delta is invariant under unitary conjugation of a party and its state") {
  std::mt19937_64 rng(37);
  // Well-conditioned strategies: every |J_i| = m^{n/2}, so the delta-level
  // tolerance of 1e-9 is meaningful.
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 3);
    const auto cfg = make_config(n, m);
    const auto table = encoding::generate_table(m);
    QuantumStrategy strategy = network::random_anticommuting_strategy(cfg, rng);
    const double before = evaluate_quantum(cfg, table, strategy).delta;

    const std::size_t k = rng() % static_cast<unsigned>(n);
    conjugate_party(strategy, k, qcore::random_unitary(strategy.link_states[k].dim_a, rng));
    const double after = evaluate_quantum(cfg, table, strategy).delta;
    CHECK(std::abs(before - after) < 1e-9);
  }
  // Generic strategies: the per-term |J_i| values are invariant to 1e-10;
  // the roots magnify noise where |J_i| is close to zero.
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int m = 2 + static_cast<int>(rng() % 3);
    const auto cfg = make_config(n, m);
    const auto table = encoding::generate_table(m);
    QuantumStrategy strategy = network::random_involution_strategy(cfg, rng);
    const auto before = evaluate_quantum(cfg, table, strategy);

    const std::size_t k = rng() % static_cast<unsigned>(n);
    conjugate_party(strategy, k, qcore::random_unitary(strategy.link_states[k].dim_a, rng));
    const auto after = evaluate_quantum(cfg, table, strategy);
    for (std::size_t i = 0; i < before.per_i_values.size(); ++i)
      CHECK(std::abs(before.per_i_values[i] - after.per_i_values[i]) < 1e-10);
    CHECK(std::abs(before.delta - after.delta) < 1e-5);
  }
}

// Permuting a party's observables together with the sign-vector entries
// permutes the |J_i| values and leaves delta unchanged.
TEST_CASE("setting-permutation covariance") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 3);
    const auto cfg = make_config(2, m);
    const auto table = encoding::generate_table(m);
    const QuantumStrategy strategy = network::random_involution_strategy(cfg, rng);

    std::vector<int> permutation(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) permutation[static_cast<std::size_t>(x)] = x;
    std::shuffle(permutation.begin(), permutation.end(), rng);

    std::vector<double> original, permuted;
    double delta_original = 0.0, delta_permuted = 0.0;
    for (int i = 1; i <= table.size(); ++i) {
      const auto signs = encoding::sign_vector(table, i);
      encoding::SignVector perm_signs(static_cast<std::size_t>(m));
      for (int x = 0; x < m; ++x)
        perm_signs[static_cast<std::size_t>(x)] =
            signs[static_cast<std::size_t>(permutation[static_cast<std::size_t>(x)])];

      double product = 1.0, perm_product = 1.0;
      for (int k = 0; k < 2; ++k) {
        const auto& party = strategy.edge_observables[static_cast<std::size_t>(k)];
        std::vector<qcore::Observable> reordered;
        for (int x = 0; x < m; ++x)
          reordered.push_back(party[static_cast<std::size_t>(permutation[static_cast<std::size_t>(x)])]);
        const auto& hub = strategy.hub_factors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)];
        const auto& state = strategy.link_states[static_cast<std::size_t>(k)];
        product *= network::link_correlator(network::signed_sum(party, signs), hub.matrix, state);
        perm_product *=
            network::link_correlator(network::signed_sum(reordered, perm_signs), hub.matrix, state);
      }
      original.push_back(std::abs(product));
      permuted.push_back(std::abs(perm_product));
      delta_original += std::sqrt(std::abs(product));
      delta_permuted += std::sqrt(std::abs(perm_product));
    }
    std::sort(original.begin(), original.end());
    std::sort(permuted.begin(), permuted.end());
    for (std::size_t i = 0; i < original.size(); ++i)
      CHECK(std::abs(original[i] - permuted[i]) < 1e-10);
    CHECK(std::abs(delta_original - delta_permuted) < 1e-5);
  }
}

TEST_CASE("bounds_table reproduces the ratio curve endpoints") {
  const auto rows = network::bounds_table(2, 50);
  REQUIRE(rows.size() == 49);
  CHECK(rows[0].alpha == 2);
  CHECK(rows[0].ratio == doctest::Approx(1.414214).epsilon(1e-6));
  CHECK(rows[1].ratio == doctest::Approx(1.154701).epsilon(1e-6));
  CHECK(rows[2].ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(rows[48].m == 50);
  CHECK(std::abs(rows[48].ratio - 1.2533) < 0.02);
  for (const auto& row : rows) {
    const double recomputed =
        std::ldexp(1.0, row.m - 1) * std::sqrt(static_cast<double>(row.m)) /
        static_cast<double>(lhv::alpha_closed_form(row.m));
    CHECK(std::abs(row.ratio - recomputed) < 1e-9);
  }
  CHECK_THROWS_AS(network::bounds_table(1, 10), InvalidScenarioError);
  CHECK_THROWS_AS(network::bounds_table(3, 51), CapacityError);
}
