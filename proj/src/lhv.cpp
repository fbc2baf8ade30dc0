#include "starnet/lhv.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>

#include "starnet/errors.hpp"
#include "starnet/util.hpp"

namespace starnet::lhv {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int j = 1; j <= k; ++j) {
    acc = acc * static_cast<unsigned>(n - k + j) / static_cast<unsigned>(j);
  }
  return static_cast<std::int64_t>(acc);
}

std::int64_t alpha_closed_form(int m) {
  if (m < 2) throw InvalidScenarioError("alpha_m defined for m >= 2");
  if (m > 60) throw CapacityError("alpha_m exceeds 64-bit range for m > 60");
  std::int64_t sum = 0;
  for (int j = 0; j <= m / 2; ++j) {
    sum += binomial(m, j) * (m - 2 * j);
  }
  return sum;
}

std::int64_t alpha_by_enumeration(const encoding::EncodingTable& table) {
  const int m = table.m();
  std::int64_t sum = 0;
  for (int i = 1; i <= table.size(); ++i) {
    sum += std::llabs(static_cast<long long>(m - 2 * hamming_weight(table, i)));
  }
  return sum;
}

namespace {

void check_strategy_dims(const ScenarioConfig& cfg, const DeterministicStrategy& s) {
  const std::size_t n = static_cast<std::size_t>(cfg.n);
  const std::size_t m = static_cast<std::size_t>(cfg.m);
  const std::size_t terms = static_cast<std::size_t>(hub_setting_count(cfg));
  if (s.edge_assignments.size() != n)
    throw DimensionError("strategy has wrong number of edge parties");
  for (const auto& a : s.edge_assignments) {
    if (a.size() != m) throw DimensionError("edge assignment has wrong number of settings");
    for (int v : a)
      if (v != 1 && v != -1) throw DimensionError("edge assignment entries must be +1 or -1");
  }
  if (s.hub_assignments.size() != terms)
    throw DimensionError("hub assignment has wrong number of terms");
  for (int v : s.hub_assignments)
    if (v != 1 && v != -1) throw DimensionError("hub assignment entries must be +1 or -1");
}

}  // namespace

double evaluate_strategy(const ScenarioConfig& cfg, const encoding::EncodingTable& table,
                         const DeterministicStrategy& strategy) {
  validate(cfg);
  if (table.m() != cfg.m) throw DimensionError("table does not match scenario m");
  check_strategy_dims(cfg, strategy);

  double total = 0.0;
  for (int i = 1; i <= table.size(); ++i) {
    const encoding::SignVector signs = sign_vector(table, i);
    double product = static_cast<double>(strategy.hub_assignments[static_cast<std::size_t>(i - 1)]);
    for (int k = 0; k < cfg.n; ++k) {
      int column = 0;
      for (int x = 0; x < cfg.m; ++x) {
        column += signs[static_cast<std::size_t>(x)] *
                  strategy.edge_assignments[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)];
      }
      product *= static_cast<double>(column);
    }
    total += std::pow(std::abs(product), 1.0 / cfg.n);
  }
  return total;
}

ClassicalBoundReport exhaustive_strategy_max(const ScenarioConfig& cfg, std::int64_t max_states) {
  validate(cfg);
  const int n = cfg.n;
  const int m = cfg.m;
  if (n * m >= 62) throw CapacityError("2^{nm} enumeration out of integer range");
  const std::int64_t states = std::int64_t{1} << (n * m);
  if (states > max_states) throw CapacityError("2^{nm} exceeds the enumeration guard");

  const encoding::EncodingTable table = encoding::generate_table(m);
  const int terms = table.size();
  const int assignments = 1 << m;

  std::vector<encoding::SignVector> signs;
  signs.reserve(static_cast<std::size_t>(terms));
  for (int i = 1; i <= terms; ++i) signs.push_back(sign_vector(table, i));

  // |column sum| per single-party assignment, shared by all parties.
  std::vector<std::int8_t> columns(static_cast<std::size_t>(assignments) *
                                   static_cast<std::size_t>(terms));
  for (int a = 0; a < assignments; ++a) {
    for (int i = 0; i < terms; ++i) {
      int column = 0;
      for (int x = 0; x < m; ++x) {
        const int value = ((a >> x) & 1) ? -1 : +1;
        column += signs[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] * value;
      }
      columns[static_cast<std::size_t>(a) * static_cast<std::size_t>(terms) +
              static_cast<std::size_t>(i)] = static_cast<std::int8_t>(std::abs(column));
    }
  }

  const double root = 1.0 / n;
  double best = 0.0;
  std::mutex merge;
  util::parallel_for(0, assignments, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> digits(static_cast<std::size_t>(n - 1), 0);
    double local_best = 0.0;
    for (std::int64_t first = lo; first < hi; ++first) {
      std::fill(digits.begin(), digits.end(), 0);
      while (true) {
        double value = 0.0;
        for (int i = 0; i < terms; ++i) {
          std::int64_t product =
              columns[static_cast<std::size_t>(first) * static_cast<std::size_t>(terms) +
                      static_cast<std::size_t>(i)];
          for (int k = 0; k < n - 1; ++k) {
            product *= columns[static_cast<std::size_t>(digits[static_cast<std::size_t>(k)]) *
                                   static_cast<std::size_t>(terms) +
                               static_cast<std::size_t>(i)];
          }
          value += std::pow(static_cast<double>(product), root);
        }
        if (value > local_best) local_best = value;

        int pos = 0;
        while (pos < n - 1) {
          if (++digits[static_cast<std::size_t>(pos)] < assignments) break;
          digits[static_cast<std::size_t>(pos)] = 0;
          ++pos;
        }
        if (pos == n - 1) break;
      }
    }
    std::lock_guard<std::mutex> lock(merge);
    if (local_best > best) best = local_best;
  });

  ClassicalBoundReport report;
  report.m = m;
  report.alpha_closed = alpha_closed_form(m);
  report.alpha_enumerated = alpha_by_enumeration(table);
  const std::int64_t rounded = std::llround(best);
  report.alpha_strategy_max = rounded;
  report.agree = report.alpha_closed == report.alpha_enumerated &&
                 report.alpha_closed == rounded && std::abs(best - rounded) < 1e-6;
  return report;
}

}  // namespace starnet::lhv
