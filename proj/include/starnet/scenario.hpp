#pragma once

#include "starnet/errors.hpp"

namespace starnet {

// One member of the inequality family: n edge parties with m binary
// settings each, the hub with 2^{m-1} settings, and per-link state width.
struct ScenarioConfig {
  int n = 2;               // edge parties, >= 2
  int m = 2;               // settings per edge party, >= 2
  int copies_per_link = 1; // Bell-pair copies per source, >= 1
};

inline void validate(const ScenarioConfig& cfg) {
  if (cfg.n < 2) throw InvalidScenarioError("scenario requires n >= 2 edge parties");
  if (cfg.m < 2) throw InvalidScenarioError("scenario requires m >= 2 settings per party");
  if (cfg.copies_per_link < 1) throw InvalidScenarioError("copies_per_link must be >= 1");
}

// Default width floor(m/2) carries m anticommuting observables per party.
inline ScenarioConfig make_config(int n, int m) {
  ScenarioConfig cfg{n, m, m / 2 < 1 ? 1 : m / 2};
  validate(cfg);
  return cfg;
}

inline ScenarioConfig make_config(int n, int m, int copies_per_link) {
  ScenarioConfig cfg{n, m, copies_per_link};
  validate(cfg);
  return cfg;
}

inline int hub_setting_count(const ScenarioConfig& cfg) { return 1 << (cfg.m - 1); }

}  // namespace starnet
