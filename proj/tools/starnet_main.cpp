// starnet: generalized star-network inequality toolkit.
//
// Subcommands cover the classical bounds, the optimal quantum strategy and
// its certificate, noise sweeps, constrained-dimension seesaw searches, and
// report export. Exit codes: 0 pass, 2 check failure, 3 capacity guard,
// 4 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "starnet/encoding.hpp"
#include "starnet/errors.hpp"
#include "starnet/lhv.hpp"
#include "starnet/network.hpp"
#include "starnet/optimize.hpp"
#include "starnet/qcore.hpp"
#include "starnet/report_io.hpp"
#include "starnet/sos.hpp"
#include "starnet/util.hpp"
#include "starnet/version.hpp"

namespace {

using namespace starnet;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitUsage = 4;

struct CommandContext {
  std::vector<std::string> argv;
  int threads = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "";
};

void apply_threads(int flag_threads) {
  int threads = flag_threads;
  if (const char* env = std::getenv("STARNET_THREADS"); env != nullptr && *env != '\0') {
    threads = std::atoi(env);
  }
  util::set_thread_count(threads < 0 ? 0 : threads);
}

io::RunManifest make_manifest(const CommandContext& ctx, const std::string& command) {
  io::RunManifest manifest;
  manifest.command = command;
  manifest.argv = ctx.argv;
  manifest.seed = ctx.seed;
  return manifest;
}

// Emits to --out (with manifest) or stdout.
void emit(const CommandContext& ctx, const std::string& command, const std::string& content) {
  if (ctx.out.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    io::write_with_manifest(ctx.out, content, make_manifest(ctx, command));
    std::cout << "wrote " << ctx.out << '\n';
  }
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const CapacityError& e) {
    std::cerr << "capacity guard: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const InvalidScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IndexError& e) {
    std::cerr << "index error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric check failed: " << e.what() << '\n';
    return kExitCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}

std::string pick_format(const CommandContext& ctx, const std::string& fallback) {
  return ctx.format.empty() ? fallback : ctx.format;
}

int cmd_bounds(const CommandContext& ctx, int m_min, int m_max) {
  const auto rows = network::bounds_table(m_min, m_max);
  const std::string format = pick_format(ctx, "csv");
  if (format == "csv") emit(ctx, "bounds", io::bounds_csv(rows));
  else if (format == "json") emit(ctx, "bounds", io::to_json(rows).dump(2) + "\n");
  else throw DomainError("format must be csv or json");
  return kExitPass;
}

int cmd_quantum(const CommandContext& ctx, int n, int m, std::optional<int> copies) {
  const auto cfg = copies ? make_config(n, m, *copies) : make_config(n, m);
  const auto table = encoding::generate_table(m);
  const auto report = evaluate_quantum(cfg, table, network::build_optimal_strategy(cfg));
  std::cout << "delta " << util::format_sig9(report.delta) << "  alpha "
            << util::format_sig9(report.classical_bound) << "  qopt "
            << util::format_sig9(report.quantum_optimum) << "  violated "
            << (report.violated ? "true" : "false") << '\n';
  const std::string format = pick_format(ctx, "json");
  if (format == "csv") emit(ctx, "quantum", io::evaluation_csv(report));
  else if (format == "json") emit(ctx, "quantum", io::to_json(report).dump(2) + "\n");
  else throw DomainError("format must be csv or json");
  return kExitPass;
}

int cmd_lhv_brute(const CommandContext& ctx, int n, int m, std::int64_t max_states) {
  const auto cfg = make_config(n, m);
  const auto report = lhv::exhaustive_strategy_max(cfg, max_states);
  std::cout << "alpha closed " << report.alpha_closed << "  enumerated "
            << report.alpha_enumerated << "  strategy max "
            << (report.alpha_strategy_max ? std::to_string(*report.alpha_strategy_max) : "-")
            << "  agree " << (report.agree ? "true" : "false") << '\n';
  emit(ctx, "lhv-brute", io::to_json(report).dump(2) + "\n");
  return report.agree ? kExitPass : kExitCheckFailure;
}

int cmd_sos_check(const CommandContext& ctx, int n, int m, int random_count) {
  const auto cfg = make_config(n, m);
  const auto table = encoding::generate_table(m);
  const auto report = sos::certificate(cfg, table, network::build_optimal_strategy(cfg));
  std::cout << "gamma " << util::format_sig9(report.gamma) << "  tight "
            << (report.tight ? "true" : "false") << "  slack_ok "
            << (report.slack_ok ? "true" : "false") << '\n';

  io::json bundle = io::to_json(report);
  bool randomized_ok = true;
  if (random_count > 0) {
    std::mt19937_64 rng(ctx.seed);
    const double limit = std::sqrt(static_cast<double>(m)) + 1e-10;
    double min_gamma = report.gamma;
    double max_omega = 0.0;
    for (int trial = 0; trial < random_count; ++trial) {
      const auto sampled = network::random_anticommuting_strategy(cfg, rng);
      const auto random_report = sos::certificate(cfg, table, sampled);
      min_gamma = std::min(min_gamma, random_report.gamma);
      for (const auto& row : random_report.omegas)
        for (double w : row) max_omega = std::max(max_omega, w);
    }
    randomized_ok = min_gamma >= sos::kSlackTol && max_omega <= limit;
    std::cout << "random strategies " << random_count << "  min gamma "
              << util::format_sig9(min_gamma) << "  max omega " << util::format_sig9(max_omega)
              << "  bound sqrt(m)+1e-10 " << (randomized_ok ? "held" : "violated") << '\n';
    bundle["random"] = io::json{{"count", random_count},
                                {"min_gamma", min_gamma},
                                {"max_omega", max_omega},
                                {"seed", ctx.seed}};
  }
  emit(ctx, "sos-check", bundle.dump(2) + "\n");
  return (report.tight && report.slack_ok && randomized_ok) ? kExitPass : kExitCheckFailure;
}

int cmd_verify(const CommandContext& ctx, int n, int m) {
  const auto cfg = make_config(n, m);
  const auto table = encoding::generate_table(m);
  bool all_pass = true;
  std::string first_failure;
  io::json checks = io::json::array();

  auto record = [&](const std::string& name, bool pass, const std::string& detail) {
    std::cout << "check " << name << ": " << (pass ? "PASS" : "FAIL") << " (" << detail << ")\n";
    checks.push_back(io::json{{"name", name}, {"pass", pass}, {"detail", detail}});
    if (!pass && all_pass) first_failure = name;
    all_pass = all_pass && pass;
  };

  const auto strategy = network::build_optimal_strategy(cfg);
  const auto evaluation = evaluate_quantum(cfg, table, strategy);
  const double target = network::quantum_optimum_formula(n, m);
  record("optimal-delta", std::abs(evaluation.delta - target) <= 1e-8,
         "delta " + util::format_sig9(evaluation.delta) + " target " + util::format_sig9(target));

  const auto certificate = sos::certificate(cfg, table, strategy);
  double omega_error = 0.0;
  for (const auto& row : certificate.omegas)
    for (double w : row)
      omega_error = std::max(omega_error, std::abs(w - std::sqrt(static_cast<double>(m))));
  record("sos-certificate",
         certificate.tight && certificate.slack_ok && omega_error <= 1e-10,
         "gamma " + util::format_sig9(certificate.gamma) + " max |omega - sqrt(m)| " +
             util::format_sig9(omega_error));

  io::json classical;
  if (n * m <= 24) {
    const auto bound = lhv::exhaustive_strategy_max(cfg);
    record("classical-bound", bound.agree,
           "alpha " + std::to_string(bound.alpha_closed) + " strategy max " +
               (bound.alpha_strategy_max ? std::to_string(*bound.alpha_strategy_max) : "-"));
    classical = io::to_json(bound);
  } else {
    const bool enum_ok = m <= 20 && lhv::alpha_by_enumeration(table) == lhv::alpha_closed_form(m);
    record("classical-bound", enum_ok, "exhaustive search skipped (2^{nm} too large)");
    classical = io::json{{"type", "classical-bound"},
                         {"m", m},
                         {"alpha_closed", lhv::alpha_closed_form(m)},
                         {"exhaustive", "skipped"}};
  }

  io::json bundle{{"type", "verify"},     {"n", n},
                  {"m", m},               {"checks", checks},
                  {"evaluation", io::to_json(evaluation)},
                  {"certificate", io::to_json(certificate)},
                  {"classical", classical}};
  emit(ctx, "verify", bundle.dump(2) + "\n");
  if (!all_pass) std::cerr << "failed check: " << first_failure << '\n';
  return all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_sweep(const CommandContext& ctx, int n, int m, std::optional<int> copies, double v_min,
              double v_max, int steps, int seeds, int max_iters) {
  if (steps < 2) throw DomainError("sweep needs at least 2 steps");
  const int full_width = m / 2;
  const int width = copies.value_or(full_width);
  const auto cfg = make_config(n, m, width);
  const auto table = encoding::generate_table(m);

  optimize::StrategyBuilder builder;
  if (width == full_width) {
    builder = optimize::optimal_werner_builder(cfg);
  } else {
    // Narrow links cannot carry the anticommuting construction; source the
    // observables from a clean-state seesaw instead.
    optimize::SeesawOptions options;
    options.max_iters = max_iters;
    const auto best = optimize::seesaw_best_of(cfg, ctx.seed, seeds, options);
    builder = optimize::werner_builder_from(cfg, optimize::to_strategy(cfg, best));
  }

  std::vector<double> grid;
  for (int s = 0; s < steps; ++s)
    grid.push_back(v_min + (v_max - v_min) * static_cast<double>(s) / (steps - 1));
  const auto sweep = optimize::visibility_sweep(cfg, table, builder, grid);

  std::cout << "critical_v "
            << (sweep.critical_v ? util::format_sig9(*sweep.critical_v) : std::string("-")) << '\n';
  const std::string format = pick_format(ctx, "csv");
  if (format == "csv") emit(ctx, "sweep", io::sweep_csv(sweep));
  else if (format == "json") emit(ctx, "sweep", io::to_json(sweep).dump(2) + "\n");
  else throw DomainError("format must be csv or json");
  return kExitPass;
}

int cmd_seesaw(const CommandContext& ctx, int n, int m, int copies, int seeds, int max_iters,
               double visibility) {
  const auto cfg = make_config(n, m, copies);
  optimize::SeesawOptions options;
  options.max_iters = max_iters;
  options.visibility = visibility;
  const auto best = optimize::seesaw_best_of(cfg, ctx.seed, seeds, options);
  const double alpha = static_cast<double>(lhv::alpha_closed_form(m));
  std::cout << "best delta " << util::format_sig9(best.delta) << "  alpha "
            << util::format_sig9(alpha) << "  violated "
            << (best.delta > alpha + network::kViolationTol ? "true" : "false") << "  seed "
            << best.seed << "  iterations " << best.iterations << "  converged "
            << (best.converged ? "true" : "false") << '\n';
  if (best.zero_eigenvalue_projections > 0)
    std::cerr << "warning: " << best.zero_eigenvalue_projections
              << " zero eigenvalues mapped to +1 during projections\n";
  emit(ctx, "seesaw", io::to_json(best).dump(2) + "\n");
  return kExitPass;
}

int cmd_activate(const CommandContext& ctx, int n, int m, double v, int seeds, int max_iters) {
  optimize::SeesawOptions options;
  options.max_iters = max_iters;
  const auto result = optimize::activation_experiment(n, m, v, ctx.seed, seeds, options);
  std::cout << "single-copy delta " << util::format_sig9(result.delta_single) << " violated "
            << (result.violated_single ? "true" : "false") << '\n';
  std::cout << "multi-copy  delta " << util::format_sig9(result.delta_multi) << " violated "
            << (result.violated_multi ? "true" : "false") << '\n';
  std::cout << "activation "
            << (!result.violated_single && result.violated_multi ? "true" : "false") << '\n';
  emit(ctx, "activate", io::to_json(result).dump(2) + "\n");
  return kExitPass;
}

int cmd_export(const CommandContext& ctx, const std::string& input) {
  const io::json parsed = io::json::parse(io::read_file(input));
  const std::string type = parsed.value("type", "");
  const std::string format = pick_format(ctx, "csv");
  if (format != "csv" && format != "json") throw DomainError("format must be csv or json");

  std::string content;
  if (format == "json") {
    content = parsed.dump(2) + "\n";
  } else if (type == "evaluation") {
    content = io::evaluation_csv(io::evaluation_from_json(parsed));
  } else if (type == "sweep") {
    content = io::sweep_csv(io::sweep_from_json(parsed));
  } else if (type == "bounds-table") {
    std::vector<network::BoundsRow> rows;
    for (const auto& r : parsed.at("rows"))
      rows.push_back(network::BoundsRow{r.at("m").get<int>(), r.at("alpha").get<std::int64_t>(),
                                        r.at("qopt").get<double>(), r.at("ratio").get<double>()});
    content = io::bounds_csv(rows);
  } else {
    throw DomainError("no CSV layout for report type '" + type + "'");
  }
  emit(ctx, "export", content);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized star-network inequality toolkit"};
  app.set_version_flag("--version", starnet::kVersion);
  app.require_subcommand(1);

  CommandContext ctx;
  for (int a = 0; a < argc; ++a) ctx.argv.emplace_back(argv[a]);

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware); STARNET_THREADS overrides");

  int n = 2, m = 2;
  std::optional<int> copies;
  int m_min = 3, m_max = 50;
  std::int64_t max_states = lhv::kDefaultMaxStates;
  int random_count = 0;
  double v_min = 0.0, v_max = 1.0, visibility = 1.0, v = 1.0;
  int steps = 21, seeds = 20, max_iters = 500;
  std::string input;

  int exit_code = kExitPass;
  auto guard = [&](const std::function<int()>& body) {
    apply_threads(threads);
    exit_code = run_guarded(body);
  };

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", ctx.seed, "random seed");
    sub->add_option("--out", ctx.out, "output file (manifest written alongside)");
    sub->add_option("--format", ctx.format, "csv or json");
  };

  auto* bounds = app.add_subcommand("bounds", "classical bound, optimum and ratio per m");
  bounds->add_option("--m-min", m_min, "first m")->capture_default_str();
  bounds->add_option("--m-max", m_max, "last m")->capture_default_str();
  add_common(bounds);
  bounds->callback([&] { guard([&] { return cmd_bounds(ctx, m_min, m_max); }); });

  auto* verify = app.add_subcommand("verify", "optimal delta, certificate and classical bound");
  verify->add_option("--n", n, "edge parties")->required();
  verify->add_option("--m", m, "settings per edge party")->required();
  add_common(verify);
  verify->callback([&] { guard([&] { return cmd_verify(ctx, n, m); }); });

  auto* quantum = app.add_subcommand("quantum", "evaluate the optimal quantum strategy");
  quantum->add_option("--n", n, "edge parties")->required();
  quantum->add_option("--m", m, "settings per edge party")->required();
  quantum->add_option("--copies", copies, "Bell copies per link (default floor(m/2))");
  add_common(quantum);
  quantum->callback([&] { guard([&] { return cmd_quantum(ctx, n, m, copies); }); });

  auto* lhv_brute = app.add_subcommand("lhv-brute", "exhaustive deterministic-strategy maximum");
  lhv_brute->add_option("--n", n, "edge parties")->required();
  lhv_brute->add_option("--m", m, "settings per edge party")->required();
  lhv_brute->add_option("--max-states", max_states, "enumeration guard")->capture_default_str();
  add_common(lhv_brute);
  lhv_brute->callback([&] { guard([&] { return cmd_lhv_brute(ctx, n, m, max_states); }); });

  auto* sos_check = app.add_subcommand("sos-check", "certificate at the optimum and random probes");
  sos_check->add_option("--n", n, "edge parties")->required();
  sos_check->add_option("--m", m, "settings per edge party")->required();
  sos_check->add_option("--random", random_count, "random strategies to probe")
      ->capture_default_str();
  add_common(sos_check);
  sos_check->callback([&] { guard([&] { return cmd_sos_check(ctx, n, m, random_count); }); });

  auto* sweep = app.add_subcommand("sweep", "delta versus visibility with critical point");
  sweep->add_option("--n", n, "edge parties")->required();
  sweep->add_option("--m", m, "settings per edge party")->required();
  sweep->add_option("--copies", copies, "Bell copies per link (default floor(m/2))");
  sweep->add_option("--v-min", v_min, "grid start")->capture_default_str();
  sweep->add_option("--v-max", v_max, "grid end")->capture_default_str();
  sweep->add_option("--steps", steps, "grid points")->capture_default_str();
  sweep->add_option("--seeds", seeds, "seesaw restarts for narrow links")->capture_default_str();
  sweep->add_option("--max-iters", max_iters, "seesaw iteration cap")->capture_default_str();
  add_common(sweep);
  sweep->callback([&] {
    guard([&] { return cmd_sweep(ctx, n, m, copies, v_min, v_max, steps, seeds, max_iters); });
  });

  auto* seesaw = app.add_subcommand("seesaw", "alternating optimization at fixed link width");
  seesaw->add_option("--n", n, "edge parties")->required();
  seesaw->add_option("--m", m, "settings per edge party")->required();
  int seesaw_copies = 1;
  seesaw->add_option("--copies", seesaw_copies, "Bell copies per link")->required();
  seesaw->add_option("--seeds", seeds, "restarts")->capture_default_str();
  seesaw->add_option("--max-iters", max_iters, "iteration cap")->capture_default_str();
  seesaw->add_option("--visibility", visibility, "per-copy visibility")->capture_default_str();
  add_common(seesaw);
  seesaw->callback([&] {
    guard([&] { return cmd_seesaw(ctx, n, m, seesaw_copies, seeds, max_iters, visibility); });
  });

  auto* activate = app.add_subcommand("activate", "single-copy versus multi-copy violation");
  activate->add_option("--m", m, "settings per edge party")->required();
  activate->add_option("--v", v, "per-copy visibility")->required();
  activate->add_option("--n", n, "edge parties")->capture_default_str();
  activate->add_option("--seeds", seeds, "restarts")->capture_default_str();
  activate->add_option("--max-iters", max_iters, "iteration cap")->capture_default_str();
  add_common(activate);
  activate->callback(
      [&] { guard([&] { return cmd_activate(ctx, n, m, v, seeds, max_iters); }); });

  auto* exporter = app.add_subcommand("export", "convert a stored JSON report");
  exporter->add_option("--input", input, "report JSON file")->required();
  add_common(exporter);
  exporter->callback([&] { guard([&] { return cmd_export(ctx, input); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return exit_code;
}
