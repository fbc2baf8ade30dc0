#include "starnet/report_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "starnet/errors.hpp"
#include "starnet/util.hpp"
#include "starnet/version.hpp"

namespace starnet::io {

using util::format_sig9;

json to_json(const encoding::EncodingTable& table) {
  return json{{"m", table.m()}, {"rows", table.rows()}};
}

json to_json(const lhv::ClassicalBoundReport& report) {
  json j{{"type", "classical-bound"},
         {"m", report.m},
         {"alpha_closed", report.alpha_closed},
         {"alpha_enumerated", report.alpha_enumerated},
         {"agree", report.agree}};
  if (report.alpha_strategy_max) j["alpha_strategy_max"] = *report.alpha_strategy_max;
  return j;
}

json to_json(const network::EvaluationReport& report) {
  return json{{"type", "evaluation"},
              {"n", report.n},
              {"m", report.m},
              {"copies", report.copies},
              {"per_i_values", report.per_i_values},
              {"delta", report.delta},
              {"classical_bound", report.classical_bound},
              {"quantum_optimum", report.quantum_optimum},
              {"ratio", report.ratio},
              {"violated", report.violated}};
}

json to_json(const sos::SosReport& report) {
  return json{{"type", "sos"},
              {"n", report.n},
              {"m", report.m},
              {"omegas", report.omegas},
              {"gamma", report.gamma},
              {"delta_q", report.delta_q},
              {"slack_ok", report.slack_ok},
              {"tight", report.tight},
              {"extended_regime", report.extended_regime}};
}

json to_json(const optimize::SweepResult& result) {
  json grid = json::array();
  for (const auto& point : result.grid)
    grid.push_back(json{{"v", point.v}, {"delta", point.delta}, {"violated", point.violated}});
  json j{{"type", "sweep"}, {"grid", grid}, {"alpha", result.alpha}};
  j["critical_v"] = result.critical_v ? json(*result.critical_v) : json(nullptr);
  return j;
}

json to_json(const optimize::SeesawState& state) {
  return json{{"type", "seesaw"},
              {"delta", state.delta},
              {"iterations", state.iterations},
              {"converged", state.converged},
              {"seed", state.seed},
              {"zero_eigenvalue_projections", state.zero_eigenvalue_projections},
              {"trajectory", state.trajectory}};
}

json to_json(const optimize::ActivationResult& result) {
  return json{{"type", "activation"},
              {"n", result.n},
              {"m", result.m},
              {"v", result.v},
              {"alpha", result.alpha},
              {"delta_single", result.delta_single},
              {"delta_multi", result.delta_multi},
              {"violated_single", result.violated_single},
              {"violated_multi", result.violated_multi}};
}

json to_json(const std::vector<network::BoundsRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows)
    arr.push_back(
        json{{"m", row.m}, {"alpha", row.alpha}, {"qopt", row.qopt}, {"ratio", row.ratio}});
  return json{{"type", "bounds-table"}, {"rows", arr}};
}

json matrix_to_json(const qcore::Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix serialization expects a square matrix");
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return json{{"dim", m.rows()}, {"entries", entries}};
}

qcore::Matrix matrix_from_json(const json& j) {
  const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != dim * dim)
    throw DimensionError("matrix entry count does not match dim^2");
  qcore::Matrix m(dim, dim);
  Eigen::Index index = 0;
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c, ++index)
      m(r, c) = qcore::Complex{entries[static_cast<std::size_t>(index)][0].get<double>(),
                               entries[static_cast<std::size_t>(index)][1].get<double>()};
  return m;
}

network::EvaluationReport evaluation_from_json(const json& j) {
  if (j.value("type", "") != "evaluation") throw DomainError("not an evaluation report");
  network::EvaluationReport report;
  report.n = j.at("n").get<int>();
  report.m = j.at("m").get<int>();
  report.copies = j.at("copies").get<int>();
  report.per_i_values = j.at("per_i_values").get<std::vector<double>>();
  report.delta = j.at("delta").get<double>();
  report.classical_bound = j.at("classical_bound").get<double>();
  report.quantum_optimum = j.at("quantum_optimum").get<double>();
  report.ratio = j.at("ratio").get<double>();
  report.violated = j.at("violated").get<bool>();
  return report;
}

optimize::SweepResult sweep_from_json(const json& j) {
  if (j.value("type", "") != "sweep") throw DomainError("not a sweep report");
  optimize::SweepResult result;
  result.alpha = j.at("alpha").get<double>();
  for (const auto& p : j.at("grid"))
    result.grid.push_back(
        {p.at("v").get<double>(), p.at("delta").get<double>(), p.at("violated").get<bool>()});
  if (!j.at("critical_v").is_null()) result.critical_v = j.at("critical_v").get<double>();
  return result;
}

std::string evaluation_csv(const network::EvaluationReport& report) {
  std::ostringstream out;
  out << "n,m,copies,i,absJ,delta,alpha,qopt,ratio,violated\n";
  for (std::size_t i = 0; i < report.per_i_values.size(); ++i) {
    out << report.n << ',' << report.m << ',' << report.copies << ',' << i + 1 << ','
        << format_sig9(report.per_i_values[i]) << ',' << format_sig9(report.delta) << ','
        << format_sig9(report.classical_bound) << ',' << format_sig9(report.quantum_optimum) << ','
        << format_sig9(report.ratio) << ',' << (report.violated ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string sweep_csv(const optimize::SweepResult& result) {
  std::ostringstream out;
  out << "v,delta,alpha,violated\n";
  for (const auto& point : result.grid) {
    out << format_sig9(point.v) << ',' << format_sig9(point.delta) << ','
        << format_sig9(result.alpha) << ',' << (point.violated ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string bounds_csv(const std::vector<network::BoundsRow>& rows) {
  std::ostringstream out;
  out << "m,alpha,qopt,ratio\n";
  for (const auto& row : rows) {
    out << row.m << ',' << row.alpha << ',' << format_sig9(row.qopt) << ','
        << format_sig9(row.ratio) << '\n';
  }
  return out.str();
}

json to_json(const RunManifest& manifest) {
  return json{{"command", manifest.command}, {"argv", manifest.argv},
              {"version", manifest.version}, {"seed", manifest.seed},
              {"timestamp", manifest.timestamp}, {"outputs", manifest.outputs}};
}

namespace {
std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}
}  // namespace

void write_with_manifest(const std::string& path, const std::string& content,
                         RunManifest manifest) {
  write_file(path, content);
  manifest.version = kVersion;
  manifest.timestamp = utc_now();
  manifest.outputs.push_back(path);
  write_file(path + ".manifest.json", to_json(manifest).dump(2) + "\n");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace starnet::io
