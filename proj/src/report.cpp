#include "nsk/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nsk {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json params_to_json(const FluidParams& p) {
  return Json{{"mu", p.mu},       {"nu", p.nu},
              {"kappa", p.kappa}, {"sigma", p.sigma},
              {"gamma_star", p.gamma_star}, {"rho_star", p.rho_star},
              {"dimension", p.dimension}};
}

std::string params_hash(const FluidParams& p) {
  return hash_hex(fnv1a(params_to_json(p).dump()));
}

Json make_envelope(const std::string& subcommand, const Json& config,
                   const FluidParams& p, std::uint64_t seed, Json payload) {
  Json env;
  env["schema_version"] = kSchemaVersion;
  env["subcommand"] = subcommand;
  env["config_hash"] = hash_hex(fnv1a(config.dump()));
  env["params_hash"] = params_hash(p);
  env["params"] = params_to_json(p);
  env["seed"] = seed;
  env["generated"] = "1970-01-01T00:00:00Z";
  env["payload"] = std::move(payload);
  return env;
}

Json det_scan_to_json(const DetScanReport& r) {
  Json j;
  j["min_ratio"] = r.min_ratio;
  j["argmin"] = {{"xi_prime", r.argmin.xi_prime},
                 {"lambda_re", r.argmin.lambda.real()},
                 {"lambda_im", r.argmin.lambda.imag()}};
  j["shell_lambda"] = r.shell_lambda;
  j["shell_min_ratio"] = r.shell_min_ratio;
  j["empirical_lambda0"] = r.empirical_lambda0;
  j["pass"] = r.pass;
  return j;
}

Json class_scan_to_json(const ClassScanReport& r) {
  Json j;
  j["symbol"] = r.symbol;
  j["power"] = r.spec.power;
  j["order"] = r.spec.order;
  j["class_type"] = r.spec.class_type;
  j["epsilon"] = r.epsilon;
  j["shell_radii"] = r.shell_radii;
  Json consts = Json::object();
  for (const auto& [key, vals] : r.shell_constants) consts[key] = vals;
  j["shell_constants"] = consts;
  j["worst_spread"] = r.worst_spread;
  j["pass"] = r.pass;
  return j;
}

Json asymptotics_to_json(const AsymptoticsReport& r) {
  return Json{{"lambda0", r.lambda0}, {"dev_t", r.dev_t}, {"dev_l", r.dev_l},
              {"dev_a", r.dev_a},     {"dev_M", r.dev_M}, {"pass", r.pass}};
}

Json mr_to_json(const MaximalRegularityReport& r) {
  return Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}};
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_json_atomic(const std::string& path, const Json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream ss;
  for (size_t i = 0; i < header.size(); ++i)
    ss << (i ? "," : "") << header[i];
  ss << "\n";
  ss.precision(17);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      ss << (i ? "," : "") << row[i];
    ss << "\n";
  }
  write_text_atomic(path, ss.str());
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string cache_path(const std::string& dir, const std::string& sub,
                       const std::string& hash) {
  return (fs::path(dir) / (sub + "-" + hash + ".json")).string();
}

}  // namespace

std::optional<Json> cache_lookup(const std::string& cache_dir, const std::string& subcommand,
                                 const std::string& config_hash) {
  const std::string path = cache_path(cache_dir, subcommand, config_hash);
  if (!fs::exists(path)) return std::nullopt;
  return Json::parse(read_text(path));
}

void cache_store(const std::string& cache_dir, const std::string& subcommand,
                 const std::string& config_hash, const Json& j) {
  write_json_atomic(cache_path(cache_dir, subcommand, config_hash), j);
}

Json merge_reports(const std::vector<Json>& envelopes) {
  if (envelopes.empty()) throw std::runtime_error("merge: no inputs");
  const std::string ph = envelopes.front().at("params_hash").get<std::string>();
  Json merged;
  merged["schema_version"] = kSchemaVersion;
  merged["subcommand"] = "report";
  merged["params_hash"] = ph;
  merged["params"] = envelopes.front().at("params");
  merged["generated"] = "1970-01-01T00:00:00Z";
  Json items = Json::array();
  for (const auto& env : envelopes) {
    if (env.at("schema_version").get<int>() != kSchemaVersion)
      throw std::runtime_error("merge: schema version mismatch");
    if (env.at("params_hash").get<std::string>() != ph)
      throw std::runtime_error("merge: refusing to combine reports with different params_hash");
    items.push_back(Json{{"subcommand", env.at("subcommand")},
                         {"config_hash", env.at("config_hash")},
                         {"payload", env.at("payload")}});
  }
  merged["items"] = std::move(items);
  return merged;
}

}  // namespace nsk
