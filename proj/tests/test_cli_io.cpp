#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "nsk/report.hpp"

using namespace nsk;
namespace fs = std::filesystem;

namespace {
FluidParams set_a() { return {1.0, 3.0, 1.0, 1.0, 0.0, 1.0, 2}; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nsk-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
};
}  // namespace

TEST_CASE("hashes are deterministic and content sensitive") {
  CHECK(fnv1a("abc") == fnv1a("abc"));
  CHECK(fnv1a("abc") != fnv1a("abd"));
  CHECK(hash_hex(fnv1a("abc")).size() == 16);

  auto p = set_a();
  const std::string h1 = params_hash(p);
  CHECK(h1 == params_hash(p));
  p.sigma = 2.0;
  CHECK(h1 != params_hash(p));
}

TEST_CASE("report envelope carries schema, hashes, and a fixed timestamp") {
  auto p = set_a();
  Json cfg = {{"epsilon", 0.6}};
  Json payload = {{"pass", true}};
  auto env = make_envelope("verify-symbols", cfg, p, 7, payload);
  CHECK(env["schema_version"] == kSchemaVersion);
  CHECK(env["subcommand"] == "verify-symbols");
  CHECK(env["config_hash"] == hash_hex(fnv1a(cfg.dump())));
  CHECK(env["params_hash"] == params_hash(p));
  CHECK(env["seed"] == 7);
  CHECK(env["generated"] == "1970-01-01T00:00:00Z");
  CHECK(env["payload"]["pass"] == true);
  // Identical inputs serialize identically.
  CHECK(env.dump() == make_envelope("verify-symbols", cfg, p, 7, payload).dump());
}

TEST_CASE("atomic text and JSON writes round trip") {
  TempDir tmp;
  const auto file = (tmp.path / "sub" / "out.json").string();
  write_json_atomic(file, Json{{"k", 1.25}});
  auto back = Json::parse(read_text(file));
  CHECK(back["k"] == 1.25);
  // Overwrite leaves no temp litter.
  write_text_atomic(file, "plain\n");
  CHECK(read_text(file) == "plain\n");
  size_t entries = 0;
  for ([[maybe_unused]] auto& e : fs::directory_iterator(tmp.path / "sub")) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS(read_text((tmp.path / "missing.txt").string()));
}

TEST_CASE("CSV output preserves full precision") {
  TempDir tmp;
  const auto file = (tmp.path / "rows.csv").string();
  const double v = 0.1234567890123456789;
  write_csv_atomic(file, {"a", "b"}, {{1.0, v}, {2.0, -3.5}});
  const std::string text = read_text(file);
  CHECK(text.rfind("a,b\n", 0) == 0);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  const double parsed = std::stod(line.substr(line.find(',') + 1));
  CHECK(parsed == v);
}

TEST_CASE("cache stores and retrieves by subcommand and config hash") {
  TempDir tmp;
  const std::string dir = tmp.path.string();
  CHECK(!cache_lookup(dir, "mode", "deadbeef").has_value());
  cache_store(dir, "mode", "deadbeef", Json{{"x", 42}});
  auto hit = cache_lookup(dir, "mode", "deadbeef");
  REQUIRE(hit.has_value());
  CHECK((*hit)["x"] == 42);
  // A different subcommand or hash misses.
  CHECK(!cache_lookup(dir, "field", "deadbeef").has_value());
  CHECK(!cache_lookup(dir, "mode", "deadbeff").has_value());
}

TEST_CASE("merging reports enforces a consistent parameter identity") {
  auto p = set_a();
  Json cfg = {{"epsilon", 0.6}};
  auto e1 = make_envelope("mode", cfg, p, 1, Json{{"pass", true}});
  auto e2 = make_envelope("scan-det", cfg, p, 1, Json{{"pass", true}});
  auto merged = merge_reports({e1, e2});
  CHECK(merged["schema_version"] == kSchemaVersion);
  CHECK(merged["params_hash"] == params_hash(p));
  CHECK(merged["items"].size() == 2);

  FluidParams q = p;
  q.kappa = 3.0;
  auto e3 = make_envelope("mode", cfg, q, 1, Json{{"pass", true}});
  CHECK_THROWS_AS(merge_reports({e1, e3}), std::runtime_error);
  CHECK_THROWS_AS(merge_reports({}), std::runtime_error);
}

TEST_CASE("parameter JSON round trip") {
  auto p = set_a();
  auto j = params_to_json(p);
  auto q = params_from_json_text(j.dump());
  CHECK(q.mu == p.mu);
  CHECK(q.nu == p.nu);
  CHECK(q.kappa == p.kappa);
  CHECK(q.sigma == p.sigma);
  CHECK(q.dimension == p.dimension);
  CHECK(params_hash(q) == params_hash(p));
}
