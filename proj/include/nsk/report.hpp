#pragma once
// JSON/CSV emission for the scan and solver reports: stable schema, content
// hashes for config identity, atomic writes, and an on-disk result cache.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsk/evolution.hpp"
#include "nsk/verifier.hpp"

namespace nsk {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a(const std::string& s);
std::string hash_hex(std::uint64_t h);

Json params_to_json(const FluidParams& p);
std::string params_hash(const FluidParams& p);

// Common wrapper: {schema_version, subcommand, config_hash, params_hash,
// seed, generated, payload}. The timestamp is fixed so identical inputs
// produce byte-identical reports.
Json make_envelope(const std::string& subcommand, const Json& config,
                   const FluidParams& p, std::uint64_t seed, Json payload);

Json det_scan_to_json(const DetScanReport& r);
Json class_scan_to_json(const ClassScanReport& r);
Json asymptotics_to_json(const AsymptoticsReport& r);
Json mr_to_json(const MaximalRegularityReport& r);

// Writes via a temp file in the same directory followed by rename.
void write_text_atomic(const std::string& path, const std::string& text);
void write_json_atomic(const std::string& path, const Json& j);
void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

std::string read_text(const std::string& path);

// Result cache keyed by (subcommand, config hash) under cache_dir.
std::optional<Json> cache_lookup(const std::string& cache_dir, const std::string& subcommand,
                                 const std::string& config_hash);
void cache_store(const std::string& cache_dir, const std::string& subcommand,
                 const std::string& config_hash, const Json& j);

// Merges envelopes into one summary; throws std::runtime_error when the
// inputs mix different params_hash values or schema versions.
Json merge_reports(const std::vector<Json>& envelopes);

}  // namespace nsk
