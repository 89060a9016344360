#pragma once

// Append-only run store: one JSON record per line.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ldproj::cli {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kStoreEnv = "LDPROJ_STORE";
inline constexpr const char* kDefaultStore = "runs.ndjson";

struct RunRecord {
  int schema = kSchemaVersion;
  std::string timestamp;
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  nlohmann::json payload = nlohmann::json::object();
  std::string config_hash;
  std::string payload_hash;
  std::string id;

  [[nodiscard]] nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
  /// Single-line serialization; keys sorted, doubles shortest round-trip.
  [[nodiscard]] std::string serialize() const;
};

std::string sha256_hex(std::string_view data);

/// Stamps the time and derives config_hash, payload_hash and id.
RunRecord make_record(std::string command, nlohmann::json config, std::uint64_t seed,
                      nlohmann::json payload);

/// --store value, else $LDPROJ_STORE, else ./runs.ndjson.
std::string resolve_store_path(const std::string& flag);

/// Appends under an exclusive advisory lock. Throws StoreError.
void append_record(const std::string& path, const RunRecord& record);

std::vector<RunRecord> read_records(const std::string& path);

/// Latest record whose id starts with `prefix`.
std::optional<RunRecord> find_record(const std::string& path, std::string_view prefix);

}  // namespace ldproj::cli
