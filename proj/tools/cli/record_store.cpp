#include "cli/record_store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>

#include <openssl/evp.h>

namespace ldproj::cli {

nlohmann::json RunRecord::to_json() const {
  return {{"schema", schema},         {"timestamp", timestamp},       {"command", command},
          {"config", config},         {"seed", seed},                 {"payload", payload},
          {"config_hash", config_hash}, {"payload_hash", payload_hash}, {"id", id}};
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  RunRecord r;
  r.schema = j.at("schema").get<int>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.payload = j.at("payload");
  r.config_hash = j.at("config_hash").get<std::string>();
  r.payload_hash = j.at("payload_hash").get<std::string>();
  r.id = j.at("id").get<std::string>();
  return r;
}

std::string RunRecord::serialize() const { return to_json().dump(); }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw StoreError("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class FileLock {
 public:
  FileLock(int fd, int op) : fd_(fd) {
    while (flock(fd_, op) != 0) {
      if (errno != EINTR) throw StoreError(std::string("cannot lock record store: ") + std::strerror(errno));
    }
  }
  ~FileLock() { flock(fd_, LOCK_UN); }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

}  // namespace

RunRecord make_record(std::string command, nlohmann::json config, std::uint64_t seed,
                      nlohmann::json payload) {
  RunRecord r;
  r.timestamp = utc_now();
  r.command = std::move(command);
  r.config = std::move(config);
  r.seed = seed;
  r.payload = std::move(payload);
  r.config_hash = sha256_hex(r.command + "\n" + r.config.dump() + "\n" + std::to_string(seed));
  r.payload_hash = sha256_hex(r.payload.dump());
  r.id = r.config_hash.substr(0, 12);
  return r;
}

std::string resolve_store_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kStoreEnv); env != nullptr && *env != '\0') return env;
  return kDefaultStore;
}

void append_record(const std::string& path, const RunRecord& record) {
  const std::string line = record.serialize() + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw StoreError("cannot open record store '" + path + "': " + std::strerror(errno));
  try {
    const FileLock lock(fd, LOCK_EX);
    std::size_t written = 0;
    while (written < line.size()) {
      const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw StoreError("cannot write record store '" + path + "': " + std::strerror(errno));
      }
      written += static_cast<std::size_t>(n);
    }
  } catch (...) {
    ::close(fd);
    throw;
  }
  if (::close(fd) != 0) throw StoreError("cannot close record store '" + path + "'");
}

std::vector<RunRecord> read_records(const std::string& path) {
  const int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) throw StoreError("cannot open record store '" + path + "': " + std::strerror(errno));
  std::vector<RunRecord> out;
  try {
    const FileLock lock(fd, LOCK_SH);
    std::ifstream in(path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        out.push_back(RunRecord::from_json(nlohmann::json::parse(line)));
      } catch (const nlohmann::json::exception& e) {
        throw StoreError("record store '" + path + "' line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  return out;
}

std::optional<RunRecord> find_record(const std::string& path, std::string_view prefix) {
  if (prefix.empty()) return std::nullopt;
  std::optional<RunRecord> hit;
  for (auto& r : read_records(path)) {
    if (std::string_view(r.id).starts_with(prefix) || std::string_view(r.config_hash).starts_with(prefix)) {
      hit = std::move(r);
    }
  }
  return hit;
}

}  // namespace ldproj::cli
