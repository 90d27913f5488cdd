#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <openssl/evp.h>
#include <unistd.h>

#include "tamloday/matrix.hpp"

namespace tamloday::cli {

inline constexpr const char* kVersion = "tamloday-1";

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += hex[md[i] >> 4], out += hex[md[i] & 15];
  return out;
}

/// Content-addressed result store: one file per key, replaced atomically.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string key(const std::string& operation, const std::string& canonical_input) {
    return sha256_hex(std::string(kVersion) + "\n" + operation + "\n" + canonical_input);
  }

  std::optional<std::string> get(const std::string& key) const {
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void put(const std::string& key, const std::string& value) const {
    std::filesystem::create_directories(dir_);
    static std::atomic<unsigned> counter{0};
    const std::filesystem::path tmp =
        dir_ / (key + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter.fetch_add(1)));
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw Error("cannot write cache file " + tmp.string());
      out << value;
      if (!out.flush()) throw Error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, dir_ / (key + ".json"));
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace tamloday::cli
