#include "bitfrac/config_file.hpp"

#include <fstream>
#include <stdexcept>

namespace bitfrac {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

std::string config_str(const std::map<std::string, std::string>& kv,
                       const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::runtime_error("missing config key: " + key);
  return it->second;
}

std::int64_t config_int(const std::map<std::string, std::string>& kv,
                        const std::string& key) {
  const std::string v = config_str(kv, key);
  try {
    size_t pos = 0;
    const std::int64_t n = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "' is not an integer: " + v);
  }
}

std::int64_t config_int_or(const std::map<std::string, std::string>& kv,
                           const std::string& key, std::int64_t fallback) {
  return kv.count(key) ? config_int(kv, key) : fallback;
}

}  // namespace bitfrac
