#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace bitfrac {

/// key = value config files; '#' starts a comment, blank lines ignored.
/// Throws std::runtime_error on unreadable files or malformed lines.
std::map<std::string, std::string> parse_config_file(const std::string& path);

std::int64_t config_int(const std::map<std::string, std::string>& kv,
                        const std::string& key);
std::int64_t config_int_or(const std::map<std::string, std::string>& kv,
                           const std::string& key, std::int64_t fallback);
std::string config_str(const std::map<std::string, std::string>& kv,
                       const std::string& key);

}  // namespace bitfrac
