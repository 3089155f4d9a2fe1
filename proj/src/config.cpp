#include "pps/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace pps {

namespace {

const std::regex kKey(R"re((tc\.P\.[1-9][0-9]*|imm\.P\.[1-9][0-9]*|gd\.[1-9][0-9]*\.[1-9][0-9]*))re");
const std::regex kLine(R"re(^\s*([A-Za-z0-9.]+)\s*=\s*([0-9]+)\s*;\s*provenance\s*=\s*"([^"]*)"\s*$)re");

}  // namespace

void OverrideConfig::set(const std::string& key, OverrideEntry entry) {
  if (!std::regex_match(key, kKey)) throw std::invalid_argument("unknown override key '" + key + "'");
  if (entry.provenance.empty())
    throw std::invalid_argument("override '" + key + "' has an empty provenance");
  entries_[key] = std::move(entry);
}

OverrideConfig OverrideConfig::parse(std::string_view text) {
  OverrideConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (!std::regex_match(line, m, kLine))
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected `key = value ; provenance=\"...\"`");
    Nat value = 0;
    const std::string digits = m[2];
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{}) throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad value");
    cfg.set(m[1], {value, m[3]});
  }
  return cfg;
}

OverrideConfig OverrideConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

OverrideConfig OverrideConfig::from_environment() {
  const char* path = std::getenv("PPS_CONFIG");
  if (!path || !*path) return {};
  return load(path);
}

std::optional<OverrideEntry> OverrideConfig::find(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace pps
