#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "pps/arith.hpp"

namespace pps {

struct OverrideEntry {
  Nat value = 0;
  std::string provenance;
  friend bool operator==(const OverrideEntry&, const OverrideEntry&) = default;
};

/// External-literature values supplied by the user, one per line:
///
///     tc.P.<n>      = <value> ; provenance="<text>"
///     imm.P.<n>     = <value> ; provenance="<text>"
///     gd.<n1>.<k>   = <value> ; provenance="<text>"
///
/// Blank lines and lines starting with '#' are ignored. Every entry needs a
/// nonempty provenance.
class OverrideConfig {
 public:
  static OverrideConfig parse(std::string_view text);
  static OverrideConfig load(const std::filesystem::path& path);
  /// Loads the file named by $PPS_CONFIG, or returns an empty config.
  static OverrideConfig from_environment();

  void set(const std::string& key, OverrideEntry entry);

  std::optional<OverrideEntry> tc_p(Nat n) const { return find("tc.P." + std::to_string(n)); }
  std::optional<OverrideEntry> imm_p(Nat n) const { return find("imm.P." + std::to_string(n)); }
  std::optional<OverrideEntry> gd(Nat n1, Nat k) const {
    return find("gd." + std::to_string(n1) + "." + std::to_string(k));
  }

  const std::map<std::string, OverrideEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::optional<OverrideEntry> find(const std::string& key) const;
  std::map<std::string, OverrideEntry> entries_;
};

}  // namespace pps
