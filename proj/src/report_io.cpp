#include "pps/report_io.hpp"

#include <sstream>

namespace pps {

namespace {

Json opt(const std::optional<Nat>& v) { return v ? Json(*v) : Json(nullptr); }

std::string opt_cell(const std::optional<Nat>& v) { return v ? std::to_string(*v) : std::string(); }

std::string interval_text(const Interval& i) { return i.to_string(); }

}  // namespace

Json to_json(const SphereTuple& t) { return Json(t.entries()); }

Json to_json(const Interval& i) { return {{"lo", i.lo}, {"hi", opt(i.hi)}}; }

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json to_json(const BoundItem& it) {
  return {{"tag", to_string(it.tag)},         {"target", to_string(it.target)},
          {"kind", to_string(it.kind)},       {"value", opt(it.value)},
          {"applicable", it.applicable},      {"hypothesis", it.hypothesis},
          {"citation", it.citation}};
}

Json to_json(const BoundReport& r) {
  Json items = Json::array();
  for (const auto& it : r.items) items.push_back(to_json(it));
  Json flags = {{"stably_parallelizable", r.flags.stably_parallelizable},
                {"analogo_applicable", r.flags.analogo_applicable},
                {"analogo_exact", r.flags.analogo_exact},
                {"circle_factors", r.flags.circle_factors},
                {"splits", r.flags.splits},
                {"tc_below_dim", r.flags.tc_below_dim}};
  return {{"tuple", to_json(r.tuple)}, {"dim", r.tuple.dim()}, {"tc", to_json(r.tc)},
          {"cat", to_json(r.cat)},     {"items", items},       {"flags", flags}};
}

Json to_json(const ImmersionReport& r) {
  Json gd = {{"g", r.gd_used.g}, {"source", r.gd_used.is_override ? "override" : "lower_bound"}};
  if (r.gd_used.is_override) gd["provenance"] = r.gd_used.provenance;
  return {{"tuple", to_json(r.tuple)},
          {"dim", r.tuple.dim()},
          {"stably_parallelizable", r.stably_parallelizable},
          {"imm_lower", r.imm_lower},
          {"imm_exact", opt(r.imm_exact)},
          {"gd_used", gd},
          {"metastable_ok", r.metastable_ok},
          {"agj_ok", r.agj_ok},
          {"notes", r.notes}};
}

Json to_json(const VerificationReport& r) {
  Json cont = Json::array();
  for (const auto& c : r.continuity)
    cont.push_back({{"probes", c.probes}, {"max_modulus", c.max_modulus}, {"mean_modulus", c.mean_modulus}});
  Json wit = Json::array();
  for (const auto& w : r.witnesses)
    wit.push_back({{"family", w.family}, {"reason", w.reason}, {"a", to_json(w.a)}, {"b", to_json(w.b)}});
  return {{"planner", r.planner},
          {"samples", r.samples},
          {"covered", r.covered},
          {"coverage", r.coverage},
          {"max_endpoint_err", r.max_endpoint_err},
          {"max_equivariance_defect", r.max_equivariance_defect},
          {"max_offsphere", r.max_offsphere},
          {"invariance_violations", r.invariance_violations},
          {"continuity", cont},
          {"rule_usage", r.rule_usage},
          {"level_histogram", r.level_histogram},
          {"witnesses", wit},
          {"failures", r.failures},
          {"passed", r.passed}};
}

Json to_json(const NonsingularResult& r) {
  Json j = {{"ok", r.ok},
            {"samples", r.samples},
            {"min_sampled_norm", r.min_sampled_norm},
            {"min_norm", r.min_norm},
            {"counterexample", nullptr}};
  if (r.counter_x) j["counterexample"] = {{"x", to_json(*r.counter_x)}, {"y", to_json(*r.counter_y)}};
  return j;
}

Json path_json(const Path& path, int points) {
  Json a = Json::array();
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : i / double(points - 1);
    a.push_back({{"t", t}, {"point", to_json(path.evaluate(t))}});
  }
  return a;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

struct Column {
  const char* name;
  BoundTag tag;
  BoundTarget target;
  std::optional<BoundKind> kind;
};

const std::vector<Column>& item_columns() {
  static const std::vector<Column> cols = {
      {"main2_lower", BoundTag::main2_lower, BoundTarget::tc, std::nullopt},
      {"enriques_lower", BoundTag::enriques_lower, BoundTarget::tc, std::nullopt},
      {"zcl_lower", BoundTag::zcl_lower, BoundTarget::tc, std::nullopt},
      {"jassint_lower", BoundTag::jassint_lower, BoundTarget::tc, std::nullopt},
      {"analogo_lower", BoundTag::analogo, BoundTarget::tc, BoundKind::lower},
      {"analogo_upper", BoundTag::analogo, BoundTarget::tc, BoundKind::upper},
      {"analogo_exact", BoundTag::analogo, BoundTarget::tc, BoundKind::exact},
      {"main2_upper", BoundTag::main2_upper, BoundTarget::tc, std::nullopt},
      {"cota1_upper", BoundTag::cota1_upper, BoundTarget::tc, std::nullopt},
      {"teces_upper", BoundTag::teces_upper, BoundTarget::tc, std::nullopt},
      {"twocat_upper", BoundTag::twocat_upper, BoundTarget::tc, std::nullopt},
      {"subadditive_split", BoundTag::subadditive_split, BoundTarget::tc, std::nullopt},
      {"tc_dim_upper", BoundTag::dim_upper, BoundTarget::tc, std::nullopt},
      {"cuplength_lower", BoundTag::cuplength_lower, BoundTarget::cat, std::nullopt},
      {"cates_upper", BoundTag::cates_upper, BoundTarget::cat, std::nullopt},
      {"berstein_upper", BoundTag::berstein_upper, BoundTarget::cat, std::nullopt},
      {"cat_dim_upper", BoundTag::dim_upper, BoundTarget::cat, std::nullopt},
  };
  return cols;
}

}  // namespace

std::vector<std::string> bounds_csv_columns() {
  std::vector<std::string> cols = {"tuple", "dim", "tc_lo", "tc_hi", "cat_lo", "cat_hi"};
  for (const auto& c : item_columns()) {
    cols.push_back(c.name);
    if (c.tag == BoundTag::cota1_upper) cols.push_back("cota1_strict_rhs");
  }
  cols.push_back("tc_below_dim");
  return cols;
}

std::string bounds_csv_header() {
  std::string s = std::string(kBoundsCsvVersion) + "\n";
  const auto cols = bounds_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  return s + "\n";
}

std::string bounds_csv_row(const BoundReport& r, const OverrideConfig& config) {
  std::vector<std::string> cells = {"\"" + r.tuple.to_string() + "\"", std::to_string(r.tuple.dim()),
                                    std::to_string(r.tc.lo),           opt_cell(r.tc.hi),
                                    std::to_string(r.cat.lo),          opt_cell(r.cat.hi)};
  for (const auto& c : item_columns()) {
    const BoundItem* it = r.find(c.tag, c.target, c.kind);
    cells.push_back(it ? opt_cell(it->value) : "");
    if (c.tag == BoundTag::cota1_upper) cells.push_back(std::to_string(cota1_strict_rhs(r.tuple, config)));
  }
  cells.push_back(r.flags.tc_below_dim ? "1" : "0");
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

std::string to_text(const BoundReport& r) {
  std::ostringstream os;
  os << "P_(" << r.tuple.to_string() << ")  dim " << r.tuple.dim() << "\n";
  os << "TC  " << interval_text(r.tc) << (r.flags.tc_below_dim ? "  (below dim)" : "") << "\n";
  os << "cat " << interval_text(r.cat) << "\n";
  for (const auto& it : r.items) {
    if (!it.applicable) continue;
    os << "  " << to_string(it.target) << " " << to_string(it.kind) << " " << *it.value << "  "
       << to_string(it.tag) << ": " << it.citation << "\n";
  }
  if (!r.flags.splits.empty()) {
    os << "split spheres at positions";
    for (auto i : r.flags.splits) os << " " << i + 1;
    os << "\n";
  }
  return os.str();
}

std::string to_text(const ImmersionReport& r) {
  std::ostringstream os;
  os << "P_(" << r.tuple.to_string() << ")  dim " << r.tuple.dim() << "\n";
  os << "stably parallelizable: " << (r.stably_parallelizable ? "yes" : "no") << "\n";
  os << "imm >= " << r.imm_lower << "\n";
  if (r.imm_exact) os << "imm = " << *r.imm_exact << "\n";
  os << "gd used: " << r.gd_used.g << (r.gd_used.is_override ? " (override: " + r.gd_used.provenance + ")" : "")
     << "\n";
  os << "metastable: " << (r.metastable_ok ? "yes" : "no") << ", agj: " << (r.agj_ok ? "yes" : "no") << "\n";
  for (const auto& n : r.notes) os << "  " << n << "\n";
  return os.str();
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.planner << ": " << (r.passed ? "PASS" : "FAIL") << "\n";
  os << "samples " << r.samples << ", coverage " << r.coverage << "\n";
  os << "endpoint " << r.max_endpoint_err << ", off-sphere " << r.max_offsphere << ", equivariance "
     << r.max_equivariance_defect << "\n";
  os << "rule usage";
  for (auto u : r.rule_usage) os << " " << u;
  os << "\nlevels";
  for (auto l : r.level_histogram) os << " " << l;
  os << "\n";
  for (std::size_t i = 0; i < r.continuity.size(); ++i)
    os << "rule " << i << " continuity: " << r.continuity[i].probes << " probes, max " << r.continuity[i].max_modulus
       << "\n";
  for (const auto& f : r.failures) os << "failure: " << f << "\n";
  for (const auto& w : r.witnesses) os << "witness (" << w.family << "): " << w.reason << "\n";
  return os.str();
}

std::string to_text(const NonsingularResult& r) {
  std::ostringstream os;
  os << (r.ok ? "no counterexample" : "counterexample found") << " after " << r.samples
     << " samples, min |f| = " << r.min_norm << "\n";
  if (r.counter_x) {
    os << "x = " << r.counter_x->transpose() << "\n";
    os << "y = " << r.counter_y->transpose() << "\n";
  }
  return os.str();
}

}  // namespace pps
