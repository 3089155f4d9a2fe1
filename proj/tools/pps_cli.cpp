// pps: command-line front end for the projective product space toolkit.

#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pps/bounds.hpp"
#include "pps/charclass.hpp"
#include "pps/config.hpp"
#include "pps/nonsingular.hpp"
#include "pps/planner.hpp"
#include "pps/report_io.hpp"

using namespace pps;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerification = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer expressions in one variable e: + - * ^ and parentheses.
class FamilyExpr {
 public:
  FamilyExpr(std::string text, Nat e) : s_(std::move(text)), e_(e) {}

  Nat eval() {
    const Nat v = sum();
    skip();
    if (pos_ != s_.size()) fail();
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail() { throw UsageError("bad family expression '" + s_ + "'"); }

  Nat sum() {
    Nat v = product();
    for (;;) {
      if (eat('+')) {
        v += product();
      } else if (eat('-')) {
        const Nat w = product();
        if (w > v) throw UsageError("family expression '" + s_ + "' goes negative");
        v -= w;
      } else {
        return v;
      }
    }
  }
  Nat product() {
    Nat v = power();
    while (eat('*')) v *= power();
    return v;
  }
  Nat power() {
    const Nat base = atom();
    if (!eat('^')) return base;
    const Nat exp = power();
    Nat v = 1;
    for (Nat i = 0; i < exp; ++i) {
      if (v > kMaxNat / std::max<Nat>(base, 1)) throw UsageError("family value overflows");
      v *= base;
    }
    return v;
  }
  Nat atom() {
    skip();
    if (eat('(')) {
      const Nat v = sum();
      if (!eat(')')) fail();
      return v;
    }
    if (eat('e')) return e_;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      Nat v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = 10 * v + (s_[pos_++] - '0');
      return v;
    }
    fail();
  }

  std::string s_;
  Nat e_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::pair<Nat, Nat> parse_range(const std::string& text) {
  const auto at = text.find("..");
  if (at == std::string::npos) throw UsageError("range must look like 1..5");
  try {
    const Nat a = std::stoull(text.substr(0, at)), b = std::stoull(text.substr(at + 2));
    if (a > b) throw UsageError("empty range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("bad range " + text);
  }
}

SphereTuple tuple_arg(const std::string& text) {
  try {
    return SphereTuple::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

OverrideConfig load_config(const std::string& path) {
  if (!path.empty()) return OverrideConfig::load(path);
  return OverrideConfig::from_environment();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out_path);
  f << text;
}

std::string vec_text(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  return os.str();
}

PlannerPtr planner_for(const std::vector<Nat>& spheres, double cap_radius) {
  if (spheres.empty()) throw UsageError("--sphere needs at least one dimension");
  PlannerPtr p;
  for (auto n : spheres) {
    PlannerPtr f = n % 2 ? odd_sphere_planner(n) : even_sphere_planner(n, std::nullopt, cap_radius);
    p = p ? product_planner(p, f) : f;
  }
  return p;
}

std::vector<Nat> dims_arg(const std::string& text) {
  std::vector<Nat> out;
  for (const auto& s : split(text, ',')) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad sphere dimension '" + s + "'");
    out.push_back(std::stoull(s));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Topological complexity, category and immersion bounds for projective product spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text", config_path, out_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--config", config_path, "Override file (default: $PPS_CONFIG)");

  std::string tuple_text;
  auto* bounds = app.add_subcommand("bounds", "TC and cat bounds for P_n");
  bounds->add_option("tuple", tuple_text, "Sphere dimensions, e.g. 2,7")->required();

  Nat am = 0, an = 0, al = 0;
  auto* axial = app.add_subcommand("axial", "Cohomological obstruction to an axial map P^m x P^n -> P^L");
  axial->add_option("m", am)->required();
  axial->add_option("n", an)->required();
  axial->add_option("L", al)->required();

  std::optional<Nat> gd;
  std::string provenance;
  auto* imm = app.add_subcommand("imm", "Immersion dimension analysis");
  imm->add_option("tuple", tuple_text)->required();
  imm->add_option("--gd", gd, "Geometric dimension value from the literature");
  imm->add_option("--provenance", provenance, "Source of the --gd value");

  bool poincare = false;
  auto* ring = app.add_subcommand("ring", "Mod 2 cohomology ring of P_n");
  ring->add_option("tuple", tuple_text)->required();
  ring->add_flag("--poincare", poincare, "Print only the Poincare series");

  auto* zcl = app.add_subcommand("zcl", "Zero-divisor and ordinary cup-length");
  zcl->add_option("tuple", tuple_text)->required();

  std::string spheres_text, from_text, to_text_arg;
  double cap_radius = 0.5;
  int points = 11;
  auto* plan = app.add_subcommand("plan", "Run the equivariant planner on one pair");
  plan->add_option("--sphere", spheres_text, "Sphere dimensions, e.g. 3 or 3,4")->required();
  plan->add_option("--from", from_text, "Start point (normalized)")->required();
  plan->add_option("--to", to_text_arg, "End point (normalized)")->required();
  plan->add_option("--points", points, "Path sample count")->check(CLI::PositiveNumber);
  plan->add_option("--cap-radius", cap_radius, "Even-sphere cap radius w");

  VerifyOptions vopt;
  std::optional<std::size_t> drop_rule;
  auto* verify = app.add_subcommand("verify", "Sampling verification of a planner");
  verify->add_option("--sphere", spheres_text, "Sphere dimensions, e.g. 4 or 3,4")->required();
  verify->add_option("--samples", vopt.samples, "Uniform pairs");
  verify->add_option("--adversarial", vopt.adversarial, "Pairs per adversarial family");
  verify->add_option("--seed", vopt.seed);
  verify->add_option("--tol", vopt.tol.endpoint, "Endpoint, off-sphere and equivariance tolerance");
  verify->add_option("--cap-radius", cap_radius);
  verify->add_option("--drop-rule", drop_rule, "Delete one rule (shows the coverage gap)");

  std::string family, range = "1..5";
  auto* table = app.add_subcommand("table", "CSV bounds over a family such as 2^e,2^e");
  table->add_option("--family", family, "Comma-separated expressions in e")->required();
  table->add_option("--range", range, "Values of e, e.g. 1..5");
  table->add_option("--out", out_path, "Output file");

  std::string map_name = "complex";
  NonsingularOptions nopt;
  auto* nonsing = app.add_subcommand("nonsingular", "Search a built-in map for a zero on nonzero inputs");
  nonsing->add_option("--map", map_name)->check(CLI::IsMember(builtin_names()));
  nonsing->add_option("--budget", nopt.budget, "Samples");
  nonsing->add_option("--seed", nopt.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool json = format == "json";
  if (format == "csv" && !bounds->parsed() && !table->parsed())
    throw UsageError("--format csv applies to bounds and table only");
  const OverrideConfig cfg = load_config(config_path);

  if (bounds->parsed()) {
    const BoundReport rep = combine(tuple_arg(tuple_text), cfg);
    if (json)
      std::cout << dump(to_json(rep));
    else if (format == "csv")
      std::cout << bounds_csv_header() << bounds_csv_row(rep, cfg);
    else
      std::cout << to_text(rep);
    return 0;
  }

  if (axial->parsed()) {
    const Axial a = axial_obstruction(am, an, al);
    const auto w = axial_witness(am, an, al);
    const std::string verdict = a == Axial::obstructed ? "obstructed" : "unobstructed";
    if (json)
      std::cout << dump({{"m", am}, {"n", an}, {"L", al}, {"result", verdict},
                         {"witness", w ? Json(*w) : Json(nullptr)}});
    else
      std::cout << verdict << "\n";
    return 0;
  }

  if (imm->parsed()) {
    const SphereTuple t = tuple_arg(tuple_text);
    std::optional<GdOverride> ov;
    if (gd) {
      ov = GdOverride{*gd, provenance.empty() ? "command line" : provenance};
    } else if (auto e = cfg.gd(t.first(), t.dim() + t.length())) {
      ov = GdOverride{e->value, e->provenance};
    }
    const ImmersionReport rep = immersion_report(t, ov);
    std::cout << (json ? dump(to_json(rep)) : to_text(rep));
    return 0;
  }

  if (ring->parsed()) {
    const SphereTuple t = tuple_arg(tuple_text);
    require_exhaustive_capacity(t);
    auto r = Ring::pps(t);
    const auto series = poincare_series(*r);
    if (json) {
      Json j = {{"tuple", to_json(t)}, {"poincare", series}, {"total_rank", r->total_rank()}};
      if (!poincare) {
        Json basis_json = Json::array();
        for (Nat d = 0; d <= r->top_degree(); ++d) {
          Json row = Json::array();
          for (auto m : basis(*r, d)) row.push_back(r->render(m));
          basis_json.push_back(row);
        }
        j["basis"] = basis_json;
      }
      std::cout << dump(j);
    } else {
      std::cout << "Poincare series:";
      for (auto c : series) std::cout << " " << c;
      std::cout << "\n";
      if (!poincare)
        for (Nat d = 0; d <= r->top_degree(); ++d) {
          std::cout << "H^" << d << ":";
          for (auto m : basis(*r, d)) std::cout << " " << r->render(m);
          std::cout << "\n";
        }
    }
    return 0;
  }

  if (zcl->parsed()) {
    const SphereTuple t = tuple_arg(tuple_text);
    const auto z = zcl_search(t);
    const auto c = cup_length_search(t);
    if (json)
      std::cout << dump({{"tuple", to_json(t)},
                         {"zcl", {{"length", z.length}, {"x_exp", z.x_exp}, {"ext_exps", z.ext_exps}}},
                         {"cup_length", {{"length", c.length}, {"x_exp", c.x_exp}, {"ext_exps", c.ext_exps}}}});
    else
      std::cout << "zcl " << z.length << "\ncup-length " << c.length << "\n";
    return 0;
  }

  if (plan->parsed()) {
    const PlannerPtr p = planner_for(dims_arg(spheres_text), cap_radius);
    const Vec a = SpherePoint::parse_normalized(from_text).coords();
    const Vec b = SpherePoint::parse_normalized(to_text_arg).coords();
    if (static_cast<std::size_t>(a.size()) != p->ambient_dim() || static_cast<std::size_t>(b.size()) != p->ambient_dim())
      throw UsageError("points need " + std::to_string(p->ambient_dim()) + " coordinates");
    auto blockwise = [&](Vec v) {
      Eigen::Index at = 0;
      for (auto d : p->block_dims()) {
        v.segment(at, static_cast<Eigen::Index>(d)).normalize();
        at += static_cast<Eigen::Index>(d);
      }
      return v;
    };
    const Vec pa = blockwise(a), pb = blockwise(b);
    const auto rule = p->select(pa, pb);
    if (!rule) throw std::logic_error("no rule covers the pair");
    const Path path = p->section(*rule, pa, pb);
    if (json) {
      std::cout << dump({{"planner", p->name()},
                         {"rule", *rule},
                         {"level", p->level(*rule)},
                         {"path", path_json(path, points)}});
    } else {
      std::cout << p->name() << " rule " << *rule << " level " << p->level(*rule) << "\n";
      for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : i / double(points - 1);
        std::cout << t << ": " << vec_text(path.evaluate(t)) << "\n";
      }
    }
    return 0;
  }

  if (verify->parsed()) {
    vopt.tol.offsphere = vopt.tol.equivariance = vopt.tol.endpoint;
    PlannerPtr p = planner_for(dims_arg(spheres_text), cap_radius);
    if (drop_rule) {
      std::vector<std::size_t> keep;
      for (std::size_t r = 0; r < p->rule_count(); ++r)
        if (r != *drop_rule) keep.push_back(r);
      p = restrict_rules(p, keep);
    }
    const VerificationReport rep = verify_planner(*p, vopt);
    std::cout << (json ? dump(to_json(rep)) : to_text(rep));
    return rep.passed ? 0 : kExitVerification;
  }

  if (table->parsed()) {
    const auto [lo, hi] = parse_range(range);
    const auto exprs = split(family, ',');
    std::string text = bounds_csv_header();
    Json rows = Json::array();
    for (Nat e = lo; e <= hi; ++e) {
      std::vector<Nat> entries;
      for (const auto& x : exprs) entries.push_back(FamilyExpr(x, e).eval());
      const BoundReport rep = combine(SphereTuple(entries), cfg);
      text += bounds_csv_row(rep, cfg);
      rows.push_back(to_json(rep));
    }
    emit(json ? dump(rows) : text, out_path);
    return 0;
  }

  if (nonsing->parsed()) {
    const NonsingularResult res = check_nonsingular(builtin_map(map_name), nopt);
    if (json) {
      Json j = to_json(res);
      j["map"] = map_name;
      std::cout << dump(j);
    } else {
      std::cout << map_name << ": " << to_text(res);
    }
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
