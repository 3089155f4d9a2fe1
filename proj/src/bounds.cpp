#include "pps/bounds.hpp"

#include <algorithm>

#include "pps/charclass.hpp"

namespace pps {

namespace {

// Longest nonzero product primary^a * prod others_i^{b_i}, each exponent up
// to nilpotency (primary additionally capped).
ProductWitness longest_product(const RingElement& one, const RingElement& primary, Nat primary_cap,
                               const std::vector<RingElement>& others, std::optional<Nat> max_len) {
  std::vector<std::vector<RingElement>> powers;
  for (const auto& g : others) {
    std::vector<RingElement> row{one};
    while (true) {
      auto next = row.back() * g;
      if (next.is_zero()) break;
      row.push_back(std::move(next));
    }
    powers.push_back(std::move(row));
  }
  std::vector<Nat> suffix(others.size() + 1, 0);
  for (std::size_t i = others.size(); i-- > 0;) suffix[i] = suffix[i + 1] + (powers[i].size() - 1);

  ProductWitness best;
  best.ext_exps.assign(others.size(), 0);
  std::vector<Nat> exps(others.size(), 0);

  auto done = [&] { return max_len && best.length >= *max_len; };
  auto dfs = [&](auto&& self, std::size_t i, const RingElement& q, Nat sum) -> void {
    if (done()) return;
    if (sum + suffix[i] + primary_cap <= best.length) return;
    if (i == others.size()) {
      Nat a = 0;
      RingElement cur = q;
      while (a < primary_cap) {
        auto next = cur * primary;
        if (next.is_zero()) break;
        cur = std::move(next);
        ++a;
      }
      if (sum + a > best.length) best = {sum + a, a, exps};
      return;
    }
    for (std::size_t b = powers[i].size(); b-- > 0;) {
      auto next = q * powers[i][b];
      if (next.is_zero()) continue;
      exps[i] = b;
      self(self, i + 1, next, sum + b);
    }
    exps[i] = 0;
  };
  dfs(dfs, 0, one, 0);
  return best;
}

Nat cat_upper_formula(const SphereTuple& t) {
  const Nat l = t.length();
  const Nat berstein = t.dim() - ((t.first() > 1 && l > 1) ? 1 : 0);
  return std::min(berstein, (t.first() + 1) * l - 1);
}

// Best upper bound on TC(P_n) from the bounds that do not split spheres.
Nat core_tc_upper(const SphereTuple& t, const OverrideConfig& cfg) {
  Nat best = 2 * t.dim();
  if (t.length() == 1) best = std::min(best, *tc_p_registry(t.first(), cfg).hi);
  if (auto v = upper_main2(t)) best = std::min(best, *v);
  if (auto v = teces_upper(t)) best = std::min(best, *v);
  best = std::min(best, upper_cota1(t, cfg));
  best = std::min(best, 2 * cat_upper_formula(t));
  return best;
}

}  // namespace

ProductWitness zcl_search(const SphereTuple& tuple, std::optional<Nat> max_len) {
  require_exhaustive_capacity(tuple);
  auto ring = Ring::pps(tuple);
  auto square = Ring::product(*ring, *ring);
  auto zero_divisor = [&](const RingElement& c) { return embed(c, square, 0) + embed(c, square, 1); };
  std::vector<RingElement> others;
  for (std::size_t i = 2; i <= tuple.length(); ++i) others.push_back(zero_divisor(gen_ext(ring, i)));
  return longest_product(RingElement::one(square), zero_divisor(gen_x(ring)), 2 * tuple.first(), others,
                         max_len);
}

ProductWitness cup_length_search(const SphereTuple& tuple) {
  require_exhaustive_capacity(tuple);
  auto ring = Ring::pps(tuple);
  std::vector<RingElement> others;
  for (std::size_t i = 2; i <= tuple.length(); ++i) others.push_back(gen_ext(ring, i));
  return longest_product(RingElement::one(ring), gen_x(ring), tuple.first(), others, std::nullopt);
}

Nat james_lower(Nat e) {
  static constexpr Nat correction[4] = {2, 1, 1, 3};
  if (e == 0) throw std::domain_error("james_lower: requires e >= 1");
  return (Nat{1} << (e + 1)) - 2 * e - correction[e % 4];
}

RegistryEntry tc_p_lookup(Nat n, const OverrideConfig& config) {
  if (n == 0) throw std::domain_error("tc_p_registry: requires n >= 1");
  RegistryEntry entry;
  if (epsilon(n) == 1) {
    entry = {Interval::exact(n), "P^n parallelizable (n = 1, 3, 7): axial maps P^n x P^n -> P^n"};
  } else if (is_power_of_two(n)) {
    entry = {Interval::exact(2 * n - 1), "n a 2-power: TC(P^n) = zcl(P^n) = 2n - 1"};
  } else {
    Nat lo = zcl_lower(SphereTuple({n}));
    std::string basis = "zcl(P^n) <= TC(P^n) <= 2 cat(P^n) = 2n";
    if (is_power_of_two(n + 1)) {
      const Nat e = floor_log2(n + 1);
      const Nat j = james_lower(e);
      if (j > lo) {
        lo = j;
        basis = "James: TC(P^{2^e-1}) >= 2^{e+1} - 2e - (2,1,1,3)[e mod 4]; TC(P^n) <= 2n";
      }
    }
    entry = {Interval(lo, 2 * n), basis};
  }

  auto apply = [&](Nat value, const std::string& what, const std::string& provenance) {
    if (!entry.tc.contains(value))
      throw std::invalid_argument(what + " gives TC(P^" + std::to_string(n) + ") = " +
                                  std::to_string(value) + " outside the certified range " +
                                  entry.tc.to_string());
    entry = {Interval::exact(value), what + " (" + provenance + ")"};
  };
  if (auto o = config.tc_p(n)) {
    apply(o->value, "override tc.P." + std::to_string(n), o->provenance);
  } else if (auto o = config.imm_p(n)) {
    if (o->value < epsilon(n)) throw std::invalid_argument("imm override below epsilon(n)");
    apply(o->value - epsilon(n), "override imm.P." + std::to_string(n) + " with TC = Imm - epsilon(n)",
          o->provenance);
  }
  return entry;
}

std::optional<Nat> upper_main2(const SphereTuple& t) {
  if (t.length() <= 1) return std::nullopt;
  return 2 * t.dim() - t.first() + 1;
}

Nat lower_main2(const SphereTuple& t, const OverrideConfig& config) {
  return tc_p_registry(t.first(), config).lo;
}

Nat cota1_strict_rhs(const SphereTuple& t, const OverrideConfig& config) {
  const Nat hi = *tc_p_registry(t.first(), config).hi;
  return (hi + 1) * (t.length() + t.even_count());
}

Nat upper_cota1(const SphereTuple& t, const OverrideConfig& config) {
  return cota1_strict_rhs(t, config) - 1;
}

std::optional<Nat> teces_upper(const SphereTuple& t) {
  if (t.length() <= 1) return std::nullopt;
  return 2 * (t.first() + 1) * t.length() - 2;
}

Nat enriques_lower(const SphereTuple& t) {
  return (Nat{1} << (floor_log2(t.first()) + 1)) + t.length() - 2;
}

std::vector<std::size_t> split_indices(const SphereTuple& t) {
  std::vector<std::size_t> out;
  const Nat threshold = phi(t.first());
  for (std::size_t i = 1; i < t.length(); ++i)
    if (nu(t[i] + 1) >= threshold) out.push_back(i);
  return out;
}

std::optional<AnalogoResult> analogo(const SphereTuple& t, const OverrideConfig& config) {
  if (t.length() <= 1) return std::nullopt;
  if (split_indices(t).size() != t.length() - 1) return std::nullopt;
  const Nat l = t.length();
  const Nat lo = zcl_lower(SphereTuple({t.first()})) + l - 1;
  const Nat hi = *tc_p_registry(t.first(), config).hi + l - 1;
  return AnalogoResult{Interval(lo, hi), lo == hi};
}

std::optional<SplitResult> split_upper(const SphereTuple& t, const OverrideConfig& config) {
  auto idx = split_indices(t);
  if (idx.empty()) return std::nullopt;
  auto rest = t.without(idx);
  Nat value = core_tc_upper(rest, config);
  for (auto i : idx) value += tc_sphere(t[i]);
  return SplitResult{value, idx, rest};
}

std::string to_string(BoundTag tag) {
  switch (tag) {
    case BoundTag::main2_upper: return "main2_upper";
    case BoundTag::main2_lower: return "main2_lower";
    case BoundTag::cota1_upper: return "cota1_upper";
    case BoundTag::teces_upper: return "teces_upper";
    case BoundTag::twocat_upper: return "twocat_upper";
    case BoundTag::enriques_lower: return "enriques_lower";
    case BoundTag::zcl_lower: return "zcl_lower";
    case BoundTag::jassint_lower: return "jassint_lower";
    case BoundTag::analogo: return "analogo";
    case BoundTag::subadditive_split: return "subadditive_split";
    case BoundTag::cates_upper: return "cates_upper";
    case BoundTag::berstein_upper: return "berstein_upper";
    case BoundTag::cuplength_lower: return "cuplength_lower";
    case BoundTag::dim_upper: return "dim_upper";
  }
  return "unknown";
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    case BoundKind::exact: return "exact";
  }
  return "unknown";
}

std::string to_string(BoundTarget target) { return target == BoundTarget::tc ? "tc" : "cat"; }

namespace {

BoundItem make_item(BoundTag tag, BoundTarget target, BoundKind kind, std::optional<Nat> value,
                    std::string hypothesis, std::string citation) {
  BoundItem item{tag, target, kind, value, value.has_value(), std::move(hypothesis), std::move(citation)};
  return item;
}

// Largest lower and smallest upper item; throws when they clash.
Interval certify(const std::vector<BoundItem>& items, BoundTarget target, const std::string& name) {
  const BoundItem* lo = nullptr;
  const BoundItem* hi = nullptr;
  for (const auto& it : items) {
    if (it.target != target) continue;
    if (it.bounds_below() && (!lo || *it.value > *lo->value)) lo = &it;
    if (it.bounds_above() && (!hi || *it.value < *hi->value)) hi = &it;
  }
  const Nat lo_v = lo ? *lo->value : 0;
  if (lo && hi && lo_v > *hi->value)
    throw InconsistentBounds(name + ": lower item " + to_string(lo->tag) + " = " + std::to_string(lo_v) +
                             " exceeds upper item " + to_string(hi->tag) + " = " +
                             std::to_string(*hi->value));
  return Interval(lo_v, hi ? std::optional<Nat>(*hi->value) : std::nullopt);
}

}  // namespace

CatBounds cat_bounds(const SphereTuple& t) {
  const Nat l = t.length(), n1 = t.first(), dim = t.dim();
  CatBounds out;
  out.items.push_back(make_item(BoundTag::cuplength_lower, BoundTarget::cat, BoundKind::lower, cup_length(t),
                                "none", "cat >= cup-length of positive-degree generators x, x_i"));
  out.items.push_back(make_item(BoundTag::cates_upper, BoundTarget::cat, BoundKind::upper, (n1 + 1) * l - 1,
                                "none", "Borel fibration: cat(P_n) < (n1+1) l(n)"));
  const bool berstein = n1 > 1 && l > 1;
  out.items.push_back(make_item(BoundTag::berstein_upper, BoundTarget::cat, BoundKind::upper,
                                berstein ? std::optional<Nat>(dim - 1) : std::nullopt, "n1 > 1 and l(n) > 1",
                                "Berstein: cat(P_n) < dim(P_n)"));
  out.items.push_back(
      make_item(BoundTag::dim_upper, BoundTarget::cat, BoundKind::upper, dim, "none", "cat <= dim"));
  out.cat = certify(out.items, BoundTarget::cat, "cat");
  return out;
}

const BoundItem* BoundReport::find(BoundTag tag, BoundTarget target, std::optional<BoundKind> kind) const {
  for (const auto& it : items)
    if (it.tag == tag && it.target == target && it.applicable && (!kind || it.kind == *kind)) return &it;
  return nullptr;
}

BoundReport combine(const SphereTuple& t, const OverrideConfig& cfg) {
  require_exhaustive_capacity(t);
  const Nat l = t.length(), n1 = t.first(), dim = t.dim();
  BoundReport rep{t, {}, {}, {}, {}};
  auto& items = rep.items;
  const auto tc = BoundTarget::tc;

  const auto registry = tc_p_lookup(n1, cfg);
  items.push_back(make_item(BoundTag::main2_lower, tc,
                            (l == 1 && registry.tc.is_exact()) ? BoundKind::exact : BoundKind::lower,
                            registry.tc.lo, "none",
                            "TC(P_n) >= TC(P^{n1}) via the retraction P^{n1} -> P_n -> P^{n1}; registry: " +
                                registry.basis));
  items.push_back(make_item(BoundTag::enriques_lower, tc, BoundKind::lower, enriques_lower(t),
                            "n1 >= 2^e, e = floor(log2 n1)", "zcl: TC(P_n) >= 2^{e+1} + l(n) - 2"));
  const auto zcl = zcl_search(t);
  items.push_back(make_item(BoundTag::zcl_lower, tc, BoundKind::lower, zcl.length, "none",
                            "standard-generator zero-divisor cup-length in H*(P_n x P_n; Z2)"));
  {
    std::optional<Nat> value;
    if (is_power_of_two(n1 + 1) && n1 >= 15) value = james_lower(floor_log2(n1 + 1));
    items.push_back(make_item(BoundTag::jassint_lower, tc, BoundKind::lower, value, "n1 = 2^e - 1, e >= 4",
                              "James: TC(P^{2^e-1}) >= 2^{e+1} - 2e - (2,1,1,3) for e = (0,1,2,3) mod 4"));
  }
  const auto an = analogo(t, cfg);
  const std::string an_hyp = "nu(n_i + 1) >= phi(n1) for all i > 1, l(n) > 1";
  const std::string an_cite =
      "sphere splitting: zcl(P^{n1}) + l - 1 <= TC(P_n) <= TC(P^{n1}) + l - 1, equal for n1 a 2-power";
  if (an && an->exact) {
    items.push_back(make_item(BoundTag::analogo, tc, BoundKind::exact, an->tc.lo, an_hyp, an_cite));
  } else {
    items.push_back(make_item(BoundTag::analogo, tc, BoundKind::lower,
                              an ? std::optional<Nat>(an->tc.lo) : std::nullopt, an_hyp, an_cite));
    items.push_back(make_item(BoundTag::analogo, tc, BoundKind::upper,
                              an ? std::optional<Nat>(*an->tc.hi) : std::nullopt, an_hyp, an_cite));
  }

  items.push_back(make_item(BoundTag::main2_upper, tc, BoundKind::upper, upper_main2(t), "l(n) > 1",
                            "axial map P_n x P_n -> P^{2|n|-n1+1}: TC(P_n) <= 2|n| - n1 + 1"));
  items.push_back(make_item(BoundTag::cota1_upper, tc, BoundKind::upper, upper_cota1(t, cfg), "none",
                            "Borel fibration S^{n1} x_{Z2} S_m: TC(P_n) < (TC(P^{n1})+1)(l(n)+k) = " +
                                std::to_string(cota1_strict_rhs(t, cfg)) + " (strict), stored as RHS - 1"));
  items.push_back(make_item(BoundTag::teces_upper, tc, BoundKind::upper, teces_upper(t), "l(n) > 1",
                            "TC <= 2 cat with cat < (n1+1) l: TC(P_n) < 2(n1+1) l(n) - 1"));
  const auto cat = cat_bounds(t);
  items.push_back(make_item(BoundTag::twocat_upper, tc, BoundKind::upper, 2 * *cat.cat.hi, "none",
                            "TC <= 2 cat"));
  const auto split = split_upper(t, cfg);
  items.push_back(make_item(BoundTag::subadditive_split, tc, BoundKind::upper,
                            split ? std::optional<Nat>(split->value) : std::nullopt,
                            "some i > 1 with nu(n_i + 1) >= phi(n1)",
                            "subadditivity: TC(P_n) <= TC(P_m) + sum TC(S^{n_i}) when P_n is homeomorphic to "
                            "P_m x prod S^{n_i}"));
  items.push_back(make_item(BoundTag::dim_upper, tc, BoundKind::upper, 2 * dim, "none", "TC <= 2 dim"));
  items.insert(items.end(), cat.items.begin(), cat.items.end());

  rep.tc = certify(items, BoundTarget::tc, "tc");
  rep.cat = certify(items, BoundTarget::cat, "cat");

  rep.flags.stably_parallelizable = stably_parallelizable(t);
  rep.flags.analogo_applicable = an.has_value();
  rep.flags.analogo_exact = an && an->exact;
  if (n1 == 1) rep.flags.circle_factors = static_cast<Nat>(std::count(t.entries().begin(), t.entries().end(), 1)) - 1;
  rep.flags.splits = split_indices(t);
  rep.flags.tc_below_dim = rep.tc.hi && *rep.tc.hi < dim;
  return rep;
}

}  // namespace pps
