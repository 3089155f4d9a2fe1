#include "pps/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace pps {

namespace {

constexpr std::string_view kLetters = "xyzwuvst";

std::uint64_t low_bits(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Sort and drop monomials that occur an even number of times.
void normalize(std::vector<Monomial>& terms) {
  std::sort(terms.begin(), terms.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 == 1) terms[out++] = terms[i];
    i = j;
  }
  terms.resize(out);
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a != b && !(*a == *b)) throw std::invalid_argument("ring mismatch");
}

}  // namespace

Ring::Ring(Kind kind, std::vector<SphereTuple> tuples) : kind_(kind) {
  if (tuples.size() > kMaxFactors)
    throw CapacityError("capacity exceeded: more than 8 tensor factors");
  unsigned shift = 0;
  for (auto& t : tuples) {
    if (t.length() > kMaxLength)
      throw CapacityError("capacity exceeded: l(n) = " + std::to_string(t.length()) +
                          " > 16 (cap r <= 16)");
    Factor f{t, 0, 0, 0, 0, 0};
    f.x_bits = static_cast<unsigned>(std::bit_width(t.first()));
    f.mask_bits = static_cast<unsigned>(t.length() - 1);
    f.x_shift = shift;
    f.mask_shift = shift + f.x_bits;
    shift += f.x_bits + f.mask_bits;
    if (shift > 64)
      throw CapacityError("capacity exceeded: monomial encoding needs more than 64 bits");
    if (t.first() % 2 == 0)
      for (std::size_t i = 1; i < t.length(); ++i)
        if (t[i] == t.first()) f.exceptional |= std::uint64_t{1} << (i - 1);
    factors_.push_back(std::move(f));
  }
}

RingPtr Ring::pps(const SphereTuple& tuple) {
  if (tuple.length() == 1) return truncated_projective(tuple.first());
  return RingPtr(new Ring(Kind::pps, {tuple}));
}

RingPtr Ring::truncated_projective(Nat n) {
  return RingPtr(new Ring(Kind::truncated_projective, {SphereTuple({n})}));
}

RingPtr Ring::product(const Ring& left, const Ring& right) {
  auto tuples = left.factor_tuples();
  auto more = right.factor_tuples();
  tuples.insert(tuples.end(), more.begin(), more.end());
  return RingPtr(new Ring(Kind::product, std::move(tuples)));
}

std::vector<SphereTuple> Ring::factor_tuples() const {
  std::vector<SphereTuple> out;
  for (const auto& f : factors_) out.push_back(f.tuple);
  return out;
}

bool Ring::is_exceptional(std::size_t f, std::size_t i) const {
  return i >= 2 && (factors_.at(f).exceptional >> (i - 2)) & 1;
}

Monomial Ring::make(std::size_t f, Nat x_exp, std::uint64_t ext_mask) const {
  const Factor& fa = factors_.at(f);
  if (x_exp > fa.tuple.first() || (ext_mask & ~low_bits(fa.mask_bits)))
    throw std::out_of_range("monomial outside the ring");
  return {(x_exp << fa.x_shift) | (ext_mask << fa.mask_shift)};
}

Nat Ring::x_exp(Monomial m, std::size_t f) const {
  const Factor& fa = factors_[f];
  return (m.bits >> fa.x_shift) & low_bits(fa.x_bits);
}

std::uint64_t Ring::ext_mask(Monomial m, std::size_t f) const {
  const Factor& fa = factors_[f];
  return (m.bits >> fa.mask_shift) & low_bits(fa.mask_bits);
}

Nat Ring::degree(Monomial m) const {
  Nat d = 0;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    d += x_exp(m, f);
    for (std::uint64_t mask = ext_mask(m, f); mask; mask &= mask - 1)
      d += factors_[f].tuple[static_cast<std::size_t>(std::countr_zero(mask)) + 1];
  }
  return d;
}

Nat Ring::top_degree() const {
  Nat d = 0;
  for (const auto& f : factors_) d += f.tuple.dim();
  return d;
}

std::optional<Monomial> Ring::multiply(Monomial a, Monomial b) const {
  std::uint64_t out = 0;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const Factor& fa = factors_[f];
    const std::uint64_t ma = ext_mask(a, f), mb = ext_mask(b, f);
    const std::uint64_t common = ma & mb;
    if (common & ~fa.exceptional) return std::nullopt;
    // Each shared exceptional generator contributes x^{n1}; truncate last.
    const Nat n1 = fa.tuple.first();
    const Nat x = x_exp(a, f) + x_exp(b, f) + n1 * static_cast<Nat>(std::popcount(common));
    if (x > n1) return std::nullopt;
    out |= (x << fa.x_shift) | ((ma | mb) << fa.mask_shift);
  }
  return Monomial{out};
}

std::uint64_t Ring::total_rank() const {
  std::uint64_t rank = 1;
  for (const auto& f : factors_) rank *= (f.tuple.first() + 1) << f.mask_bits;
  return rank;
}

std::string Ring::render(Monomial m) const {
  std::string s;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const char letter = kLetters[f];
    const Nat x = x_exp(m, f);
    auto append = [&s](const std::string& piece) {
      if (!s.empty()) s += '*';
      s += piece;
    };
    if (x == 1) append(std::string(1, letter));
    if (x > 1) append(std::string(1, letter) + "^" + std::to_string(x));
    for (std::uint64_t mask = ext_mask(m, f); mask; mask &= mask - 1)
      append(std::string(1, letter) + std::to_string(std::countr_zero(mask) + 2));
  }
  return s.empty() ? "1" : s;
}

RingElement::RingElement(RingPtr ring, std::vector<Monomial> terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
  normalize(terms_);
}

RingElement RingElement::one(RingPtr ring) {
  auto m = ring->one();
  return RingElement(std::move(ring), {m});
}

RingElement RingElement::monomial(RingPtr ring, Monomial m) {
  return RingElement(std::move(ring), {m});
}

std::optional<Nat> RingElement::degree() const {
  if (terms_.empty()) return std::nullopt;
  const Nat d = ring_->degree(terms_.front());
  for (auto m : terms_)
    if (ring_->degree(m) != d) return std::nullopt;
  return d;
}

RingElement RingElement::homogeneous_part(Nat d) const {
  std::vector<Monomial> kept;
  for (auto m : terms_)
    if (ring_->degree(m) == d) kept.push_back(m);
  return RingElement(ring_, std::move(kept));
}

RingElement RingElement::pow(Nat exponent) const {
  RingElement result = one(ring_);
  RingElement base = *this;
  while (exponent) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  auto ordered = terms_;
  std::stable_sort(ordered.begin(), ordered.end(), [this](Monomial a, Monomial b) {
    return ring_->degree(a) < ring_->degree(b);
  });
  std::string s;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (i) s += " + ";
    s += ring_->render(ordered[i]);
  }
  return s;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  std::vector<Monomial> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::set_symmetric_difference(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                b.terms_.end(), std::back_inserter(out));
  RingElement r(a.ring_);
  r.terms_ = std::move(out);
  return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_ring(a.ring_, b.ring_);
  std::vector<Monomial> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (auto ma : a.terms_)
    for (auto mb : b.terms_)
      if (auto m = a.ring_->multiply(ma, mb)) out.push_back(*m);
  return RingElement(a.ring_, std::move(out));
}

bool operator==(const RingElement& a, const RingElement& b) {
  return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.terms_ == b.terms_;
}

RingElement RingElement::parse(RingPtr ring, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto fail = [&text]() {
    return std::invalid_argument("malformed ring element '" + std::string(text) + "'");
  };
  auto read_number = [&](std::string_view& s) {
    std::size_t n = 0;
    while (n < s.size() && std::isdigit(static_cast<unsigned char>(s[n]))) ++n;
    if (n == 0) throw fail();
    Nat v = 0;
    std::from_chars(s.data(), s.data() + n, v);
    s.remove_prefix(n);
    return v;
  };

  RingElement sum(ring);
  text = trim(text);
  if (text == "0") return sum;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto plus = text.find('+', pos);
    auto term = trim(text.substr(pos, plus == text.npos ? text.npos : plus - pos));
    if (term.empty()) throw fail();
    RingElement product = one(ring);
    if (term != "1") {
      std::size_t tpos = 0;
      while (tpos <= term.size()) {
        auto star = term.find('*', tpos);
        auto tok = trim(term.substr(tpos, star == term.npos ? term.npos : star - tpos));
        if (tok.empty()) throw fail();
        auto letter = kLetters.find(tok.front());
        if (letter == kLetters.npos || letter >= ring->factor_count()) throw fail();
        tok.remove_prefix(1);
        RingElement gen = gen_x(ring, letter);
        if (!tok.empty() && std::isdigit(static_cast<unsigned char>(tok.front()))) {
          const Nat i = read_number(tok);
          if (i < 2 || i > ring->factor(letter).length()) throw fail();
          gen = gen_ext(ring, static_cast<std::size_t>(i), letter);
        }
        Nat e = 1;
        if (!tok.empty()) {
          if (tok.front() != '^') throw fail();
          tok.remove_prefix(1);
          e = read_number(tok);
          if (!tok.empty()) throw fail();
        }
        product *= gen.pow(e);
        if (star == term.npos) break;
        tpos = star + 1;
      }
    }
    sum += product;
    if (plus == text.npos) break;
    pos = plus + 1;
  }
  return sum;
}

RingElement gen_x(const RingPtr& ring, std::size_t f) {
  return RingElement::monomial(ring, ring->make(f, 1, 0));
}

RingElement gen_ext(const RingPtr& ring, std::size_t i, std::size_t f) {
  if (i < 2 || i > ring->factor(f).length())
    throw std::out_of_range("exterior generator index out of range");
  return RingElement::monomial(ring, ring->make(f, 0, std::uint64_t{1} << (i - 2)));
}

RingElement embed(const RingElement& a, const RingPtr& product, std::size_t offset) {
  const Ring& src = *a.ring();
  if (offset + src.factor_count() > product->factor_count())
    throw std::invalid_argument("embed: factor slots out of range");
  for (std::size_t f = 0; f < src.factor_count(); ++f)
    if (!(src.factor(f) == product->factor(offset + f)))
      throw std::invalid_argument("embed: factor mismatch");
  std::vector<Monomial> terms;
  for (auto m : a.terms()) {
    Monomial out = product->one();
    for (std::size_t f = 0; f < src.factor_count(); ++f)
      out = product->combine(out, product->make(offset + f, src.x_exp(m, f), src.ext_mask(m, f)));
    terms.push_back(out);
  }
  return RingElement(product, std::move(terms));
}

RingElement tensor(const RingElement& a, const RingElement& b, const RingPtr& product) {
  return embed(a, product, 0) * embed(b, product, a.ring()->factor_count());
}

std::vector<Monomial> basis(const Ring& ring, Nat degree) {
  for (std::size_t f = 0; f < ring.factor_count(); ++f) require_exhaustive_capacity(ring.factor(f));
  // Per-factor monomials with their degrees, then a degree-pruned product.
  std::vector<std::vector<std::pair<Nat, Monomial>>> per_factor(ring.factor_count());
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const auto& t = ring.factor(f);
    const std::uint64_t masks = std::uint64_t{1} << (t.length() - 1);
    for (std::uint64_t mask = 0; mask < masks; ++mask)
      for (Nat x = 0; x <= t.first(); ++x) {
        auto m = ring.make(f, x, mask);
        per_factor[f].emplace_back(ring.degree(m), m);
      }
  }
  std::vector<Monomial> out;
  auto recurse = [&](auto&& self, std::size_t f, Nat remaining, Monomial acc) -> void {
    if (f == per_factor.size()) {
      if (remaining == 0) out.push_back(acc);
      return;
    }
    for (auto [d, m] : per_factor[f])
      if (d <= remaining) self(self, f + 1, remaining - d, ring.combine(acc, m));
  };
  recurse(recurse, 0, degree, ring.one());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> poincare_series(const Ring& ring) {
  std::vector<std::uint64_t> series{1};
  auto convolve = [&series](const std::vector<std::uint64_t>& other) {
    std::vector<std::uint64_t> out(series.size() + other.size() - 1, 0);
    for (std::size_t i = 0; i < series.size(); ++i)
      for (std::size_t j = 0; j < other.size(); ++j) out[i + j] += series[i] * other[j];
    series = std::move(out);
  };
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const auto& t = ring.factor(f);
    convolve(std::vector<std::uint64_t>(t.first() + 1, 1));
    for (std::size_t i = 1; i < t.length(); ++i) {
      std::vector<std::uint64_t> sphere(t[i] + 1, 0);
      sphere.front() = sphere.back() = 1;
      convolve(sphere);
    }
  }
  return series;
}

RingElement restrict_to_base(const RingElement& a) {
  const Ring& src = *a.ring();
  if (src.factor_count() != 1) throw std::invalid_argument("restrict_to_base: single-factor ring required");
  auto base = Ring::truncated_projective(src.factor(0).first());
  std::vector<Monomial> terms;
  for (auto m : a.terms())
    if (src.ext_mask(m, 0) == 0) terms.push_back(base->make(0, src.x_exp(m, 0), 0));
  return RingElement(base, std::move(terms));
}

}  // namespace pps
