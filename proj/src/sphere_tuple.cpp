#include "pps/sphere_tuple.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace pps {

SphereTuple::SphereTuple(std::vector<Nat> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("sphere tuple must be nonempty");
  for (Nat n : entries_) {
    if (n == 0) throw std::invalid_argument("sphere dimensions must be positive");
    detail::check_range(n, "SphereTuple");
  }
  if (!std::is_sorted(entries_.begin(), entries_.end()))
    throw std::invalid_argument("sphere tuple must be nondecreasing, got " + to_string());
}

SphereTuple SphereTuple::parse(std::string_view text) {
  std::vector<Nat> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    auto token = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    Nat value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      throw std::invalid_argument("malformed sphere tuple '" + std::string(text) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return SphereTuple(std::move(out));
}

Nat SphereTuple::dim() const { return std::accumulate(entries_.begin(), entries_.end(), Nat{0}); }

Nat SphereTuple::even_count() const {
  return static_cast<Nat>(std::count_if(entries_.begin() + 1, entries_.end(),
                                        [](Nat n) { return n % 2 == 0; }));
}

SphereTuple SphereTuple::without(const std::vector<std::size_t>& positions) const {
  std::vector<Nat> kept;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (std::find(positions.begin(), positions.end(), i) == positions.end())
      kept.push_back(entries_[i]);
  return SphereTuple(std::move(kept));
}

SphereTuple SphereTuple::prefix(std::size_t count) const {
  return SphereTuple(std::vector<Nat>(entries_.begin(), entries_.begin() + count));
}

std::string SphereTuple::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s;
}

void require_exhaustive_capacity(const SphereTuple& t) {
  if (t.length() > kMaxLength)
    throw CapacityError("capacity exceeded: l(n) = " + std::to_string(t.length()) +
                        " > " + std::to_string(kMaxLength) + " (cap r <= 16)");
  if (t.dim() > kMaxDim)
    throw CapacityError("capacity exceeded: |n| = " + std::to_string(t.dim()) + " > " +
                        std::to_string(kMaxDim) + " (cap |n| <= 64)");
}

}  // namespace pps
