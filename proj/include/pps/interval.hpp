#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "pps/arith.hpp"

namespace pps {

/// A certified integer range [lo, hi]; an absent hi means no upper bound is known.
struct Interval {
  Nat lo = 0;
  std::optional<Nat> hi;

  Interval() = default;
  Interval(Nat lo_, std::optional<Nat> hi_) : lo(lo_), hi(hi_) {
    if (hi && *hi < lo)
      throw std::logic_error("interval with hi " + std::to_string(*hi) + " < lo " +
                             std::to_string(lo));
  }
  static Interval exact(Nat v) { return {v, v}; }

  bool is_exact() const { return hi && *hi == lo; }
  bool contains(Nat v) const { return v >= lo && (!hi || v <= *hi); }
  std::string to_string() const {
    return "[" + std::to_string(lo) + ", " + (hi ? std::to_string(*hi) : std::string("inf")) + "]";
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace pps
