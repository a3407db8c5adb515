// Copyright 2026 The mtlcheck Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mtlcheck {

using Timestamp = std::int64_t;

class IntervalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A non-empty interval over the naturals. Endpoints may be open or closed;
/// the upper endpoint may be unbounded (always open). Time is discrete, so an
/// interval denotes the set of naturals it contains and must contain at least
/// one of them.
class Interval {
 public:
  /// [0, inf)
  Interval() = default;

  static Interval make(Timestamp lower, std::optional<Timestamp> upper,
                       bool lower_closed, bool upper_closed) {
    Interval i;
    i.lower_ = lower;
    i.upper_ = upper;
    i.lower_closed_ = lower_closed;
    i.upper_closed_ = upper ? upper_closed : false;
    i.validate();
    return i;
  }

  static Interval closed(Timestamp lower, Timestamp upper) {
    return make(lower, upper, true, true);
  }
  static Interval exactly(Timestamp at) { return make(at, at, true, true); }
  static Interval from(Timestamp lower, bool lower_closed = true) {
    return make(lower, std::nullopt, lower_closed, false);
  }

  Timestamp lower() const { return lower_; }
  const std::optional<Timestamp>& upper() const { return upper_; }
  bool lower_closed() const { return lower_closed_; }
  bool upper_closed() const { return upper_closed_; }
  bool bounded() const { return upper_.has_value(); }

  /// Smallest natural in the interval.
  Timestamp min_member() const { return lower_closed_ ? lower_ : lower_ + 1; }
  /// Largest natural in the interval, if bounded.
  std::optional<Timestamp> max_member() const {
    if (!upper_) return std::nullopt;
    return upper_closed_ ? *upper_ : *upper_ - 1;
  }

  bool contains(Timestamp t) const {
    if (t < min_member()) return false;
    auto hi = max_member();
    return !hi || t <= *hi;
  }

  bool is_point() const {
    return upper_ && lower_ == *upper_ && lower_closed_ && upper_closed_;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

  /// "[3,7]", "(30,100)", "=4", "[0,inf)".
  std::string to_string() const {
    if (is_point()) return "=" + std::to_string(lower_);
    std::string s;
    s += lower_closed_ ? '[' : '(';
    s += std::to_string(lower_);
    s += ',';
    if (upper_) {
      s += std::to_string(*upper_);
      s += upper_closed_ ? ']' : ')';
    } else {
      s += "inf)";
    }
    return s;
  }

 private:
  void validate() const {
    if (lower_ < 0 || (upper_ && *upper_ < 0))
      throw IntervalError("interval bounds must be non-negative");
    if (upper_ && min_member() > *max_member())
      throw IntervalError("empty interval " + to_string());
  }

  Timestamp lower_ = 0;
  std::optional<Timestamp> upper_;
  bool lower_closed_ = true;
  bool upper_closed_ = false;
};

inline bool interval_member(Timestamp t, const Interval& i) { return i.contains(t); }

/// Minkowski sum {i + j}. An endpoint is closed iff both contributing
/// endpoints are closed. When both are open the bound moves by one so the
/// result still denotes exactly the set of integer sums.
inline Interval interval_oplus(const Interval& a, const Interval& b) {
  int open_lo = int(!a.lower_closed()) + int(!b.lower_closed());
  Timestamp lo = a.lower() + b.lower() + (open_lo == 2 ? 1 : 0);
  std::optional<Timestamp> hi;
  bool hi_closed = false;
  if (a.bounded() && b.bounded()) {
    int open_hi = int(!a.upper_closed()) + int(!b.upper_closed());
    hi = *a.upper() + *b.upper() - (open_hi == 2 ? 1 : 0);
    hi_closed = open_hi == 0;
  }
  return Interval::make(lo, hi, open_lo == 0, hi_closed);
}

class DisjointIntervalsError : public IntervalError {
 public:
  using IntervalError::IntervalError;
};

/// Union of two intervals sharing at least one natural.
inline Interval interval_overlap_union(const Interval& a, const Interval& b) {
  auto a_hi = a.max_member(), b_hi = b.max_member();
  Timestamp lo_common = std::max(a.min_member(), b.min_member());
  bool overlap = (!a_hi || lo_common <= *a_hi) && (!b_hi || lo_common <= *b_hi);
  if (!overlap)
    throw DisjointIntervalsError("intervals " + a.to_string() + " and " + b.to_string() +
                                 " do not overlap");
  const Interval& lo_src = a.min_member() <= b.min_member() ? a : b;
  std::optional<Timestamp> hi;
  bool hi_closed = false;
  if (a_hi && b_hi) {
    const Interval& hi_src = *a_hi >= *b_hi ? a : b;
    hi = hi_src.upper();
    hi_closed = hi_src.upper_closed();
  }
  return Interval::make(lo_src.lower(), hi, lo_src.lower_closed(), hi_closed);
}

/// Convex hull of {0} and the interval.
inline Interval convex_union_with_zero(const Interval& i) {
  return Interval::make(0, i.upper(), true, i.upper_closed());
}

}  // namespace mtlcheck
