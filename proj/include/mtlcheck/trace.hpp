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

// Trace files hold one element per line: a positive decimal timestamp followed
// by whitespace-separated atom names. Blank lines and lines starting with '#'
// are skipped.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtlcheck/interval.hpp"

namespace mtlcheck {

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Element {
  std::vector<std::string> atoms;  // sorted, unique
  Timestamp ts = 0;

  bool has(std::string_view atom) const {
    return std::binary_search(atoms.begin(), atoms.end(), atom);
  }
  friend bool operator==(const Element&, const Element&) = default;
};

class TimedWord {
 public:
  TimedWord() = default;
  explicit TimedWord(std::vector<Element> elements) : elements_(std::move(elements)) {
    for (auto& e : elements_) normalize(e);
    validate();
  }

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }
  friend bool operator==(const TimedWord&, const TimedWord&) = default;
  Timestamp ts(std::size_t i) const { return elements_[i].ts; }
  Timestamp last_ts() const { return elements_.back().ts; }

  /// Index of the position with timestamp t, or size() if none.
  std::size_t position_at(Timestamp t) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), t,
                               [](const Element& e, Timestamp v) { return e.ts < v; });
    if (it == elements_.end() || it->ts != t) return elements_.size();
    return static_cast<std::size_t>(it - elements_.begin());
  }
  bool has_position_at(Timestamp t) const { return position_at(t) < elements_.size(); }

 private:
  static void normalize(Element& e) {
    std::sort(e.atoms.begin(), e.atoms.end());
    e.atoms.erase(std::unique(e.atoms.begin(), e.atoms.end()), e.atoms.end());
  }
  void validate() const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (elements_[i].ts <= 0)
        throw TraceError("element " + std::to_string(i) + ": timestamp must be positive");
      if (i > 0 && elements_[i].ts <= elements_[i - 1].ts)
        throw TraceError("element " + std::to_string(i) + ": non-monotonic timestamp " +
                         std::to_string(elements_[i].ts));
    }
  }

  std::vector<Element> elements_;
};

namespace detail {

/// Parses one line. Returns false for blank and comment lines.
inline bool parse_trace_line(std::string_view line, Element& out, std::size_t line_no) {
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  std::size_t p = 0;
  while (p < line.size() && is_ws(line[p])) ++p;
  if (p == line.size() || line[p] == '#') return false;

  auto next_token = [&]() -> std::string_view {
    while (p < line.size() && is_ws(line[p])) ++p;
    std::size_t s = p;
    while (p < line.size() && !is_ws(line[p])) ++p;
    return line.substr(s, p - s);
  };

  std::string_view ts_tok = next_token();
  Timestamp ts = 0;
  auto [ptr, ec] = std::from_chars(ts_tok.data(), ts_tok.data() + ts_tok.size(), ts);
  if (ec != std::errc() || ptr != ts_tok.data() + ts_tok.size() || ts_tok[0] == '-')
    throw TraceError("line " + std::to_string(line_no) + ": malformed timestamp '" +
                     std::string(ts_tok) + "'");
  if (ts <= 0)
    throw TraceError("line " + std::to_string(line_no) + ": timestamp must be positive");
  out.ts = ts;
  out.atoms.clear();
  for (std::string_view tok = next_token(); !tok.empty(); tok = next_token()) {
    if (tok[0] == '#') break;
    out.atoms.emplace_back(tok);
  }
  std::sort(out.atoms.begin(), out.atoms.end());
  out.atoms.erase(std::unique(out.atoms.begin(), out.atoms.end()), out.atoms.end());
  return true;
}

}  // namespace detail

inline TimedWord parse_trace_text(std::string_view text) {
  std::vector<Element> elements;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    Element e;
    if (detail::parse_trace_line(text.substr(start, end - start), e, line_no)) {
      if (!elements.empty() && e.ts <= elements.back().ts)
        throw TraceError("line " + std::to_string(line_no) + ": non-monotonic timestamp " +
                         std::to_string(e.ts));
      elements.push_back(std::move(e));
    }
    start = end + 1;
  }
  if (elements.empty()) throw TraceError("empty trace");
  return TimedWord(std::move(elements));
}

inline TimedWord parse_trace(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw TraceError("read error");
  return parse_trace_text(text);
}

inline TimedWord load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError("cannot open trace file '" + path + "'");
  return parse_trace(in);
}

inline std::string format_trace(const TimedWord& w) {
  std::ostringstream os;
  for (const auto& e : w.elements()) {
    os << e.ts;
    for (const auto& a : e.atoms) os << ' ' << a;
    os << '\n';
  }
  return os.str();
}

}  // namespace mtlcheck
