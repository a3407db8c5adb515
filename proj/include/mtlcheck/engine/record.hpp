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
#include <istream>
#include <ostream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mtlcheck/formula_table.hpp"
#include "mtlcheck/interval.hpp"

namespace mtlcheck::engine {

/// Child id of the virtual-instant marker records.
inline constexpr NodeId kActMarker = 0xFFFFFFFFu;

/// (key, (child, truth, ts)). Outputs of a reducer carry child == key.
struct KVRecord {
  NodeId key = 0;
  NodeId child = 0;
  Timestamp ts = 0;
  bool truth = false;

  bool is_marker() const { return child == kActMarker; }
  friend bool operator==(const KVRecord&, const KVRecord&) = default;
};

/// In-memory size of one record; used for the byte estimates in benchmarks.
inline constexpr std::size_t kRecordBytes = sizeof(KVRecord);
static_assert(kRecordBytes == 24);

/// Shuffle order: key, then timestamp descending, then real records before
/// markers, then child id.
inline bool shuffle_less(const KVRecord& a, const KVRecord& b) {
  if (a.key != b.key) return a.key < b.key;
  if (a.ts != b.ts) return a.ts > b.ts;
  if (a.is_marker() != b.is_marker()) return !a.is_marker();
  if (a.child != b.child) return a.child < b.child;
  return a.truth < b.truth;
}

/// Drops markers at timestamps that carry a real record and keeps one record
/// per (child, timestamp). Input must be in shuffle order for a single key.
inline std::vector<KVRecord> check_dup(const std::vector<KVRecord>& in) {
  std::vector<KVRecord> out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size();) {
    std::size_t j = i;
    while (j < in.size() && in[j].ts == in[i].ts) ++j;
    bool real = false;
    for (std::size_t k = i; k < j; ++k) {
      const KVRecord& r = in[k];
      if (r.is_marker()) {
        if (real) continue;
        if (!out.empty() && out.back().ts == r.ts && out.back().is_marker()) continue;
        out.push_back(r);
        continue;
      }
      real = true;
      if (!out.empty() && out.back().ts == r.ts && out.back().child == r.child) continue;
      out.push_back(r);
    }
    i = j;
  }
  return out;
}

// Spill framing: key varint, child varint, one truth byte, timestamp varint.

inline void put_varint(std::ostream& os, std::uint64_t v) {
  char buf[10];
  int n = 0;
  do {
    std::uint8_t b = v & 0x7F;
    v >>= 7;
    if (v) b |= 0x80;
    buf[n++] = static_cast<char>(b);
  } while (v);
  os.write(buf, n);
}

/// Returns false at a clean end of stream.
inline bool get_varint(std::istream& is, std::uint64_t& v, bool first) {
  v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    int c = is.get();
    if (c == std::char_traits<char>::eof()) {
      if (first && shift == 0) return false;
      throw std::runtime_error("spill file truncated");
    }
    v |= std::uint64_t(c & 0x7F) << shift;
    if (!(c & 0x80)) return true;
  }
  throw std::runtime_error("spill file: varint too long");
}

inline void write_record(std::ostream& os, const KVRecord& r) {
  put_varint(os, r.key);
  put_varint(os, r.child);
  os.put(r.truth ? 1 : 0);
  put_varint(os, static_cast<std::uint64_t>(r.ts));
}

inline bool read_record(std::istream& is, KVRecord& r) {
  std::uint64_t v;
  if (!get_varint(is, v, true)) return false;
  r.key = static_cast<NodeId>(v);
  get_varint(is, v, false);
  r.child = static_cast<NodeId>(v);
  int t = is.get();
  if (t == std::char_traits<char>::eof()) throw std::runtime_error("spill file truncated");
  r.truth = t != 0;
  get_varint(is, v, false);
  r.ts = static_cast<Timestamp>(v);
  return true;
}

}  // namespace mtlcheck::engine
