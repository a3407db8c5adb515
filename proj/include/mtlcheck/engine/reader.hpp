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
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtlcheck/engine/plan.hpp"
#include "mtlcheck/engine/record.hpp"
#include "mtlcheck/trace.hpp"

namespace mtlcheck::engine {

struct Block {
  std::size_t offset = 0;
  std::string_view text;
};

/// Cuts the trace into blocks of roughly `block_bytes`, each ending at a line
/// break (or the end of input).
inline std::vector<Block> split_blocks(std::string_view text, std::size_t block_bytes) {
  std::vector<Block> blocks;
  if (block_bytes == 0) block_bytes = 1;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = std::min(text.size(), start + block_bytes);
    if (end < text.size()) {
      std::size_t nl = text.find('\n', end - 1);
      end = nl == std::string_view::npos ? text.size() : nl + 1;
    }
    blocks.push_back(Block{start, text.substr(start, end - start)});
    start = end;
  }
  return blocks;
}

struct BlockOutput {
  std::vector<std::vector<KVRecord>> by_leaf;  // indexed like ReaderLeaves::ids
  std::size_t elements = 0;
  std::optional<Timestamp> first_ts, last_ts;
};

/// Leaf nodes the reader emits records for.
struct ReaderLeaves {
  std::vector<NodeId> ids;
  std::vector<Formula> formulas;

  explicit ReaderLeaves(const JobPlan& plan) {
    for (NodeId id = 0; id < plan.table.node_count(); ++id) {
      const Formula& f = plan.table.formula(id);
      if (is_leaf(f.op())) {
        ids.push_back(id);
        formulas.push_back(f);
      }
    }
  }
};

/// Emits one record per element and leaf: (p, (p, p in sigma, tau)). Act and
/// constants are emitted as true and as their value.
inline BlockOutput input_read(const Block& block, const ReaderLeaves& leaves) {
  BlockOutput out;
  out.by_leaf.resize(leaves.ids.size());
  std::size_t line_no = 0;
  std::size_t start = 0;
  const std::string_view text = block.text;
  Element e;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    bool has = false;
    try {
      has = detail::parse_trace_line(text.substr(start, end - start), e, line_no);
    } catch (const TraceError& err) {
      throw TraceError("block at byte " + std::to_string(block.offset) + ": " + err.what());
    }
    start = end + 1;
    if (!has) continue;
    if (out.last_ts && e.ts <= *out.last_ts)
      throw TraceError("block at byte " + std::to_string(block.offset) + ": line " +
                       std::to_string(line_no) + ": non-monotonic timestamp " +
                       std::to_string(e.ts));
    if (!out.first_ts) out.first_ts = e.ts;
    out.last_ts = e.ts;
    ++out.elements;
    for (std::size_t i = 0; i < leaves.ids.size(); ++i) {
      const Formula& f = leaves.formulas[i];
      bool v = f.op() == Op::Atom ? e.has(f.name()) : f.op() == Op::Act ? true : f.value();
      out.by_leaf[i].push_back(KVRecord{leaves.ids[i], leaves.ids[i], e.ts, v});
    }
  }
  return out;
}

}  // namespace mtlcheck::engine
