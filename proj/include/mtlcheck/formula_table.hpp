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
#include <string>
#include <unordered_map>
#include <vector>

#include "mtlcheck/formula.hpp"

namespace mtlcheck {

using NodeId = std::uint32_t;

/// Structural tables for a root formula. Structurally equal subformulae share
/// one id. Ids are assigned in post-order, so children precede parents and the
/// root has the largest id.
class FormulaTable {
 public:
  FormulaTable() = default;
  explicit FormulaTable(const Formula& root) { root_ = add(root); }

  NodeId root() const { return root_; }
  std::size_t node_count() const { return nodes_.size(); }
  /// |Φ|: number of distinct subformulae including Φ itself.
  std::size_t size() const { return nodes_.size(); }

  const Formula& formula(NodeId id) const { return nodes_[id]; }
  int height(NodeId id) const { return height_[id]; }
  int height() const { return nodes_.empty() ? 0 : height_[root_]; }
  /// Direct syntactic subformulae as a set (left before right).
  const std::vector<NodeId>& sub_d(NodeId id) const { return sub_d_[id]; }
  /// Nodes having `id` among their direct subformulae.
  const std::vector<NodeId>& sup(NodeId id) const { return sup_[id]; }

  /// Proper subformulae of the root.
  std::vector<NodeId> sub() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < nodes_.size(); ++i)
      if (i != root_) out.push_back(i);
    return out;
  }

  /// Atomic subformulae of the root.
  std::vector<NodeId> sub_a() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].op() == Op::Atom) out.push_back(i);
    return out;
  }

  std::optional<NodeId> find(const Formula& f) const {
    auto it = ids_.find(f);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  /// Adds a formula (and its subformulae) without changing the root. Used to
  /// register auxiliary leaves such as Act.
  NodeId intern(const Formula& f) { return add(f); }

  /// Nodes of a given height, ascending id.
  std::vector<NodeId> at_height(int h) const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < nodes_.size(); ++i)
      if (height_[i] == h) out.push_back(i);
    return out;
  }

 private:
  NodeId add(const Formula& f) {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    std::vector<NodeId> kids;
    int h = 1;
    if (!is_leaf(f.op())) {
      kids.push_back(add(f.left()));
      if (f.arity() == 2) {
        NodeId r = add(f.right());
        if (r != kids[0]) kids.push_back(r);
      }
      for (NodeId k : kids) h = std::max(h, height_[k] + 1);
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(f);
    height_.push_back(h);
    sup_.emplace_back();
    for (NodeId k : kids) {
      if (std::find(sup_[k].begin(), sup_[k].end(), id) == sup_[k].end()) sup_[k].push_back(id);
    }
    sub_d_.push_back(std::move(kids));
    ids_.emplace(f, id);
    return id;
  }

  NodeId root_ = 0;
  std::vector<Formula> nodes_;
  std::vector<int> height_;
  std::vector<std::vector<NodeId>> sub_d_;
  std::vector<std::vector<NodeId>> sup_;
  std::unordered_map<Formula, NodeId, FormulaHash> ids_;
};

inline FormulaTable analyze(const Formula& root) { return FormulaTable(root); }

}  // namespace mtlcheck
