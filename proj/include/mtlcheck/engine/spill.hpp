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

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "mtlcheck/engine/record.hpp"

namespace mtlcheck::engine {

/// Scratch directory for spilled record stores; removed on destruction.
/// The parent is MTLCHECK_TMPDIR when set, else the system temp directory.
class SpillDir {
 public:
  explicit SpillDir(std::string parent = {}) : parent_(std::move(parent)) {}
  SpillDir(const SpillDir&) = delete;
  SpillDir& operator=(const SpillDir&) = delete;
  ~SpillDir() {
    if (!path_.empty()) {
      std::error_code ec;
      std::filesystem::remove_all(path_, ec);
    }
  }

  std::filesystem::path file(const std::string& name) {
    if (path_.empty()) create();
    return path_ / name;
  }

 private:
  void create() {
    std::filesystem::path base;
    if (!parent_.empty()) {
      base = parent_;
    } else if (const char* env = std::getenv("MTLCHECK_TMPDIR"); env && *env) {
      base = env;
    } else {
      base = std::filesystem::temp_directory_path();
    }
    std::random_device rd;
    for (int attempt = 0; attempt < 16; ++attempt) {
      auto candidate = base / ("mtlcheck-" + std::to_string(rd()) + std::to_string(counter_++));
      std::error_code ec;
      if (std::filesystem::create_directories(candidate, ec)) {
        path_ = candidate;
        return;
      }
      if (ec) throw std::runtime_error("cannot create spill directory under " + base.string());
    }
    throw std::runtime_error("cannot create spill directory under " + base.string());
  }

  static inline std::atomic<unsigned> counter_{0};
  std::string parent_;
  std::filesystem::path path_;
};

inline void spill_records(const std::filesystem::path& path, const std::vector<KVRecord>& recs) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write spill file " + path.string());
  for (const auto& r : recs) write_record(os, r);
  if (!os) throw std::runtime_error("write failed on spill file " + path.string());
}

inline std::vector<KVRecord> load_records(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read spill file " + path.string());
  std::vector<KVRecord> out;
  KVRecord r;
  while (read_record(is, r)) out.push_back(r);
  return out;
}

}  // namespace mtlcheck::engine
