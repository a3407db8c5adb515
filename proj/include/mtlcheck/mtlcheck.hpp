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

#include "mtlcheck/bench.hpp"
#include "mtlcheck/engine/plan.hpp"
#include "mtlcheck/engine/reader.hpp"
#include "mtlcheck/engine/record.hpp"
#include "mtlcheck/engine/reducers.hpp"
#include "mtlcheck/engine/run.hpp"
#include "mtlcheck/engine/spill.hpp"
#include "mtlcheck/engine/thread_pool.hpp"
#include "mtlcheck/evaluators.hpp"
#include "mtlcheck/formula.hpp"
#include "mtlcheck/formula_table.hpp"
#include "mtlcheck/generator.hpp"
#include "mtlcheck/interval.hpp"
#include "mtlcheck/parser.hpp"
#include "mtlcheck/trace.hpp"
#include "mtlcheck/transforms.hpp"
