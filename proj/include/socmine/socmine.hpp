// Copyright 2026 The socmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "socmine/error.hpp"
#include "socmine/evaluator.hpp"
#include "socmine/miner_alternating.hpp"
#include "socmine/miner_episode.hpp"
#include "socmine/miner_flow.hpp"
#include "socmine/miner_ltl.hpp"
#include "socmine/miner_seqpat.hpp"
#include "socmine/miners.hpp"
#include "socmine/trace_generator.hpp"
#include "socmine/trace_io.hpp"
#include "socmine/trace_model.hpp"
