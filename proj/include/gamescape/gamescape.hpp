// Copyright 2026 The Gamescape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the whole library.

#ifndef GAMESCAPE_GAMESCAPE_HPP_
#define GAMESCAPE_GAMESCAPE_HPP_

#include "gamescape/analytics.hpp"
#include "gamescape/eigen.hpp"
#include "gamescape/eval.hpp"
#include "gamescape/games.hpp"
#include "gamescape/hodge.hpp"
#include "gamescape/io.hpp"
#include "gamescape/lp.hpp"
#include "gamescape/matrix.hpp"
#include "gamescape/metrics.hpp"
#include "gamescape/nash.hpp"
#include "gamescape/oracles.hpp"
#include "gamescape/psro.hpp"
#include "gamescape/rng.hpp"
#include "gamescape/types.hpp"

#endif  // GAMESCAPE_GAMESCAPE_HPP_
