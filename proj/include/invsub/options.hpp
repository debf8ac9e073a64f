/* Copyright 2026 The invsub Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <iosfwd>

#include "invsub/subspaces.hpp"

namespace invsub {

/// Knobs shared by the exhaustive drivers.
struct RunOptions {
  unsigned workers = 1;
  std::uint64_t cap = kDefaultSubspaceCap;
  /// Per-dimension counters are written here when set.
  std::ostream* progress = nullptr;
};

}  // namespace invsub
