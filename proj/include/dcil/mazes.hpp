// Copyright 2026 The DCIL Authors
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

// Built-in maze layouts. maps/*.txt are generated from these and the test
// suite checks that the files and the builders agree.

#pragma once

#include "dcil/env.hpp"

namespace dcil {

/// S-shaped 6x6 maze: three 2-unit-tall corridors stacked vertically and
/// joined by 1-unit openings at alternating ends. 23 zones follow the
/// corridor: 8 slices in the bottom row (west to east), 7 in the middle row
/// (east to west) and 8 in the top row (west to east).
inline MazeMap canonical_maze() {
  MazeMap m;
  m.name = "canonical-s-maze";
  m.bounds = {0.0, 0.0, 6.0, 6.0};
  m.walls = {
      {0.0, 2.0, 5.0, 2.0, 0.1},
      {1.0, 4.0, 6.0, 4.0, 0.1},
  };
  m.start = {0.5, 1.0, 0.0};
  m.exit = {5.65, 5.0};
  for (int i = 0; i < 8; ++i) m.zones.push_back({0.75 * i, 0.0, 0.75 * (i + 1), 2.0});
  const double w = 6.0 / 7.0;
  for (int i = 0; i < 7; ++i) {
    const double xmax = i == 0 ? 6.0 : 6.0 - w * i;
    const double xmin = i == 6 ? 0.0 : 6.0 - w * (i + 1);
    m.zones.push_back({xmin, 2.0, xmax, 4.0});
  }
  for (int i = 0; i < 8; ++i) m.zones.push_back({0.75 * i, 4.0, 0.75 * (i + 1), 6.0});
  return m;
}

/// Two-skill diagnostic: an open lower room and a narrow corridor leading
/// north out of it. Arriving at the corridor's axis with the wrong heading
/// leaves the corridor out of reach within the second skill's budget.
inline MazeMap two_skill_maze() {
  MazeMap m;
  m.name = "two-skill-maze";
  m.bounds = {0.0, 0.0, 4.0, 3.0};
  m.walls = {
      {0.0, 2.0, 2.3, 2.0, 0.1},
      {2.7, 2.0, 4.0, 2.0, 0.1},
      {2.3, 2.0, 2.3, 3.0, 0.1},
      {2.7, 2.0, 2.7, 3.0, 0.1},
  };
  m.start = {1.0, 0.5, 0.0};
  m.exit = {2.5, 2.8};
  m.zones = {
      {0.0, 0.0, 2.0, 2.0},
      {2.0, 0.0, 4.0, 2.0},
      {0.0, 2.0, 4.0, 3.0},
  };
  return m;
}

}  // namespace dcil
