// Copyright 2026 The dashmip Authors.
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

// Free-format MPS reader and writer.
//
// Supported sections: NAME, OBJSENSE, ROWS, COLUMNS (with INTORG/INTEND
// markers), RHS, RANGES, BOUNDS (UP LO FX FR MI PL BV LI UI), ENDATA.
// Fixed-format files whose names contain no blanks parse as well.
//
// Conventions:
//  * objective sense is minimize unless OBJSENSE says otherwise;
//  * integer variables without any bound entry become binary, [0, 1];
//  * an integer variable whose bounds end up as [0, 1] is reported as binary;
//  * continuous variables default to [0, +inf);
//  * a ranged row is split into a GE row (original name) and a LE row named
//    "<name>_rng";
//  * an RHS entry on the objective row sets objective_offset = -value.

#ifndef DASH_MPS_H_
#define DASH_MPS_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dash/mip_problem.h"

namespace dash {

class MpsError : public std::runtime_error {
 public:
  MpsError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

MipProblem ParseMps(std::string_view text);
MipProblem ReadMpsFile(const std::string& path);

// Canonical writer; ParseMps(WriteMps(p)) == p for any problem produced by
// ParseMps.
std::string WriteMps(const MipProblem& problem);
void WriteMpsFile(const MipProblem& problem, const std::string& path);

// Sorted paths of the *.mps files directly inside `directory`.
std::vector<std::string> ListMpsFiles(const std::string& directory);

// File name without directory and extension, used as the instance id.
std::string InstanceName(const std::string& path);

}  // namespace dash

#endif  // DASH_MPS_H_
