// Copyright 2026 The erbox Authors
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

// Builds the three canonical boxes, checks them, and prints the cost/value
// table.

#include <cstdio>

#include "erbox/erbox.hpp"

int main() {
  using namespace erbox;
  std::printf("%-9s %8s %8s %10s %10s %10s\n", "task", "valid", "struct", "CC", "CV_lo", "CV_hi");
  for (BoxTask t : kAllTasks) {
    const Box box = canonical_box(t);
    const ValidationReport v = validate(box);
    const StructureReport s = analyze_structure(box);
    const TaskSummary sum = task_summary(t);
    std::printf("%-9s %8s %8s %10.6f %10.6f %10.6f\n", std::string(task_name(t)).c_str(),
                v.pass ? "pass" : "FAIL", s.pass ? "pass" : "FAIL", sum.cc.lower, sum.cv.lower,
                sum.cv.upper.value_or(-1.0));
  }
  const DenseCodingReport dc = dense_coding_demo(teleportation_es_box());
  std::printf("teleportation box dense coding: %.6f bits\n", dc.bits);
  return 0;
}
