// Copyright 2026 The rfflab Authors
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

#ifndef RFFLAB_SYM_EIGEN_H_
#define RFFLAB_SYM_EIGEN_H_

#include "rfflab/matrix.h"

namespace rfflab {

struct SymEigenResult {
  Vec values;    // sorted descending
  Mat vectors;   // column i is the unit eigenvector for values[i]
  int sweeps = 0;
};

// Cyclic Jacobi eigensolver for real symmetric matrices.
//
// The input must be symmetric to within 1e-10 (relative to its largest
// entry); otherwise a ContractError is thrown. Sweeps stop once the
// off-diagonal Frobenius mass falls below 1e-15 of the total.
SymEigenResult SymEig(const Mat& a, int max_sweeps = 100);

// Convenience: eigenvalues only, descending.
Vec SymEigenvalues(const Mat& a);

}  // namespace rfflab

#endif  // RFFLAB_SYM_EIGEN_H_
