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

#ifndef RFFLAB_SERIALIZE_H_
#define RFFLAB_SERIALIZE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rfflab/mlp.h"
#include "rfflab/ntk.h"
#include "rfflab/rff.h"
#include "rfflab/telescope.h"
#include "rfflab/train.h"

namespace rfflab {

// File formats. Every JSON document carries "format" and "version" keys;
// loaders reject unknown formats and newer versions. Doubles are written in
// shortest round-trip form, so a reloaded map or net is bit-identical.
inline constexpr int kRffMapFormatVersion = 1;
inline constexpr int kMlpFormatVersion = 1;
inline constexpr int kKernelReportFormatVersion = 1;
inline constexpr int kTelescopeFormatVersion = 1;

// {"format": "rfflab.rff_map", "version": 1, "family": "gaussian",
//  "bandwidth": 1, "normalized_cauchy": false, "variant": "sincos",
//  "scaling": "standard", "input_dim": d, "num_frequencies": D, "seed": s,
//  "omega": [d*D row-major values], "offsets": [D values or empty]}
std::string RffMapToJson(const RffMap& map);
RffMap RffMapFromJson(std::string_view text);
void SaveRffMap(const std::filesystem::path& path, const RffMap& map);
RffMap LoadRffMap(const std::filesystem::path& path);

// {"format": "rfflab.mlp", "version": 1, "layer_dims": [...],
//  "activations": ["relu", ..., "identity"], "bias": false,
//  "weights": [[row-major W_0], [W_1], ...], "biases": [[b_0], ...]}
std::string MlpToJson(const Mlp& net);
Mlp MlpFromJson(std::string_view text);
void SaveMlp(const std::filesystem::path& path, const Mlp& net);
Mlp LoadMlp(const std::filesystem::path& path);

// step,loss[,grad_norm]
void WriteHistoryCsv(const std::filesystem::path& path,
                     const std::vector<HistoryPoint>& history,
                     bool with_grad_norm = false);

// <prefix>.csv: i,j,kernel[,gamma,m] for i <= j
// <prefix>.json: n, spectrum, min_eigenvalue, condition_number,
//                numerical_rank, spectral_norms, S, T, C1[, B]
void WriteKernelReport(const std::filesystem::path& prefix, const KernelReport& report);

// <prefix>.csv: step,eval_index,batch_position,train_row,kernel,loss_grad
// <prefix>.json: learning_rate, steps, eval_points, initial_outputs,
//                reconstructions
void WriteTelescopeTrace(const std::filesystem::path& prefix, const TelescopeTrace& trace);

void WriteTextFile(const std::filesystem::path& path, std::string_view text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace rfflab

#endif  // RFFLAB_SERIALIZE_H_
