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

#include "rfflab/serialize.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rfflab/csv.h"
#include "rfflab/errors.h"

namespace rfflab {
namespace {

using json = nlohmann::json;

json Parse(std::string_view text, std::string_view format, int max_version) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string(format) + ": invalid JSON: " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != format)
    throw IoError("expected a '" + std::string(format) + "' document");
  const int version = j.value("version", 0);
  if (version < 1 || version > max_version)
    throw IoError(std::string(format) + ": unsupported version " + std::to_string(version));
  return j;
}

template <typename F>
auto Checked(std::string_view format, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw IoError(std::string(format) + ": malformed document: " + e.what());
  }
}

}  // namespace

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string RffMapToJson(const RffMap& map) {
  json j;
  j["format"] = "rfflab.rff_map";
  j["version"] = kRffMapFormatVersion;
  j["family"] = std::string(ToString(map.family().kind));
  j["bandwidth"] = map.family().bandwidth;
  j["normalized_cauchy"] = map.family().normalized_cauchy;
  j["variant"] = std::string(ToString(map.variant()));
  j["scaling"] = std::string(ToString(map.scaling()));
  j["input_dim"] = map.input_dim();
  j["num_frequencies"] = map.num_frequencies();
  j["seed"] = map.seed();
  j["omega"] = map.omega().storage();
  j["offsets"] = map.offsets();
  return j.dump();
}

RffMap RffMapFromJson(std::string_view text) {
  constexpr std::string_view kFormat = "rfflab.rff_map";
  const json j = Parse(text, kFormat, kRffMapFormatVersion);
  return Checked(kFormat, [&] {
    SpectralFamily family;
    family.kind = ParseSpectralKind(j.at("family").get<std::string>());
    family.bandwidth = j.at("bandwidth").get<double>();
    family.normalized_cauchy = j.value("normalized_cauchy", false);
    const auto d = j.at("input_dim").get<std::size_t>();
    const auto big_d = j.at("num_frequencies").get<std::size_t>();
    auto omega = j.at("omega").get<std::vector<double>>();
    if (omega.size() != d * big_d) throw IoError("rff_map: omega has the wrong length");
    return RffMap::FromParts(family, ParseFeatureVariant(j.at("variant").get<std::string>()),
                             ParseFeatureScaling(j.at("scaling").get<std::string>()),
                             j.at("seed").get<std::uint64_t>(),
                             Mat(d, big_d, std::move(omega)),
                             j.at("offsets").get<std::vector<double>>());
  });
}

void SaveRffMap(const std::filesystem::path& path, const RffMap& map) {
  WriteTextFile(path, RffMapToJson(map));
}

RffMap LoadRffMap(const std::filesystem::path& path) {
  return RffMapFromJson(ReadTextFile(path));
}

std::string MlpToJson(const Mlp& net) {
  json j;
  j["format"] = "rfflab.mlp";
  j["version"] = kMlpFormatVersion;
  j["layer_dims"] = net.layer_dims();
  std::vector<std::string> acts;
  for (const auto& a : net.activations()) acts.push_back(ToString(a));
  j["activations"] = acts;
  j["bias"] = net.has_bias();
  json weights = json::array();
  for (const Mat& w : net.weights()) weights.push_back(w.storage());
  j["weights"] = weights;
  json biases = json::array();
  if (net.has_bias())
    for (std::size_t k = 0; k < net.num_layers(); ++k) biases.push_back(net.bias(k));
  j["biases"] = biases;
  return j.dump();
}

Mlp MlpFromJson(std::string_view text) {
  constexpr std::string_view kFormat = "rfflab.mlp";
  const json j = Parse(text, kFormat, kMlpFormatVersion);
  return Checked(kFormat, [&] {
    const auto dims = j.at("layer_dims").get<std::vector<std::size_t>>();
    const auto acts = j.at("activations").get<std::vector<std::string>>();
    const auto flat = j.at("weights").get<std::vector<std::vector<double>>>();
    if (dims.size() < 2 || flat.size() != dims.size() - 1 || acts.size() != flat.size())
      throw IoError("mlp: layer counts are inconsistent");
    std::vector<Mat> weights;
    std::vector<Activation> activations;
    for (std::size_t k = 0; k < flat.size(); ++k) {
      if (flat[k].size() != dims[k] * dims[k + 1])
        throw IoError("mlp: weight block " + std::to_string(k) + " has the wrong length");
      weights.emplace_back(dims[k + 1], dims[k], flat[k]);
      activations.push_back(ParseActivation(acts[k]));
    }
    std::vector<Vec> biases;
    if (j.value("bias", false)) biases = j.at("biases").get<std::vector<Vec>>();
    return Mlp::FromWeights(std::move(weights), std::move(activations), std::move(biases));
  });
}

void SaveMlp(const std::filesystem::path& path, const Mlp& net) {
  WriteTextFile(path, MlpToJson(net));
}

Mlp LoadMlp(const std::filesystem::path& path) { return MlpFromJson(ReadTextFile(path)); }

void WriteHistoryCsv(const std::filesystem::path& path,
                     const std::vector<HistoryPoint>& history, bool with_grad_norm) {
  std::vector<std::string> header{"step", "loss"};
  if (with_grad_norm) header.emplace_back("grad_norm");
  CsvWriter w(path, header);
  for (const auto& p : history) {
    w.Field(p.step).Field(p.loss);
    if (with_grad_norm) w.Field(p.grad_norm);
    w.EndRow();
  }
}

void WriteKernelReport(const std::filesystem::path& prefix, const KernelReport& report) {
  const bool split = report.gamma.has_value() && report.m.has_value();
  std::vector<std::string> header{"i", "j", "kernel"};
  if (split) {
    header.emplace_back("gamma");
    header.emplace_back("m");
  }
  {
    CsvWriter w(std::filesystem::path(prefix.string() + ".csv"), header);
    const std::size_t n = report.gram.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        w.Field(i).Field(j).Field(report.gram(i, j));
        if (split) w.Field((*report.gamma)(i, j)).Field((*report.m)(i, j));
        w.EndRow();
      }
  }
  json j;
  j["format"] = "rfflab.kernel_report";
  j["version"] = kKernelReportFormatVersion;
  j["n"] = report.gram.rows();
  j["spectrum"] = report.spectrum;
  j["min_eigenvalue"] = report.min_eigenvalue;
  j["condition_number"] = report.condition_number;
  j["eigen_floor"] = kEigenFloor;
  j["numerical_rank"] = report.numerical_rank;
  j["spectral_norms"] = report.bounds.spectral_norms;
  j["S"] = report.bounds.forward_prefix;
  j["T"] = report.bounds.backward_suffix;
  j["C1"] = report.bounds.c1;
  if (report.bounds.upper_block_bound) j["B"] = *report.bounds.upper_block_bound;
  WriteTextFile(prefix.string() + ".json", j.dump(2));
}

void WriteTelescopeTrace(const std::filesystem::path& prefix, const TelescopeTrace& trace) {
  {
    CsvWriter w(std::filesystem::path(prefix.string() + ".csv"),
                {"step", "eval_index", "batch_position", "train_row", "kernel", "loss_grad"});
    for (std::size_t t = 0; t < trace.kernel_rows.size(); ++t) {
      const Mat& k = trace.kernel_rows[t];
      for (std::size_t e = 0; e < k.rows(); ++e)
        for (std::size_t i = 0; i < k.cols(); ++i)
          w.Field(t + 1).Field(e).Field(i).Field(trace.batch_rows[t][i]).Field(k(e, i))
              .Field(trace.loss_grads[t][i]).EndRow();
    }
  }
  json j;
  j["format"] = "rfflab.telescope_trace";
  j["version"] = kTelescopeFormatVersion;
  j["learning_rate"] = trace.learning_rate;
  j["steps"] = trace.steps;
  json points = json::array();
  for (std::size_t e = 0; e < trace.eval_points.rows(); ++e) {
    const auto row = trace.eval_points.row(e);
    points.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["eval_points"] = points;
  j["initial_outputs"] = trace.initial_outputs;
  std::vector<double> recon;
  for (std::size_t e = 0; e < trace.initial_outputs.size(); ++e)
    recon.push_back(TelescopeReconstruct(trace, e));
  j["reconstructions"] = recon;
  WriteTextFile(prefix.string() + ".json", j.dump(2));
}

}  // namespace rfflab
