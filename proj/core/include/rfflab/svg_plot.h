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

#ifndef RFFLAB_SVG_PLOT_H_
#define RFFLAB_SVG_PLOT_H_

#include <filesystem>
#include <string>
#include <vector>

namespace rfflab {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
  std::vector<Series> series;
};

// Self-contained SVG document. Points that are non-finite, or non-positive
// on a log axis, are skipped.
std::string RenderSvg(const LinePlot& plot);
void WriteSvg(const std::filesystem::path& path, const LinePlot& plot);

}  // namespace rfflab

#endif  // RFFLAB_SVG_PLOT_H_
