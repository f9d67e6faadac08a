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

#ifndef RFFLAB_TOOLS_OUTPUT_DIR_H_
#define RFFLAB_TOOLS_OUTPUT_DIR_H_

#include <filesystem>
#include <string>
#include <vector>

namespace rfflab::cli {

// Output directory of one run. Every file goes through File() so a failed
// run can remove exactly what it wrote.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path File(const std::string& name);
  const std::vector<std::filesystem::path>& files() const { return files_; }

  // Deletes the files written so far, and the directory if this run made it.
  void Discard();

 private:
  std::filesystem::path root_;
  bool created_ = false;
  std::vector<std::filesystem::path> files_;
};

// $RFFLAB_OUT/<subcommand>, or rfflab-out/<subcommand> when unset.
std::filesystem::path DefaultOutputDir(const std::string& subcommand);

}  // namespace rfflab::cli

#endif  // RFFLAB_TOOLS_OUTPUT_DIR_H_
