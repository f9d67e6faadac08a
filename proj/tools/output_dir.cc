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

#include "output_dir.h"

#include <cstdlib>
#include <system_error>

#include "rfflab/errors.h"

namespace rfflab::cli {

namespace fs = std::filesystem;

OutputDir::OutputDir(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  if (fs::exists(root_, ec)) {
    if (!fs::is_directory(root_, ec))
      throw IoError("output path '" + root_.string() + "' exists and is not a directory");
    return;
  }
  fs::create_directories(root_, ec);
  if (ec) throw IoError("cannot create '" + root_.string() + "': " + ec.message());
  created_ = true;
}

fs::path OutputDir::File(const std::string& name) {
  fs::path p = root_ / name;
  files_.push_back(p);
  return p;
}

void OutputDir::Discard() {
  std::error_code ec;
  for (const fs::path& p : files_) fs::remove(p, ec);
  files_.clear();
  if (created_ && fs::is_empty(root_, ec)) fs::remove(root_, ec);
}

fs::path DefaultOutputDir(const std::string& subcommand) {
  const char* env = std::getenv("RFFLAB_OUT");
  const fs::path base = (env != nullptr && *env != '\0') ? fs::path(env) : fs::path("rfflab-out");
  return base / subcommand;
}

}  // namespace rfflab::cli
