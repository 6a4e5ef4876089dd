// Copyright 2026 The fidroute Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fidroute::cli {

/// Runs one command line. Returns the process exit code: 0 on success, 1 on
/// validation or runtime failures, 2 on usage errors. Errors are reported as
/// a single "error: ..." line on the error stream.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

/// argv-facing wrapper for main().
int dispatch(int argc, const char* const* argv);

/// Resolves an output path against the FIDROUTE_OUT_DIR environment
/// variable: relative paths are placed inside that directory when it is
/// set, absolute paths and paths without the variable pass through.
std::string resolve_output_path(const std::string& path);

}  // namespace fidroute::cli
