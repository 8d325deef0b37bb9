/*
 * Copyright 2026 The ADA Simulator Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ada::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// ADA_SIM_FIXTURES when set, otherwise the directory shipped with the build.
std::filesystem::path fixture_dir();

// An existing file is used as is; otherwise a bare name resolves to
// <fixtures>/scenarios/<name>.yaml, then <fixtures>/policies/<name>.yaml.
std::filesystem::path resolve_input(const std::string& argument);

// Entry point; args exclude the program name. Returns the exit code.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ada::cli
