/*
   Copyright 2026 The slabrte Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

namespace slabrte::io {

/// "%.17g": 17 significant digits, round-trips every double.
std::string format_double(double v);

/// Serializes `j` with doubles in 17-significant-digit form. Non-finite
/// doubles become null. indent < 0 gives a single line.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// Writes `text` to `path`, creating parent directories; LF line endings.
void write_text(const std::filesystem::path& path, const std::string& text);

nlohmann::json read_json(const std::filesystem::path& path);

} // namespace slabrte::io
