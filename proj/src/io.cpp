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

#include "slabrte/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slabrte::io {

namespace {

void emit(std::ostringstream& os, const nlohmann::json& j, int indent,
          int depth)
{
    const bool pretty = indent >= 0;
    auto newline = [&](int d) {
        if (pretty) {
            os << '\n' << std::string(static_cast<std::size_t>(d * indent), ' ');
        }
    };
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << '{';
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) {
                os << ',';
            }
            first = false;
            newline(depth + 1);
            os << nlohmann::json(key).dump() << (pretty ? ": " : ":");
            emit(os, value, indent, depth + 1);
        }
        newline(depth);
        os << '}';
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        bool flat = true;
        for (const auto& v : j) {
            flat = flat && !v.is_structured();
        }
        os << '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first) {
                os << (flat && pretty ? ", " : ",");
            }
            first = false;
            if (!flat) {
                newline(depth + 1);
            }
            emit(os, v, indent, depth + 1);
        }
        if (!flat) {
            newline(depth);
        }
        os << ']';
        return;
    }
    case nlohmann::json::value_t::number_float: {
        const double v = j.get<double>();
        os << (std::isfinite(v) ? format_double(v) : std::string("null"));
        return;
    }
    default:
        os << j.dump();
        return;
    }
}

} // namespace

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dump_json(const nlohmann::json& j, int indent)
{
    std::ostringstream os;
    emit(os, j, indent, 0);
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() +
                                 " for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

nlohmann::json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

} // namespace slabrte::io
