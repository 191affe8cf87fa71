/*
 * Copyright 2026 The angelcage Authors
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
 */

#ifndef ANGELCAGE_REPORT_HPP
#define ANGELCAGE_REPORT_HPP

#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace angelcage {

inline constexpr std::string_view version = "1.0.0";

/// Shortest decimal text that reads back to the same double. Always uses '.'
/// and never groups thousands.
inline std::string format_number(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

inline std::string format_number(std::uint64_t v) { return std::to_string(v); }
inline std::string format_number(std::int64_t v) { return std::to_string(v); }
inline std::string format_number(int v) { return std::to_string(v); }

/// Everything needed to re-run a command: written as comment lines ahead of
/// every CSV payload.
struct RunManifest {
    std::string command;
    std::vector<std::string> arguments; // full argv after the program name
    std::uint64_t master_seed = 0;
    std::string started; // UTC, ISO 8601

    static std::string utc_now()
    {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::array<char, 32> buf{};
        const auto len = std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return {buf.data(), len};
    }

    void write(std::ostream &os) const
    {
        os << "# angelcage " << version << " command=" << command << " seed=" << master_seed
           << " started=" << started << '\n';
        os << "# rerun: angelcage";
        for (const auto &a : arguments) {
            os << ' ' << a;
        }
        os << '\n';
    }
};

/// Writes one comma-separated row.
inline void write_csv_row(std::ostream &os, std::initializer_list<std::string_view> fields)
{
    bool first = true;
    for (auto f : fields) {
        if (!first) {
            os << ',';
        }
        os << f;
        first = false;
    }
    os << '\n';
}

inline void write_csv_row(std::ostream &os, const std::vector<std::string> &fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            os << ',';
        }
        os << fields[i];
    }
    os << '\n';
}

} // namespace angelcage

#endif
