// pinch: simulation library for dielectric-waveguide pinching-antenna systems
// Copyright (C) 2026 The pinch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Flat key-value configuration. Text files use a TOML-style subset:
// `[section]` headers, `key = value` lines and `#` comments. Keys are
// addressed as `section.key`. Power keys accept `dBm` or `W` suffixes and
// ratio keys accept `dB`; everything is stored in SI units.

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/types.hpp"

namespace pinch::harness {

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class KeyKind
{
    number, // plain real number
    count,  // integer >= 0
    power,  // W, or dBm with suffix
    ratio,  // linear, or dB with suffix
    list,   // comma-separated numbers
    points, // "x,y; x,y; ..."
};

struct KeyInfo
{
    std::string_view name;
    KeyKind kind;
    std::string_view default_value;
    std::string_view help;
};

/// Every recognised key with its default.
const std::vector<KeyInfo> &config_keys();

class Config
{
public:
    /// All keys at their defaults.
    Config();

    /// Sets one key, validating the value. Throws ConfigError for unknown
    /// keys or malformed values.
    void set(std::string_view key, std::string_view value);

    void apply_text(std::string_view text, std::string_view origin = "<text>");
    void load_file(const std::filesystem::path &path);

    /// Overrides any key from `PREFIX` + upper-cased key with '.' replaced by
    /// '_', for example PINCH_SYSTEM_TRANSMIT_POWER.
    void apply_environment(std::string_view prefix = "PINCH_");

    double number(std::string_view key) const;
    int count(std::string_view key) const;
    std::vector<double> list(std::string_view key) const;
    std::vector<Point3> points(std::string_view key) const;
    const std::string &raw(std::string_view key) const;
    bool is_default(std::string_view key) const;

    SystemConfig system() const;

    static std::string environment_name(std::string_view key, std::string_view prefix = "PINCH_");

private:
    std::map<std::string, std::string, std::less<>> values_;
};

} // namespace pinch::harness
