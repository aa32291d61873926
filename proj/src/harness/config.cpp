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

#include "pinch/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pinch::harness {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string_view unquote(std::string_view s)
{
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_real(std::string_view s, std::string_view key)
{
    s = trim(s);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError("Key '" + std::string(key) + "': '" + std::string(s) + "' is not a finite number.");
    return v;
}

bool ends_with_unit(std::string_view s, std::string_view unit, std::string_view &number)
{
    if (s.size() < unit.size())
        return false;
    const auto tail = s.substr(s.size() - unit.size());
    if (!std::equal(tail.begin(), tail.end(), unit.begin(), unit.end(),
                    [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) ==
                                                std::tolower(static_cast<unsigned char>(b)); }))
        return false;
    number = s.substr(0, s.size() - unit.size());
    return true;
}

double parse_scalar(std::string_view s, KeyKind kind, std::string_view key)
{
    s = trim(s);
    std::string_view n;
    switch (kind)
    {
    case KeyKind::power:
        if (ends_with_unit(s, "dBm", n))
            return dbm_to_watt(parse_real(n, key));
        if (ends_with_unit(s, "dBW", n))
            return db_to_linear(parse_real(n, key));
        if (ends_with_unit(s, "mW", n))
            return 1e-3 * parse_real(n, key);
        if (ends_with_unit(s, "W", n))
            s = n;
        break;
    case KeyKind::ratio:
        if (ends_with_unit(s, "dB", n))
            return db_to_linear(parse_real(n, key));
        break;
    default: break;
    }
    return parse_real(s, key);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    if (trim(s).empty())
        return out;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

const KeyInfo &lookup(std::string_view key)
{
    for (const auto &k : config_keys())
        if (k.name == key)
            return k;
    throw ConfigError("Unknown configuration key '" + std::string(key) + "'.");
}

void validate(const KeyInfo &info, std::string_view value)
{
    switch (info.kind)
    {
    case KeyKind::count:
    {
        const auto s = trim(value);
        int v = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || end != s.data() + s.size() || v < 0)
            throw ConfigError("Key '" + std::string(info.name) + "': '" + std::string(s) +
                              "' is not a non-negative integer.");
        break;
    }
    case KeyKind::list:
        for (auto item : split(value, ','))
            parse_real(item, info.name);
        break;
    case KeyKind::points:
        for (auto item : split(value, ';'))
            if (split(item, ',').size() != 2)
                throw ConfigError("Key '" + std::string(info.name) + "': expected 'x, y' pairs separated by ';'.");
            else
                for (auto c : split(item, ','))
                    parse_real(c, info.name);
        break;
    default: parse_scalar(value, info.kind, info.name);
    }
}

} // namespace

const std::vector<KeyInfo> &config_keys()
{
    static const std::vector<KeyInfo> keys{
        {"system.carrier_frequency", KeyKind::number, "28e9", "carrier frequency, Hz"},
        {"system.refractive_index", KeyKind::number, "1.4", "effective refractive index of the waveguide"},
        {"system.attenuation", KeyKind::number, "0.0092", "in-waveguide attenuation, 1/m"},
        {"system.height", KeyKind::number, "5", "waveguide height, m"},
        {"system.noise_power", KeyKind::power, "-70 dBm", "receiver noise power"},
        {"system.transmit_power", KeyKind::power, "30 dBm", "transmit power budget"},
        {"region.length", KeyKind::number, "10", "service region extent along the waveguide, m"},
        {"region.width", KeyKind::number, "10", "service region extent across the waveguide, m"},
        {"users.count", KeyKind::count, "2", "users drawn per trial"},
        {"users.positions", KeyKind::points, "", "fixed ground positions 'x, y; ...' (empty: draw at random)"},
        {"noma.primary_snr", KeyKind::ratio, "1", "primary user's SINR floor"},
        {"noma.secondary_noise", KeyKind::power, "-70 dBm", "secondary user's noise power"},
        {"array.antennas", KeyKind::count, "4", "pinches on the waveguide"},
        {"array.spacing", KeyKind::number, "0", "minimum pinch spacing, m (0: half wavelength)"},
        {"array.horizon", KeyKind::number, "1", "TDMA frame length"},
        {"mimo.waveguides", KeyKind::count, "8", "waveguides, one pinch each"},
        {"isac.tx_waveguides", KeyKind::count, "4", "transmit waveguides"},
        {"isac.rx_waveguides", KeyKind::count, "3", "receive waveguides"},
        {"isac.waveguide_spacing", KeyKind::number, "2", "lateral spacing of the waveguides, m"},
        {"isac.reflection", KeyKind::number, "1", "target reflection coefficient"},
        {"isac.sensing_noise", KeyKind::power, "-140 dBm", "sensing receiver noise power"},
        {"isac.sensing_floor", KeyKind::ratio, "10 dB", "required sensing SNR"},
        {"isac.length", KeyKind::number, "20", "waveguide length and region extent, m"},
        {"coop.bs_antennas", KeyKind::count, "4", "base station antennas"},
        {"coop.waveguides", KeyKind::count, "2", "waveguides"},
        {"coop.pinches", KeyKind::count, "4", "pinches per waveguide"},
        {"coop.bs_distance", KeyKind::number, "50", "base station to user distance, m"},
        {"coop.pinch_distance", KeyKind::number, "5", "pinch to user distance, m"},
        {"coop.bs_exponent", KeyKind::number, "3.5", "base station path-loss exponent"},
        {"coop.pinch_exponent", KeyKind::number, "2", "pinch path-loss exponent"},
        {"coop.transmit_snr", KeyKind::ratio, "100 dB", "transmit SNR"},
        {"sweep.values", KeyKind::list, "", "replaces the sweep grid of a figure (empty: built-in grid)"},
        {"run.threads", KeyKind::count, "0", "worker threads (0: hardware concurrency)"},
    };
    return keys;
}

Config::Config()
{
    for (const auto &k : config_keys())
        values_.emplace(std::string(k.name), std::string(k.default_value));
}

void Config::set(std::string_view key, std::string_view value)
{
    const auto &info = lookup(key);
    value = unquote(trim(value));
    validate(info, value);
    values_.find(key)->second = std::string(value);
}

void Config::apply_text(std::string_view text, std::string_view origin)
{
    std::string section;
    std::istringstream in{std::string(text)};
    std::string line;
    for (int number = 1; std::getline(in, line); ++number)
    {
        auto where = [&] { return std::string(origin) + ":" + std::to_string(number) + ": "; };
        std::string_view s = line;
        bool quoted = false;
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            if (s[i] == '"')
                quoted = !quoted;
            else if (s[i] == '#' && !quoted)
            {
                s = s.substr(0, i);
                break;
            }
        }
        s = trim(s);
        if (s.empty())
            continue;
        if (s.front() == '[')
        {
            if (s.back() != ']')
                throw ConfigError(where() + "unterminated section header.");
            section = std::string(trim(s.substr(1, s.size() - 2)));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where() + "expected 'key = value'.");
        const auto name = trim(s.substr(0, eq));
        const std::string key = section.empty() ? std::string(name) : section + "." + std::string(name);
        try
        {
            set(key, s.substr(eq + 1));
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(where() + e.what());
        }
    }
}

void Config::load_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("Cannot read configuration file '" + path.string() + "'.");
    std::ostringstream text;
    text << in.rdbuf();
    apply_text(text.str(), path.string());
}

std::string Config::environment_name(std::string_view key, std::string_view prefix)
{
    std::string name(prefix);
    for (char c : key)
        name += c == '.' ? '_' : char(std::toupper(static_cast<unsigned char>(c)));
    return name;
}

void Config::apply_environment(std::string_view prefix)
{
    for (const auto &k : config_keys())
        if (const char *v = std::getenv(environment_name(k.name, prefix).c_str()))
        {
            try
            {
                set(k.name, v);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(environment_name(k.name, prefix) + ": " + e.what());
            }
        }
}

const std::string &Config::raw(std::string_view key) const
{
    lookup(key);
    return values_.find(key)->second;
}

bool Config::is_default(std::string_view key) const { return raw(key) == lookup(key).default_value; }

double Config::number(std::string_view key) const
{
    const auto &info = lookup(key);
    if (info.kind == KeyKind::list || info.kind == KeyKind::points)
        throw ConfigError("Key '" + std::string(key) + "' is not scalar.");
    return parse_scalar(raw(key), info.kind, key);
}

int Config::count(std::string_view key) const
{
    if (lookup(key).kind != KeyKind::count)
        throw ConfigError("Key '" + std::string(key) + "' is not a count.");
    return std::stoi(raw(key));
}

std::vector<double> Config::list(std::string_view key) const
{
    std::vector<double> out;
    for (auto item : split(raw(key), ','))
        out.push_back(parse_real(item, key));
    return out;
}

std::vector<Point3> Config::points(std::string_view key) const
{
    std::vector<Point3> out;
    for (auto item : split(raw(key), ';'))
    {
        const auto xy = split(item, ',');
        out.emplace_back(parse_real(xy[0], key), parse_real(xy[1], key), 0.0);
    }
    return out;
}

SystemConfig Config::system() const
{
    try
    {
        return SystemConfig(number("system.carrier_frequency"), number("system.refractive_index"),
                            number("system.attenuation"), number("system.height"), number("system.noise_power"),
                            number("system.transmit_power"));
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
}

} // namespace pinch::harness
