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

#include "pinch/harness/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pinch::harness {

namespace {

std::string escape(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_row(const std::string &line)
{
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
                cells.back() += '"', ++i;
            else if (c == '"')
                quoted = false;
            else
                cells.back() += c;
        }
        else if (c == '"')
            quoted = true;
        else if (c == ',')
            cells.emplace_back();
        else
            cells.back() += c;
    }
    return cells;
}

} // namespace

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream &out, const std::vector<ExperimentRecord> &records)
{
    out << csv_header << '\n';
    for (const auto &r : records)
    {
        if (!std::isfinite(r.value))
            throw std::domain_error("Non-finite value for " + r.scheme + "/" + r.metric + ".");
        out << escape(r.experiment) << ',' << r.trial << ',' << format_real(r.sweep) << ',' << escape(r.scheme) << ','
            << escape(r.metric) << ',' << format_real(r.value) << '\n';
    }
}

void write_csv(const std::filesystem::path &path, const std::vector<ExperimentRecord> &records)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot write '" + path.string() + "'.");
    write_csv(out, records);
}

std::vector<ExperimentRecord> read_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw std::runtime_error("Missing CSV header.");
    std::vector<ExperimentRecord> out;
    while (std::getline(in, line))
    {
        const auto c = split_row(line);
        if (c.size() != 6)
            throw std::runtime_error("Malformed CSV row: " + line);
        out.push_back({c[0], std::stoi(c[1]), std::stod(c[2]), c[3], c[4], std::stod(c[5])});
    }
    return out;
}

std::vector<SeriesPoint> summarize(const std::vector<ExperimentRecord> &records)
{
    struct Acc
    {
        double sum = 0.0, sum_sq = 0.0;
        int n = 0;
    };
    std::vector<std::pair<std::string, std::string>> series;
    std::map<std::pair<std::string, std::string>, std::map<double, Acc>> acc;
    for (const auto &r : records)
    {
        const auto key = std::make_pair(r.scheme, r.metric);
        if (!acc.count(key))
            series.push_back(key);
        auto &a = acc[key][r.sweep];
        a.sum += r.value;
        a.sum_sq += r.value * r.value;
        ++a.n;
    }
    std::vector<SeriesPoint> out;
    for (const auto &key : series)
        for (const auto &[sweep, a] : acc[key])
        {
            const double mean = a.sum / a.n;
            const double var = a.n > 1 ? std::max(0.0, (a.sum_sq - a.n * mean * mean) / (a.n - 1)) : 0.0;
            out.push_back({sweep, key.first, key.second, mean, std::sqrt(var / a.n), a.n});
        }
    return out;
}

void write_columns(std::ostream &out, const std::vector<SeriesPoint> &points)
{
    std::vector<std::string> names;
    std::map<double, std::map<std::string, double>> rows;
    for (const auto &p : points)
    {
        const std::string name = p.scheme + ":" + p.metric;
        if (std::find(names.begin(), names.end(), name) == names.end())
            names.push_back(name);
        rows[p.sweep][name] = p.mean;
    }
    out << "# sweep";
    for (const auto &n : names)
        out << ' ' << n;
    out << '\n';
    for (const auto &[sweep, cols] : rows)
    {
        out << format_real(sweep);
        for (const auto &n : names)
        {
            const auto it = cols.find(n);
            out << ' ' << (it == cols.end() ? std::string("NaN") : format_real(it->second));
        }
        out << '\n';
    }
}

void write_columns(const std::filesystem::path &path, const std::vector<SeriesPoint> &points)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot write '" + path.string() + "'.");
    write_columns(out, points);
}

} // namespace pinch::harness
