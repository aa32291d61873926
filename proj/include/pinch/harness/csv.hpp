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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pinch::harness {

struct ExperimentRecord
{
    std::string experiment;
    int trial;
    double sweep;
    std::string scheme;
    std::string metric;
    double value;
};

inline constexpr const char *csv_header = "experiment,trial,sweep,scheme,metric,value";

/// Shortest round-trip-safe text: 17 significant digits.
std::string format_real(double v);

void write_csv(std::ostream &out, const std::vector<ExperimentRecord> &records);
void write_csv(const std::filesystem::path &path, const std::vector<ExperimentRecord> &records);
std::vector<ExperimentRecord> read_csv(std::istream &in);

struct SeriesPoint
{
    double sweep;
    std::string scheme;
    std::string metric;
    double mean;
    double stderr_of_mean;
    int samples;
};

/// Per (sweep, scheme, metric) sample means in first-appearance order of
/// series and ascending sweep.
std::vector<SeriesPoint> summarize(const std::vector<ExperimentRecord> &records);

/// Whitespace-separated columns for gnuplot: sweep, then one mean column per
/// scheme:metric series, named in a leading comment line.
void write_columns(std::ostream &out, const std::vector<SeriesPoint> &points);
void write_columns(const std::filesystem::path &path, const std::vector<SeriesPoint> &points);

} // namespace pinch::harness
