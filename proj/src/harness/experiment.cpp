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

#include "pinch/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "pinch/array.hpp"
#include "pinch/coop.hpp"
#include "pinch/isac.hpp"
#include "pinch/multi_waveguide.hpp"
#include "pinch/multiuser.hpp"
#include "pinch/siso.hpp"

namespace pinch::harness {

namespace {

using Records = std::vector<ExperimentRecord>;

struct Context
{
    const ExperimentSpec &spec;
    SystemConfig cfg;
    std::vector<Point3> pinned;
};

using TrialFn = std::function<void(const Context &, int, std::mt19937_64 &, Records &)>;

struct Emitter
{
    const Context &ctx;
    int trial;
    Records &out;
    void operator()(double sweep, std::string scheme, std::string metric, double value) const
    {
        out.push_back({ctx.spec.id, trial, sweep, std::move(scheme), std::move(metric), value});
    }
};

double unit(std::mt19937_64 &rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Ground point in [0, length] x [-width/2, width/2] from two unit draws.
Point3 scaled(double u, double v, double length, double width) { return {u * length, (v - 0.5) * width, 0.0}; }

std::vector<Point3> draw_users(const Context &ctx, std::mt19937_64 &rng, int count, double length, double width)
{
    if (!ctx.pinned.empty())
    {
        if (int(ctx.pinned.size()) < count)
            throw ConfigError("users.positions lists " + std::to_string(ctx.pinned.size()) + " users, " +
                              std::to_string(count) + " needed.");
        return {ctx.pinned.begin(), ctx.pinned.begin() + count};
    }
    std::vector<Point3> users;
    for (int m = 0; m < count; ++m)
    {
        const double u = unit(rng), v = unit(rng);
        users.push_back(scaled(u, v, length, width));
    }
    return users;
}

ArrayBounds array_bounds(const Context &ctx, double length)
{
    const double s = ctx.spec.config.number("array.spacing");
    return {0.0, length, s > 0 ? s : ctx.cfg.wavelength() / 2.0};
}

IsacScene isac_scene(const Config &c, const Point3 &user, const Point3 &target)
{
    const int P = c.count("isac.tx_waveguides"), Q = c.count("isac.rx_waveguides");
    const double s = c.number("isac.waveguide_spacing");
    IsacScene scene{user,         target, c.number("isac.reflection"), Eigen::VectorXd(P), Eigen::VectorXd(Q),
                    c.number("isac.sensing_noise"), c.number("isac.sensing_floor"), c.number("isac.length")};
    for (int p = 0; p < P; ++p)
        scene.tx_offsets(p) = p * s - (P - 1) * s / 2.0;
    for (int q = 0; q < Q; ++q)
        scene.rx_offsets(q) = q * s - (Q - 1) * s / 2.0 + s / 4.0;
    return scene;
}

CoopConfig coop_config(const Config &c)
{
    CoopConfig k;
    k.bs_antennas = c.count("coop.bs_antennas");
    k.waveguides = c.count("coop.waveguides");
    k.pinches = c.count("coop.pinches");
    k.bs_distance = c.number("coop.bs_distance");
    k.pinch_distance = c.number("coop.pinch_distance");
    k.bs_exponent = c.number("coop.bs_exponent");
    k.pinch_exponent = c.number("coop.pinch_exponent");
    k.transmit_snr = c.number("coop.transmit_snr");
    return k;
}

double fixed_antenna_rate(const Point3 &antenna, const Point3 &user, const SystemConfig &cfg, double power)
{
    return std::log2(1.0 + power * std::norm(free_space_gain(antenna, user, cfg)) / cfg.noise_power());
}

// ---- figures -------------------------------------------------------------

void siso_rate_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const double width = ctx.spec.config.number("region.width");
    const double u = unit(rng), v = unit(rng);
    for (double D : ctx.spec.grid)
    {
        const Point3 user = scaled(u, v, D, width);
        emit(D, "pinching_attenuation", "rate", optimal_position_siso(user, ctx.cfg, D).rate);
        emit(D, "pinching_no_attenuation", "rate", std::log2(1.0 + siso_snr(user.x(), user, ctx.cfg)));
        const Point3 center(D / 2.0, 0.0, ctx.cfg.height());
        emit(D, "fixed_center", "rate", fixed_antenna_rate(center, user, ctx.cfg, ctx.cfg.transmit_power()));
    }
}

void noma_vs_tdma_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const auto users = draw_users(ctx, rng, 2, c.number("region.length"), c.number("region.width"));
    const double gamma = c.number("noma.primary_snr");
    for (double dbm : ctx.spec.grid)
    {
        const auto cfg = ctx.cfg.with_transmit_power(dbm_to_watt(dbm));
        const NomaNoise noise{cfg.noise_power(), c.number("noma.secondary_noise")};
        double noma = 0.0;
        try
        {
            const auto s = cr_noma_two_user(users[0], users[1], gamma, cfg, noise);
            noma = std::log2(1.0 + s.primary_sinr) + s.secondary_rate;
        }
        catch (const InfeasibleError &)
        {
        }
        emit(dbm, "noma", "sum_rate", noma);
        const auto t = tdma_maxmin_closed_form(users, cfg, cfg.transmit_power());
        emit(dbm, "tdma", "sum_rate", tdma_rates(users, cfg, t.x_star, t.powers).sum());
    }
}

void rate_vs_n_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const double length = c.number("region.length");
    const auto users = draw_users(ctx, rng, 2, length, c.number("region.width"));
    const NomaNoise noise{ctx.cfg.noise_power(), c.number("noma.secondary_noise")};
    for (double n : ctx.spec.grid)
    {
        double rate = 0.0;
        try
        {
            rate = noma_array_bcd(users[0], users[1], int(n), array_bounds(ctx, length), c.number("noma.primary_snr"),
                                  ctx.cfg, noise)
                       .secondary_rate;
        }
        catch (const InfeasibleError &)
        {
        }
        emit(n, "noma_array", "secondary_rate", rate);
    }
}

void sumrate_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const int M = c.count("users.count"), P = c.count("mimo.waveguides");
    std::vector<std::pair<double, double>> draws;
    for (int m = 0; m < M; ++m)
    {
        const double u = unit(rng), v = unit(rng);
        draws.emplace_back(u, v);
    }
    for (double D : {5.0, 20.0})
    {
        std::vector<Point3> users;
        for (const auto &[u, v] : draws)
            users.push_back(scaled(u, v, D, D));
        const WaveguideLayout layout(P, ctx.cfg.height(), D, ctx.cfg.wavelength());
        const std::string tag = "_D" + format_real(D);
        for (double dbm : ctx.spec.grid)
        {
            const double p = dbm_to_watt(dbm);
            emit(dbm, "pinching" + tag, "sum_rate", wmmse_bcd(layout, users, ctx.cfg, p).sum_rate);
            emit(dbm, "two_stage" + tag, "sum_rate", two_stage_mrt_wmmse(layout, users, ctx.cfg, p).sum_rate);
            emit(dbm, "ula" + tag, "sum_rate", ula_baseline(users, P, ctx.cfg, p).sum_rate);
        }
    }
}

void isac_tradeoff_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const auto pts = draw_users(ctx, rng, 2, c.number("isac.length"), c.number("region.width"));
    auto scene = isac_scene(c, pts[0], pts[1]);
    std::vector<double> floors;
    for (double db : ctx.spec.grid)
        floors.push_back(db_to_linear(db));
    const double p = ctx.cfg.transmit_power();
    const auto sweep = isac_sweep(scene, ctx.cfg, p, floors);
    for (std::size_t i = 0; i < floors.size(); ++i)
    {
        scene.sensing_floor = floors[i];
        const double db = ctx.spec.grid[i];
        emit(db, "sca", "rate", sweep[i] ? sweep[i]->comm_rate : 0.0);
        auto guarded = [&](auto &&fn)
        {
            try
            {
                return fn(scene, ctx.cfg, p).comm_rate;
            }
            catch (const InfeasibleError &)
            {
                return 0.0;
            }
        };
        emit(db, "midpoint", "rate", guarded(isac_midpoint_baseline));
        emit(db, "fixed", "rate", guarded(isac_fixed_antenna));
    }
}

// ---- commands ------------------------------------------------------------

void place_siso_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const double D = c.number("region.length");
    const auto user = draw_users(ctx, rng, 1, D, c.number("region.width"))[0];
    const auto s = optimal_position_siso(user, ctx.cfg, D);
    emit(D, "pinching", "x_star", s.x_star);
    emit(D, "pinching", "snr", s.snr);
    emit(D, "pinching", "rate", s.rate);
    emit(D, "above_user", "rate", std::log2(1.0 + siso_snr(user.x(), user, ctx.cfg)));
    const Point3 center(D / 2.0, 0.0, ctx.cfg.height());
    emit(D, "fixed_center", "rate", fixed_antenna_rate(center, user, ctx.cfg, ctx.cfg.transmit_power()));
}

void tdma_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const auto users = draw_users(ctx, rng, ctx.pinned.empty() ? c.count("users.count") : int(ctx.pinned.size()),
                                  c.number("region.length"), c.number("region.width"));
    const double dbm = watt_to_dbm(ctx.cfg.transmit_power());
    const auto t = tdma_maxmin_closed_form(users, ctx.cfg, ctx.cfg.transmit_power());
    emit(dbm, "tdma", "x_star", t.x_star);
    emit(dbm, "tdma", "min_rate", t.min_rate);
    for (Eigen::Index m = 0; m < t.powers.size(); ++m)
        emit(dbm, "tdma", "power_" + std::to_string(m), t.powers(m));
}

void noma2_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const auto users = draw_users(ctx, rng, 2, c.number("region.length"), c.number("region.width"));
    const double dbm = watt_to_dbm(ctx.cfg.transmit_power());
    const NomaNoise noise{ctx.cfg.noise_power(), c.number("noma.secondary_noise")};
    try
    {
        const auto s = cr_noma_two_user(users[0], users[1], c.number("noma.primary_snr"), ctx.cfg, noise);
        emit(dbm, "cr_noma", "x_star", s.x_star);
        emit(dbm, "cr_noma", "alpha_p", s.alpha_p);
        emit(dbm, "cr_noma", "primary_sinr", s.primary_sinr);
        emit(dbm, "cr_noma", "secondary_rate", s.secondary_rate);
    }
    catch (const InfeasibleError &)
    {
        emit(dbm, "cr_noma", "infeasible", 1.0);
    }
}

void array_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const double length = c.number("region.length");
    const int N = c.count("array.antennas");
    const auto users = draw_users(ctx, rng, ctx.pinned.empty() ? c.count("users.count") : int(ctx.pinned.size()),
                                  length, c.number("region.width"));
    const double dbm = watt_to_dbm(ctx.cfg.transmit_power());
    const auto bounds = array_bounds(ctx, length);
    try
    {
        const auto t = tdma_array_maxmin(users, N, bounds, c.number("array.horizon"), ctx.cfg);
        emit(dbm, "tdma_array", "min_rate", t.min_rate);
        emit(dbm, "tdma_array", "iterations", double(t.history.size()));
        for (Eigen::Index n = 0; n < t.placement.positions.size(); ++n)
            emit(dbm, "tdma_array", "x_" + std::to_string(n), t.placement.positions(n));
    }
    catch (const InfeasibleError &)
    {
        emit(dbm, "tdma_array", "infeasible", 1.0);
    }
    if (users.size() < 2)
        return;
    try
    {
        const NomaNoise noise{ctx.cfg.noise_power(), c.number("noma.secondary_noise")};
        const auto s = noma_array_bcd(users[0], users[1], N, bounds, c.number("noma.primary_snr"), ctx.cfg, noise);
        emit(dbm, "noma_array", "alpha_p", s.alpha_p);
        emit(dbm, "noma_array", "secondary_rate", s.secondary_rate);
        for (Eigen::Index n = 0; n < s.placement.positions.size(); ++n)
            emit(dbm, "noma_array", "x_" + std::to_string(n), s.placement.positions(n));
    }
    catch (const InfeasibleError &)
    {
        emit(dbm, "noma_array", "infeasible", 1.0);
    }
}

void mimo_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const double D = c.number("region.length");
    const int P = c.count("mimo.waveguides");
    const auto users = draw_users(ctx, rng, ctx.pinned.empty() ? c.count("users.count") : int(ctx.pinned.size()), D,
                                  c.number("region.width"));
    const WaveguideLayout layout(P, ctx.cfg.height(), c.number("region.width"), ctx.cfg.wavelength());
    const double p = ctx.cfg.transmit_power(), dbm = watt_to_dbm(p);
    const auto joint = wmmse_bcd(layout, users, ctx.cfg, p);
    emit(dbm, "pinching", "sum_rate", joint.sum_rate);
    emit(dbm, "pinching", "iterations", double(joint.history.size()));
    for (Eigen::Index k = 0; k < joint.positions.size(); ++k)
        emit(dbm, "pinching", "x_" + std::to_string(k), joint.positions(k));
    emit(dbm, "two_stage", "sum_rate", two_stage_mrt_wmmse(layout, users, ctx.cfg, p).sum_rate);
    emit(dbm, "ula", "sum_rate", ula_baseline(users, P, ctx.cfg, p).sum_rate);
}

void isac_trial(const Context &ctx, int trial, std::mt19937_64 &rng, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto &c = ctx.spec.config;
    const auto pts = draw_users(ctx, rng, 2, c.number("isac.length"), c.number("region.width"));
    const auto scene = isac_scene(c, pts[0], pts[1]);
    const double db = linear_to_db(std::max(scene.sensing_floor, 1e-300));
    const double p = ctx.cfg.transmit_power();
    auto report = [&](const std::string &scheme, auto &&solve)
    {
        try
        {
            const IsacSolution s = solve();
            emit(db, scheme, "rate", s.comm_rate);
            emit(db, scheme, "sensing_snr", s.sensing);
            for (Eigen::Index k = 0; k < s.tx_positions.size(); ++k)
                emit(db, scheme, "x_" + std::to_string(k), s.tx_positions(k));
        }
        catch (const InfeasibleError &)
        {
            emit(db, scheme, "infeasible", 1.0);
        }
    };
    report("sca", [&] { return isac_optimize(scene, ctx.cfg, p); });
    report("midpoint", [&] { return isac_midpoint_baseline(scene, ctx.cfg, p); });
    report("fixed", [&] { return isac_fixed_antenna(scene, ctx.cfg, p); });
}

void coop_trial(const Context &ctx, int trial, std::mt19937_64 &, Records &out)
{
    const Emitter emit{ctx, trial, out};
    const auto k = coop_config(ctx.spec.config);
    const double db = linear_to_db(std::max(k.transmit_snr, 1e-300));
    for (auto s : all_coop_schemes)
        emit(db, std::string(to_string(s)), "snr", coop_snr(s, k, ctx.cfg.friis()));
    emit(db, "best", "scheme_index", double(int(coop_best_scheme(k, ctx.cfg.friis()))));
}

struct Entry
{
    std::string_view id;
    TrialFn fn;
    int trials;
    std::string_view sweep;
};

const std::vector<Entry> &registry()
{
    static const std::vector<Entry> entries{
        {"siso_rate", siso_rate_trial, 10000, "region_length_m"},
        {"noma_vs_tdma", noma_vs_tdma_trial, 10000, "transmit_power_dbm"},
        {"rate_vs_n", rate_vs_n_trial, 1000, "antennas"},
        {"sumrate_vs_power", sumrate_trial, 20, "transmit_power_dbm"},
        {"isac_tradeoff", isac_tradeoff_trial, 200, "sensing_floor_db"},
        {"place_siso", place_siso_trial, 1, "region_length_m"},
        {"tdma", tdma_trial, 1, "transmit_power_dbm"},
        {"noma2", noma2_trial, 1, "transmit_power_dbm"},
        {"array", array_trial, 1, "transmit_power_dbm"},
        {"mimo", mimo_trial, 1, "transmit_power_dbm"},
        {"isac", isac_trial, 1, "sensing_floor_db"},
        {"coop", coop_trial, 1, "transmit_snr_db"},
    };
    return entries;
}

const Entry &entry(std::string_view id)
{
    for (const auto &e : registry())
        if (e.id == id)
            return e;
    throw std::invalid_argument("Unknown experiment '" + std::string(id) + "'.");
}

std::vector<double> range(double lo, double hi, double step)
{
    std::vector<double> g;
    for (int i = 0; lo + i * step <= hi + 1e-9; ++i)
        g.push_back(lo + i * step);
    return g;
}

void prefer(Config &c, std::string_view key, std::string_view value)
{
    if (c.is_default(key))
        c.set(key, value);
}

} // namespace

void ExperimentSpec::validate() const
{
    entry(id);
    if (trials < 1)
        throw std::invalid_argument("At least one trial is required.");
    if (grid.empty() || !std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("Sweep grid must be non-empty and ascending.");
}

const std::vector<std::string_view> &figure_ids()
{
    static const std::vector<std::string_view> ids{"siso_rate", "noma_vs_tdma", "rate_vs_n", "sumrate_vs_power",
                                                   "isac_tradeoff"};
    return ids;
}

const std::vector<std::string_view> &command_ids()
{
    static const std::vector<std::string_view> ids{"place_siso", "tdma", "noma2", "array", "mimo", "isac", "coop"};
    return ids;
}

int default_trials(std::string_view id) { return entry(id).trials; }

ExperimentSpec make_spec(std::string_view id, const Config &config, std::uint64_t seed, std::optional<int> trials)
{
    const auto &e = entry(id);
    ExperimentSpec spec{std::string(id), config, std::string(e.sweep), {}, trials.value_or(e.trials), seed,
                        unsigned(config.count("run.threads"))};
    auto &c = spec.config;
    const SystemConfig cfg = c.system();
    if (id == "siso_rate")
    {
        prefer(c, "region.width", "10");
        spec.grid = range(10.0, 80.0, 10.0);
    }
    else if (id == "noma_vs_tdma")
    {
        prefer(c, "region.length", "20");
        prefer(c, "region.width", "20");
        prefer(c, "noma.primary_snr", "1");
        spec.grid = range(20.0, 40.0, 5.0);
    }
    else if (id == "rate_vs_n")
    {
        prefer(c, "region.length", "5");
        prefer(c, "region.width", "5");
        prefer(c, "noma.primary_snr", "0.1");
        spec.grid = {2.0, 4.0, 6.0, 8.0};
    }
    else if (id == "sumrate_vs_power")
    {
        prefer(c, "users.count", "8");
        prefer(c, "mimo.waveguides", "8");
        spec.grid = range(20.0, 40.0, 5.0);
    }
    else if (id == "isac_tradeoff")
        spec.grid = range(0.0, 24.0, 2.0);
    else if (id == "place_siso")
        spec.grid = {c.number("region.length")};
    else if (id == "isac")
        spec.grid = {linear_to_db(std::max(c.number("isac.sensing_floor"), 1e-300))};
    else if (id == "coop")
        spec.grid = {linear_to_db(std::max(c.number("coop.transmit_snr"), 1e-300))};
    else
        spec.grid = {watt_to_dbm(cfg.transmit_power())};
    if (!c.raw("sweep.values").empty())
        spec.grid = c.list("sweep.values");
    spec.validate();
    return spec;
}

std::mt19937_64 trial_stream(std::uint64_t seed, int trial)
{
    const auto t = std::uint64_t(trial);
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(t), std::uint32_t(t >> 32)};
    return std::mt19937_64(seq);
}

std::vector<ExperimentRecord> run_experiment(const ExperimentSpec &spec)
{
    spec.validate();
    const auto &e = entry(spec.id);
    const Context ctx{spec, spec.config.system(), spec.config.points("users.positions")};

    std::vector<Records> per_trial(spec.trials);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]
    {
        for (int t; (t = next.fetch_add(1)) < spec.trials;)
        {
            try
            {
                auto rng = trial_stream(spec.seed, t);
                e.fn(ctx, t, rng, per_trial[t]);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = spec.trials;
            }
        }
    };
    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, unsigned(spec.trials));
    if (threads <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    Records out;
    for (auto &r : per_trial)
        out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    return out;
}

ReproduceOutput reproduce(std::string_view figure, const Config &config, std::uint64_t seed,
                          std::optional<int> trials, std::filesystem::path out)
{
    if (std::find(figure_ids().begin(), figure_ids().end(), figure) == figure_ids().end())
        throw std::invalid_argument("Unknown figure '" + std::string(figure) + "'.");
    if (out.empty())
        out = std::string(figure) + ".csv";
    ReproduceOutput r;
    r.records = run_experiment(make_spec(figure, config, seed, trials));
    r.csv = out;
    r.columns = std::filesystem::path(out).replace_extension(".dat");
    write_csv(r.csv, r.records);
    write_columns(r.columns, summarize(r.records));
    return r;
}

} // namespace pinch::harness
