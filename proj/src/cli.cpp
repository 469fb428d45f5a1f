#include "ghcwave/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ghcwave/core_model.hpp"
#include "ghcwave/errors.hpp"
#include "ghcwave/jet_calculus.hpp"
#include "ghcwave/numerics.hpp"
#include "ghcwave/profile_builder.hpp"
#include "ghcwave/pss_verifier.hpp"
#include "ghcwave/rng.hpp"
#include "ghcwave/spectral_solver.hpp"
#include "ghcwave/wave_classifier.hpp"
#include "ghcwave/weak_checker.hpp"

namespace fs = std::filesystem;

namespace ghcwave {

namespace {

constexpr const char* kVersion = "ghcwave 1.0.0";

const std::vector<std::string> kCommands = {
    "simulate", "classify", "profile", "check-weak",
    "check-pss", "verify-claws", "sweep"};

// every accepted key; unknown keys are hard errors
const std::vector<std::string> kKnownKeys = {
    "command", "out_dir", "seed",
    "equation.alpha", "equation.beta", "equation.gamma", "equation.Gamma",
    "equation.epsilon",
    "wave.c", "wave.A", "wave.B",
    "grid.L", "grid.n",
    "solver.dt", "solver.t_end", "solver.dealias", "solver.monitor_every",
    "simulate.ic", "simulate.amplitude", "simulate.width", "simulate.center",
    "simulate.value", "simulate.profile_csv", "simulate.mollify_modes",
    "classify.tol",
    "profile.family", "profile.verdict_index", "profile.lambda",
    "profile.z_min", "profile.z_max", "profile.z_samples",
    "pss.eta_min", "pss.eta_max", "pss.eta_count", "pss.jets",
    "claws.jets", "claws.range",
    "sweep.command", "sweep.keys",
};

bool key_known(const std::string& k) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) != kKnownKeys.end())
        return true;
    // sweep value lists live under sweep.<dotted-key>
    return k.rfind("sweep.", 0) == 0 &&
           std::find(kKnownKeys.begin(), kKnownKeys.end(), k.substr(6)) !=
               kKnownKeys.end();
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

EquationParams equation_from(const RunConfig& c) {
    return EquationParams(c.num_or("equation.alpha", 0.0),
                          c.num_or("equation.beta", 0.0),
                          c.num_or("equation.gamma", 0.0),
                          c.num_or("equation.Gamma", 0.0),
                          c.num_or("equation.epsilon", 1.0));
}

WaveParams wave_from(const RunConfig& c) {
    return WaveParams(c.num_or("wave.c", 1.0), c.num_or("wave.A", 0.0),
                      c.num_or("wave.B", 0.0));
}

Grid grid_from(const RunConfig& c) {
    return Grid(c.num_or("grid.L", 40.0),
                static_cast<int>(c.integer_or("grid.n", 512)));
}

SolverConfig solver_from(const RunConfig& c) {
    SolverConfig s;
    s.dt = c.num_or("solver.dt", 1e-3);
    s.t_end = c.num_or("solver.t_end", 1.0);
    s.monitor_every = static_cast<int>(c.integer_or("solver.monitor_every", 10));
    std::string d = c.get_or("solver.dealias", "zero_pad_2x");
    if (d == "zero_pad_2x")
        s.dealias = Dealias::zero_pad_2x;
    else if (d == "two_thirds")
        s.dealias = Dealias::two_thirds;
    else
        throw ValidationError("solver.dealias must be zero_pad_2x or two_thirds");
    s.validate();
    return s;
}

void validate_cross_keys(const RunConfig& cfg) {
    std::string cmd = cfg.get_or("command", "");
    if (cmd.empty()) throw ValidationError("missing command");
    if (std::find(kCommands.begin(), kCommands.end(), cmd) == kCommands.end())
        throw ValidationError("unknown command: " + cmd);
    // parameter-block invariants surface before any compute
    equation_from(cfg);
    if (cmd == "classify" || cmd == "profile" || cmd == "check-weak")
        wave_from(cfg);
    if (cmd == "simulate") {
        grid_from(cfg);
        solver_from(cfg);
    }
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write " + path.string());
    f << text;
}

// Helmholtz smoothing at kernel scale L/(2 pi keep): mollifies kinked data
// while leaving modes well below `keep` nearly untouched.
Field lowpass(const Field& u, const Grid& g, int keep) {
    double eps = g.length / (2.0 * M_PI * std::max(1, keep));
    return helmholtz_inverse(u, eps, g);
}

Field field_from_profile_csv(const std::string& path, const Grid& g,
                             double center) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read profile csv: " + path);
    std::string line;
    std::getline(f, line);  // header z,phi
    std::vector<double> zs, phis;
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError("malformed profile csv line: " + line);
        zs.push_back(std::stod(line.substr(0, comma)));
        phis.push_back(std::stod(line.substr(comma + 1)));
    }
    if (zs.size() < 4) throw ValidationError("profile csv too short");
    num::MonotoneCubic interp(zs, phis);
    Field u(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j)
        u[static_cast<size_t>(j)] = interp(g.x(j) - center);
    return u;
}

nlohmann::json echo_config(const RunConfig& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [k, v] : cfg.kv) j[k] = v;
    return j;
}

void write_summary(const fs::path& dir, const RunConfig& cfg,
                   const nlohmann::json& result, double wall_seconds) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config"] = echo_config(cfg);
    j["seed"] = cfg.integer_or("seed", 0);
    j["result"] = result;
    j["wall_time_seconds"] = wall_seconds;
    write_file(dir / "summary.json", j.dump(2) + "\n");
}

// ---- commands -----------------------------------------------------------

nlohmann::json cmd_simulate(const RunConfig& cfg, const fs::path& dir) {
    EquationParams p = equation_from(cfg);
    Grid g = grid_from(cfg);
    SolverConfig sc = solver_from(cfg);
    std::string ic = cfg.get_or("simulate.ic", "gaussian");
    double center = cfg.num_or("simulate.center", g.length / 2.0);

    Field u0(static_cast<size_t>(g.n), 0.0);
    if (ic == "gaussian") {
        double amp = cfg.num_or("simulate.amplitude", 0.5);
        double wid = cfg.num_or("simulate.width", 2.0);
        for (int j = 0; j < g.n; ++j) {
            double dx = g.x(j) - center;
            u0[static_cast<size_t>(j)] = amp * std::exp(-dx * dx / (wid * wid));
        }
    } else if (ic == "constant") {
        double v = cfg.num_or("simulate.value", 0.0);
        std::fill(u0.begin(), u0.end(), v);
    } else if (ic == "peakon") {
        Profile pk = peakon(p, wave_from(cfg).c);
        u0 = profile_to_field(pk, g, center);
        long keep = cfg.integer_or("simulate.mollify_modes", 0);
        if (keep > 0) u0 = lowpass(u0, g, static_cast<int>(keep));
    } else if (ic == "profile") {
        std::string path = cfg.get("simulate.profile_csv");
        u0 = field_from_profile_csv(path, g, center);
    } else {
        throw ValidationError("unknown simulate.ic: " + ic);
    }

    Trajectory tr;
    try {
        tr = simulate(u0, p, g, sc);
    } catch (const BlowUpError& e) {
        nlohmann::json j;
        j["status"] = "blow-up";
        j["last_valid_time"] = e.last_valid_time;
        write_file(dir / "fields.csv", "t,x,u\n");
        throw;
    }
    write_file(dir / "fields.csv", trajectory_to_csv(tr, g));
    write_file(dir / "monitors.csv", monitors_to_csv(tr));
    write_raw_field(tr.states.back(), g, tr.times.back(),
                    (dir / "final_state").string());
    nlohmann::json j;
    j["status"] = "ok";
    j["snapshots"] = tr.times.size();
    j["t_final"] = tr.times.back();
    for (auto& [name, series] : tr.monitors) {
        j["monitor_first"][name] = series.front();
        j["monitor_last"][name] = series.back();
    }
    return j;
}

nlohmann::json cmd_classify(const RunConfig& cfg, const fs::path& dir) {
    EquationParams p = equation_from(cfg);
    WaveParams w = wave_from(cfg);
    double tol = cfg.num_or("classify.tol", 1e-9);
    auto verdicts = classify(p, w, tol);
    write_file(dir / "verdicts.json", verdicts_to_json(verdicts, p, w, tol) + "\n");
    nlohmann::json j;
    j["status"] = "ok";
    j["verdicts"] = verdicts.size();
    nlohmann::json kinds = nlohmann::json::array();
    for (auto& v : verdicts) kinds.push_back(kind_name(v.kind));
    j["kinds"] = kinds;
    return j;
}

nlohmann::json cmd_profile(const RunConfig& cfg, const fs::path& dir) {
    EquationParams p = equation_from(cfg);
    WaveParams w = wave_from(cfg);
    std::string family = cfg.get_or("profile.family", "verdict");
    double z0 = cfg.num_or("profile.z_min", -10.0);
    double z1 = cfg.num_or("profile.z_max", 10.0);
    long ns = cfg.integer_or("profile.z_samples", 2001);
    if (!(z0 < z1) || ns < 8)
        throw ValidationError("profile z-grid is degenerate");
    std::vector<double> zgrid(static_cast<size_t>(ns));
    for (long i = 0; i < ns; ++i)
        zgrid[static_cast<size_t>(i)] =
            z0 + (z1 - z0) * static_cast<double>(i) / static_cast<double>(ns - 1);

    Profile prof;
    if (family == "verdict") {
        auto verdicts = classify(p, w, cfg.num_or("classify.tol", 1e-9));
        long idx = cfg.integer_or("profile.verdict_index", 0);
        long usable = 0;
        bool found = false;
        for (auto& v : verdicts) {
            if (v.kind == Kind::none || v.kind == Kind::unbounded) continue;
            if (usable == idx) {
                prof = integrate_profile(v, p, w, zgrid);
                found = true;
                break;
            }
            ++usable;
        }
        if (!found)
            throw ValidationError("no bounded verdict at profile.verdict_index");
    } else if (family == "peakon") {
        prof = peakon(p, w.c);
    } else if (family == "cosh" || family == "sinh_plus" ||
               family == "sinh_minus") {
        FamilyBranch br = family == "cosh" ? FamilyBranch::cosh_even
                          : family == "sinh_plus" ? FamilyBranch::sinh_plus
                                                  : FamilyBranch::sinh_minus;
        prof = explicit_family(p, cfg.num_or("profile.lambda", 2.0), br, w.c);
    } else {
        throw ValidationError("unknown profile.family: " + family);
    }
    if (prof.z.empty()) {
        prof.z = zgrid;
        prof.phi.resize(zgrid.size());
        for (size_t i = 0; i < zgrid.size(); ++i)
            prof.phi[i] = prof.eval(zgrid[i]);
    }
    write_file(dir / "profile.csv", profile_to_csv(prof));
    write_file(dir / "profile_meta.json", profile_meta_json(prof) + "\n");
    nlohmann::json j;
    j["status"] = "ok";
    j["samples"] = prof.z.size();
    if (prof.meta.period) j["period"] = *prof.meta.period;
    return j;
}

nlohmann::json cmd_check_weak(const RunConfig& cfg, const fs::path& dir) {
    EquationParams p = equation_from(cfg);
    double c = cfg.num_or("wave.c", 1.0);
    auto verdict = peakon_iff_test(p, c);
    nlohmann::json j;
    j["admits_exponential_peakon"] = verdict.admits;
    if (verdict.admits) {
        j["amplitude"] = verdict.amplitude;
        j["max_residual"] = verdict.max_residual;
        Profile pk = peakon(p, c);
        write_file(dir / "weak_report.json",
                   weak_report_json(pk, p, c, default_test_family()) + "\n");
    } else {
        j["reason"] = verdict.reason;
        write_file(dir / "weak_report.json", j.dump(2) + "\n");
    }
    j["status"] = "ok";
    return j;
}

nlohmann::json cmd_check_pss(const RunConfig& cfg, const fs::path& dir) {
    EquationParams p = equation_from(cfg);
    NormalizedParams np = normalize_for_pss(p);
    double e0 = cfg.num_or("pss.eta_min", 0.5);
    double e1 = cfg.num_or("pss.eta_max", 2.5);
    long cnt = cfg.integer_or("pss.eta_count", 5);
    long jets = cfg.integer_or("pss.jets", 100);
    if (cnt < 1) throw ValidationError("pss.eta_count must be >= 1");
    std::vector<double> etas;
    for (long i = 0; i < cnt; ++i)
        etas.push_back(cnt == 1 ? e0
                                : e0 + (e1 - e0) * static_cast<double>(i) /
                                           static_cast<double>(cnt - 1));
    Rng rng(static_cast<std::uint64_t>(cfg.integer_or("seed", 0)));
    std::string report =
        pss_report_json(np, etas, static_cast<int>(jets), rng);
    write_file(dir / "pss_report.json", report + "\n");
    nlohmann::json j = nlohmann::json::parse(report);
    return {{"status", "ok"}, {"max_residual", j["max_residual"]}};
}

nlohmann::json cmd_verify_claws(const RunConfig& cfg, const fs::path& dir) {
    EquationParams p = equation_from(cfg);
    long njets = cfg.integer_or("claws.jets", 1000);
    double range = cfg.num_or("claws.range", 2.0);
    Rng rng(static_cast<std::uint64_t>(cfg.integer_or("seed", 0)));

    double worst_q1 = 0.0, worst_qu = 0.0, worst_sqrt = 0.0;
    long sqrt_jets = 0;
    bool sqrt_regime = p.beta == 0.0 && p.gamma == 0.0 &&
                       std::abs(p.big_gamma + p.alpha * p.epsilon * p.epsilon) <=
                           1e-14 * (1.0 + std::abs(p.big_gamma));
    for (long i = 0; i < njets; ++i) {
        JetPoint j = random_jet(rng, -range, range);
        auto [l1, r1] = current_divergence_check(Characteristic::q_one, p, j);
        worst_q1 = std::max(worst_q1, std::abs(l1 - r1) /
                                          std::max(1.0, std::abs(l1)));
        auto [l2, r2] = current_divergence_check(Characteristic::q_u, p, j);
        worst_qu = std::max(worst_qu, std::abs(l2 - r2) /
                                          std::max(1.0, std::abs(l2)));
        if (sqrt_regime) {
            double e2 = p.epsilon * p.epsilon;
            double m = j.get(Jet::u) - e2 * j.get(Jet::uxx);
            if (m >= 0.1) {
                auto [l3, r3] =
                    current_divergence_check(Characteristic::q_sqrt_m, p, j);
                worst_sqrt = std::max(worst_sqrt, std::abs(l3 - r3) /
                                                      std::max(1.0, std::abs(l3)));
                ++sqrt_jets;
            }
        }
    }
    nlohmann::json j;
    j["status"] = "ok";
    j["jets"] = njets;
    j["max_relative_deviation_q1"] = worst_q1;
    j["max_relative_deviation_qu"] = worst_qu;
    if (sqrt_regime) {
        j["max_relative_deviation_qsqrt"] = worst_sqrt;
        j["qsqrt_jets"] = sqrt_jets;
    }
    write_file(dir / "claws_report.json", j.dump(2) + "\n");
    return j;
}

int run_single(const RunConfig& cfg);

nlohmann::json cmd_sweep(const RunConfig& cfg, const fs::path& dir) {
    std::string sub = cfg.get_or("sweep.command", "");
    if (sub.empty() || sub == "sweep")
        throw ValidationError("sweep.command must name a non-sweep command");
    std::string keys_csv = cfg.get_or("sweep.keys", "");
    if (keys_csv.empty()) throw ValidationError("sweep.keys is required");
    std::vector<std::string> keys;
    {
        std::istringstream is(keys_csv);
        std::string k;
        while (std::getline(is, k, ',')) keys.push_back(trim(k));
    }
    std::vector<std::vector<std::string>> values;
    for (auto& k : keys) {
        std::string list = cfg.get_or("sweep." + k, "");
        if (list.empty())
            throw ValidationError("missing sweep list for key " + k);
        std::vector<std::string> vs;
        std::istringstream is(list);
        std::string v;
        while (std::getline(is, v, ',')) vs.push_back(trim(v));
        values.push_back(vs);
    }
    // Cartesian product
    std::vector<std::vector<size_t>> cells{{}};
    for (auto& vs : values) {
        std::vector<std::vector<size_t>> next;
        for (auto& c : cells)
            for (size_t i = 0; i < vs.size(); ++i) {
                auto cc = c;
                cc.push_back(i);
                next.push_back(cc);
            }
        cells = next;
    }

    long max_threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GHCWAVE_THREADS"))
        max_threads = std::max(1L, std::atol(env));

    std::atomic<size_t> next_cell{0};
    std::vector<int> statuses(cells.size(), 0);
    auto worker = [&]() {
        for (;;) {
            size_t idx = next_cell.fetch_add(1);
            if (idx >= cells.size()) return;
            RunConfig cell;
            for (auto& [k, v] : cfg.kv)
                if (k.rfind("sweep.", 0) != 0) cell.kv[k] = v;
            cell.kv["command"] = sub;
            std::ostringstream name;
            name << "cell_" << idx;
            for (size_t ki = 0; ki < keys.size(); ++ki)
                cell.kv[keys[ki]] = values[ki][cells[idx][ki]];
            cell.kv["out_dir"] = (dir / name.str()).string();
            statuses[idx] = run_single(cell);
        }
    };
    std::vector<std::thread> pool;
    for (long t = 0; t < std::min<long>(max_threads, static_cast<long>(cells.size())); ++t)
        pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    nlohmann::json j;
    j["status"] = "ok";
    j["cells"] = cells.size();
    j["cell_status"] = statuses;
    for (int s : statuses)
        if (s != 0) j["status"] = "cell-failure";
    return j;
}

int run_single(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    fs::path dir = cfg.get_or("out_dir", "out");
    try {
        validate_cross_keys(cfg);
        fs::create_directories(dir);
        std::string cmd = cfg.get("command");
        nlohmann::json result;
        if (cmd == "simulate")
            result = cmd_simulate(cfg, dir);
        else if (cmd == "classify")
            result = cmd_classify(cfg, dir);
        else if (cmd == "profile")
            result = cmd_profile(cfg, dir);
        else if (cmd == "check-weak")
            result = cmd_check_weak(cfg, dir);
        else if (cmd == "check-pss")
            result = cmd_check_pss(cfg, dir);
        else if (cmd == "verify-claws")
            result = cmd_verify_claws(cfg, dir);
        else if (cmd == "sweep")
            result = cmd_sweep(cfg, dir);
        double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        write_summary(dir, cfg, result, wall);
        return 0;
    } catch (const BlowUpError& e) {
        nlohmann::json r{{"status", "blow-up"},
                         {"last_valid_time", e.last_valid_time},
                         {"error", e.what()}};
        std::error_code ec;
        fs::create_directories(dir, ec);
        double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        write_summary(dir, cfg, r, wall);
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const IllConditionedError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

const std::string& RunConfig::get(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw ValidationError("missing config key: " + key);
    return it->second;
}

std::string RunConfig::get_or(const std::string& key,
                              const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
}

double RunConfig::num(const std::string& key) const {
    const std::string& s = get(key);
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("key " + key + " is not a number: " + s);
    }
}

double RunConfig::num_or(const std::string& key, double dflt) const {
    return has(key) ? num(key) : dflt;
}

long RunConfig::integer_or(const std::string& key, long dflt) const {
    if (!has(key)) return dflt;
    double v = num(key);
    long l = static_cast<long>(v);
    if (static_cast<double>(l) != v)
        throw ValidationError("key " + key + " must be an integer");
    return l;
}

bool RunConfig::has(const std::string& key) const { return kv.count(key) > 0; }

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": empty key");
        std::string full = section.empty() ? key : section + "." + key;
        if (!key_known(full))
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": unknown key " + full);
        cfg.kv[full] = val;
    }
    if (cfg.has("command")) validate_cross_keys(cfg);
    return cfg;
}

void apply_overrides(
    RunConfig& cfg,
    const std::vector<std::pair<std::string, std::string>>& kv) {
    for (auto& [k, v] : kv) {
        if (!key_known(k)) throw ValidationError("unknown key " + k);
        cfg.kv[k] = v;
    }
    if (cfg.has("command")) validate_cross_keys(cfg);
}

int run(const RunConfig& cfg) { return run_single(cfg); }

int main_entry(int argc, const char* const* argv) {
    try {
        if (argc < 2) {
            std::cerr << kVersion
                      << "\nusage: ghcwave <command> [--config FILE] "
                         "[--key value]...\ncommands:";
            for (auto& c : kCommands) std::cerr << " " << c;
            std::cerr << "\n";
            return 2;
        }
        RunConfig cfg;
        std::vector<std::pair<std::string, std::string>> flags;
        std::string command = argv[1];
        for (int i = 2; i < argc; ++i) {
            std::string a = argv[i];
            if (a.rfind("--", 0) != 0)
                throw ValidationError("expected --key value, got " + a);
            if (i + 1 >= argc)
                throw ValidationError("flag " + a + " is missing a value");
            flags.emplace_back(a.substr(2), argv[++i]);
        }
        for (auto it = flags.begin(); it != flags.end();) {
            if (it->first == "config") {
                std::ifstream f(it->second);
                if (!f)
                    throw ValidationError("cannot read config file " + it->second);
                std::stringstream ss;
                ss << f.rdbuf();
                RunConfig file_cfg = parse_config(ss.str());
                for (auto& [k, v] : file_cfg.kv)
                    if (!cfg.kv.count(k)) cfg.kv[k] = v;
                it = flags.erase(it);
            } else {
                ++it;
            }
        }
        cfg.kv["command"] = command;
        apply_overrides(cfg, flags);
        return run(cfg);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace ghcwave
