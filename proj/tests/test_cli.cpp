#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghcwave/cli.hpp"
#include "ghcwave/errors.hpp"

using namespace ghcwave;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "ghcwave_cli_tests" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

// summary.json with the volatile wall-time line removed
std::string summary_stable(const fs::path& dir) {
    std::string s = slurp(dir / "summary.json");
    std::string out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line))
        if (line.find("wall_time_seconds") == std::string::npos)
            out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("sections, comments, overrides") {
        RunConfig cfg = parse_config(
            "command = classify\n"
            "seed = 7\n"
            "[equation]\n"
            "alpha = 1   # physical convention\n"
            "beta = 6\n"
            "Gamma = 1\n"
            "epsilon = 0\n"
            "[wave]\n"
            "c = -1\n"
            "A = 0.5\n"
            "B = -1\n");
        CHECK(cfg.num("equation.alpha") == 1.0);
        CHECK(cfg.get("command") == "classify");
        apply_overrides(cfg, {{"wave.c", "-2"}});
        CHECK(cfg.num("wave.c") == -2.0);
    }
    SUBCASE("unknown keys are errors with a line number") {
        try {
            parse_config("command = classify\n[equation]\nalpa = 1\n");
            FAIL("expected rejection");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
            CHECK(std::string(e.what()).find("equation.alpa") !=
                  std::string::npos);
        }
    }
    SUBCASE("standing parameter constraint is enforced before compute") {
        CHECK_THROWS_AS(
            parse_config("command = classify\n[equation]\nepsilon = 0\nGamma = 0\n"
                         "[wave]\nc = 1\n"),
            ValidationError);
    }
    SUBCASE("c = 0 is rejected for classification") {
        CHECK_THROWS_AS(
            parse_config("command = classify\n[wave]\nc = 0\n"),
            ValidationError);
    }
    SUBCASE("defaults exist for a minimal simulate config") {
        RunConfig cfg = parse_config("command = simulate\n");
        CHECK(cfg.num_or("solver.dt", 1e-3) == 1e-3);
        CHECK(cfg.integer_or("grid.n", 512) == 512);
        CHECK(cfg.num_or("grid.L", 40.0) == 40.0);
    }
    SUBCASE("malformed lines carry their number") {
        try {
            parse_config("command = classify\nnot a kv line\n");
            FAIL("expected rejection");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
}

TEST_CASE("classify command writes the verdict artifact") {
    fs::path dir = fresh_dir("classify");
    RunConfig cfg = parse_config(
        "command = classify\n"
        "[equation]\nalpha = 1\nbeta = 6\nGamma = 1\nepsilon = 0\n"
        "[wave]\nc = -1\nA = 0.5\nB = -1\n");
    cfg.kv["out_dir"] = dir.string();
    CHECK(run(cfg) == 0);
    std::string verdicts = slurp(dir / "verdicts.json");
    CHECK(verdicts.find("smooth_periodic") != std::string::npos);
    std::string summary = slurp(dir / "summary.json");
    CHECK(summary.find("\"seed\"") != std::string::npos);
    CHECK(summary.find("\"version\"") != std::string::npos);
}

TEST_CASE("determinism: same config and seed give identical artifacts") {
    fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
    RunConfig cfg = parse_config(
        "command = verify-claws\nseed = 99\n"
        "[claws]\njets = 200\n"
        "[equation]\nalpha = 0.3\nbeta = 0.4\ngamma = -0.2\nGamma = 0.1\n"
        "epsilon = 1\n");
    cfg.kv["out_dir"] = d1.string();
    CHECK(run(cfg) == 0);
    cfg.kv["out_dir"] = d2.string();
    CHECK(run(cfg) == 0);
    CHECK(slurp(d1 / "claws_report.json") == slurp(d2 / "claws_report.json"));
    // summaries equal after dropping wall time and the differing out_dir echo
    std::string s1 = summary_stable(d1), s2 = summary_stable(d2);
    size_t p1 = s1.find("det1");
    size_t p2 = s2.find("det2");
    REQUIRE(p1 != std::string::npos);
    s1.replace(p1, 4, "detX");
    s2.replace(p2, 4, "detX");
    CHECK(s1 == s2);
}

TEST_CASE("verify-claws reports round-off-level deviations") {
    fs::path dir = fresh_dir("claws");
    RunConfig cfg = parse_config(
        "command = verify-claws\nseed = 5\n[claws]\njets = 1000\n"
        "[equation]\nalpha = 1\nbeta = 0\ngamma = 0\nGamma = -1\nepsilon = 1\n");
    cfg.kv["out_dir"] = dir.string();
    CHECK(run(cfg) == 0);
    std::string rep = slurp(dir / "claws_report.json");
    auto grab = [&](const std::string& key) {
        size_t at = rep.find(key);
        REQUIRE(at != std::string::npos);
        at = rep.find(':', at);
        return std::stod(rep.substr(at + 1));
    };
    CHECK(grab("max_relative_deviation_q1") <= 1e-12);
    CHECK(grab("max_relative_deviation_qu") <= 1e-12);
    CHECK(grab("max_relative_deviation_qsqrt") <= 1e-12);
}

TEST_CASE("simulate exit codes") {
    SUBCASE("healthy run exits 0 and writes artifacts") {
        fs::path dir = fresh_dir("sim_ok");
        RunConfig cfg = parse_config(
            "command = simulate\n"
            "[grid]\nL = 40\nn = 128\n"
            "[solver]\ndt = 0.005\nt_end = 0.05\nmonitor_every = 5\n"
            "[simulate]\nic = gaussian\namplitude = 0.2\nwidth = 3\n"
            "[equation]\nalpha = 0.3\nGamma = 0.1\nepsilon = 1\n");
        cfg.kv["out_dir"] = dir.string();
        CHECK(run(cfg) == 0);
        CHECK(slurp(dir / "fields.csv").rfind("t,x,u\n", 0) == 0);
        CHECK(slurp(dir / "monitors.csv").rfind("t,name,value\n", 0) == 0);
        CHECK(fs::exists(dir / "final_state.f64"));
        CHECK(fs::exists(dir / "final_state.json"));
    }
    SUBCASE("blow-up exits 3 and records the last valid time") {
        fs::path dir = fresh_dir("sim_blowup");
        RunConfig cfg = parse_config(
            "command = simulate\n"
            "[grid]\nL = 40\nn = 128\n"
            "[solver]\ndt = 0.8\nt_end = 40\nmonitor_every = 1\n"
            "[simulate]\nic = gaussian\namplitude = 3\nwidth = 1\n"
            "[equation]\nalpha = 0.3\nGamma = 0.1\nepsilon = 1\n");
        cfg.kv["out_dir"] = dir.string();
        CHECK(run(cfg) == 3);
        CHECK(slurp(dir / "summary.json").find("last_valid_time") !=
              std::string::npos);
    }
    SUBCASE("validation failure exits 2") {
        RunConfig cfg;
        cfg.kv["command"] = "simulate";
        cfg.kv["grid.n"] = "100";  // not a power of two
        CHECK(run(cfg) == 2);
    }
}

TEST_CASE("profile and check commands produce their artifacts") {
    fs::path dir = fresh_dir("profile");
    RunConfig cfg = parse_config(
        "command = profile\n"
        "[equation]\nalpha = 0\nGamma = 0\nepsilon = 1\n"
        "[wave]\nc = 1\n"
        "[profile]\nfamily = peakon\nz_min = -5\nz_max = 5\nz_samples = 101\n");
    cfg.kv["out_dir"] = dir.string();
    CHECK(run(cfg) == 0);
    CHECK(slurp(dir / "profile.csv").rfind("z,phi\n", 0) == 0);

    fs::path dw = fresh_dir("weak");
    RunConfig cw = parse_config(
        "command = check-weak\n"
        "[equation]\nalpha = 1\nGamma = -1\nepsilon = 1\n[wave]\nc = 2\n");
    cw.kv["out_dir"] = dw.string();
    CHECK(run(cw) == 0);
    CHECK(slurp(dw / "weak_report.json").find("max_residual") !=
          std::string::npos);

    fs::path dp = fresh_dir("pss");
    RunConfig cp = parse_config(
        "command = check-pss\nseed = 3\n"
        "[equation]\nalpha = 1\nGamma = 0.5\nepsilon = 1\n"
        "[pss]\neta_min = 0.5\neta_max = 2\neta_count = 3\njets = 20\n");
    cp.kv["out_dir"] = dp.string();
    CHECK(run(cp) == 0);
    CHECK(slurp(dp / "pss_report.json").find("eta_grid") != std::string::npos);
}

TEST_CASE("sweep equals the concatenation of individual runs") {
    fs::path dir = fresh_dir("sweep");
    RunConfig cfg = parse_config(
        "command = sweep\nseed = 11\n"
        "[sweep]\ncommand = classify\nkeys = equation.alpha, wave.c\n"
        "[equation]\nbeta = 6\nGamma = 1\nepsilon = 0\n"
        "[wave]\nA = 0.5\nB = -1\n");
    cfg.kv["sweep.equation.alpha"] = "1, 2";
    cfg.kv["sweep.wave.c"] = "-1, -2";
    cfg.kv["out_dir"] = dir.string();
    CHECK(run(cfg) == 0);
    int cells = 0;
    for (auto& e : fs::directory_iterator(dir))
        if (e.is_directory()) ++cells;
    CHECK(cells == 4);

    // cell 0 reproduces the individual run byte-for-byte
    fs::path single = fresh_dir("sweep_single");
    RunConfig one = parse_config(
        "command = classify\nseed = 11\n"
        "[equation]\nalpha = 1\nbeta = 6\nGamma = 1\nepsilon = 0\n"
        "[wave]\nc = -1\nA = 0.5\nB = -1\n");
    one.kv["out_dir"] = single.string();
    CHECK(run(one) == 0);
    CHECK(slurp(dir / "cell_0" / "verdicts.json") ==
          slurp(single / "verdicts.json"));
}

TEST_CASE("argv front door") {
    fs::path dir = fresh_dir("argv");
    fs::path cfgfile = dir / "run.cfg";
    {
        std::ofstream f(cfgfile);
        f << "[equation]\nalpha = 0\nGamma = 0\nepsilon = 1\n[wave]\nc = 1\n";
    }
    std::string out = (dir / "out").string();
    const char* argv[] = {"ghcwave",  "classify", "--config",
                          cfgfile.c_str(), "--out_dir", out.c_str()};
    CHECK(main_entry(6, argv) == 0);
    CHECK(slurp(fs::path(out) / "verdicts.json").find("peakon_decay") !=
          std::string::npos);

    const char* bad[] = {"ghcwave", "frobnicate"};
    CHECK(main_entry(2, bad) == 2);
}
