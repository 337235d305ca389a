#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sqg/calibration.hpp"
#include "sqg/io.hpp"
#include "sqg/runner.hpp"

using namespace sqg;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& tag) {
    const std::string d = "/tmp/sqg_harness_" + tag;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

RunConfig linear_heat_config(const std::string& dir) {
    RunConfig cfg;
    cfg.grid = make_grid(64);
    cfg.stepper.alpha = 0.25;
    cfg.stepper.mode = EquationMode::linear_heat;
    cfg.stepper.dt_policy.kind = DtPolicy::Kind::fixed;
    cfg.stepper.dt_policy.dt = 0.01;
    cfg.stepper.t_end = 0.5;
    cfg.analysis.probe_dt = 0.1;
    cfg.analysis.sobolev_s = {1.6};
    cfg.analysis.lp_p = {4.0};
    cfg.analysis.besov_sp = {{1.5, 2.0}};
    cfg.data.kind = DataRecipe::Kind::band_limited_random;
    cfg.data.j_lo = 0;
    cfg.data.j_hi = 3;
    cfg.data.slope = -1.0;
    cfg.data.normalize = DataRecipe::Norm::hs;
    cfg.data.norm_s = 1.6;
    cfg.data.norm_value = 1.0;
    cfg.output.dir = dir;
    cfg.seed = 42;
    return cfg;
}

}  // namespace

TEST_CASE("data recipes") {
    const GridSpec g = make_grid(128);
    const FilterBank bank(g);

    SUBCASE("single shell: all energy in one shell, zero sparseness below it") {
        DataRecipe r;
        r.kind = DataRecipe::Kind::single_shell;
        r.shell = 3;
        SpectralField f = generate(r, g, 7);
        ShellSpectrum sp = shell_spectrum(bank, f);
        for (int j = bank.j_min(); j <= bank.j_max(); ++j)
            if (j != 3) CHECK(sp.at(j) == 0.0);
        CHECK(sp.at(3) > 0.0);
        for (double s : {1.0, 1.6})
            CHECK(sparseness_ratio(bank, f, 3, s).value == 0.0);
    }

    SUBCASE("band-limited random: fitted shell slope within 10%") {
        DataRecipe r;
        r.kind = DataRecipe::Kind::band_limited_random;
        r.j_lo = 0;
        r.j_hi = 5;
        r.slope = -1.0;
        SpectralField f = generate(r, g, 11);
        ShellSpectrum sp = shell_spectrum(bank, f);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (int j = 1; j <= 4; ++j) {  // interior shells see the full annulus
            const double y = std::log2(sp.at(j));
            sx += j;
            sy += y;
            sxx += j * j;
            sxy += j * y;
            ++m;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        CHECK(slope == doctest::Approx(-1.0).epsilon(0.10));
    }

    SUBCASE("high-frequency-concentrated: exactly empty below the floor") {
        DataRecipe r;
        r.kind = DataRecipe::Kind::high_frequency_concentrated;
        r.j_lo = 4;
        r.j_hi = 5;
        r.normalize = DataRecipe::Norm::hs;
        r.norm_s = 1.6;
        r.norm_value = 0.9;
        SpectralField f = generate(r, g, 13);
        CHECK(sobolev_norm(f, 1.6) == doctest::Approx(0.9).epsilon(1e-12));
        for (int J = 0; J <= 4; ++J)
            CHECK(sparseness_ratio(bank, f, J, 1.6).value == 0.0);
    }

    SUBCASE("low-frequency-dominated: exactly empty at and above the cap") {
        DataRecipe r;
        r.kind = DataRecipe::Kind::low_frequency_dominated;
        r.j_hi = 3;
        SpectralField f = generate(r, g, 17);
        RatioValue rv = sparseness_ratio(bank, f, 3, 1.6);
        CHECK(rv.defined);
        CHECK(std::isinf(rv.value));
    }

    SUBCASE("gaussian vortex pair: mean-zero, odd in x1 about the midline") {
        DataRecipe r;
        r.kind = DataRecipe::Kind::gaussian_vortex_pair;
        r.amplitude = 2.0;
        r.vortex_radius = 0.4;
        r.vortex_separation = 2.0;
        SpectralField f = generate(r, g, 0);
        CHECK(std::abs(f.mean_mode()) == 0.0);
        CHECK(physical_max_abs(f) > 1.0);
    }

    SUBCASE("determinism and seed sensitivity") {
        DataRecipe r;
        r.kind = DataRecipe::Kind::band_limited_random;
        r.j_lo = 1;
        r.j_hi = 4;
        SpectralField a = generate(r, g, 5);
        SpectralField b = generate(r, g, 5);
        SpectralField c = generate(r, g, 6);
        CHECK(lp_norm(a - b, 2.0) == 0.0);
        CHECK(lp_norm(a - c, 2.0) > 0.0);
    }

    SUBCASE("shell beyond the lattice rejected") {
        DataRecipe r;
        r.kind = DataRecipe::Kind::single_shell;
        r.shell = 10;  // 1024 > |xi|_corner at n=128
        CHECK_THROWS_AS(generate(r, g, 1), std::invalid_argument);
    }

    SUBCASE("checkpoint recipe round-trips a field exactly") {
        DataRecipe band;
        band.kind = DataRecipe::Kind::band_limited_random;
        band.j_lo = 1;
        band.j_hi = 3;
        SpectralField f = generate(band, g, 23);
        const std::string path = "/tmp/sqg_recipe_ckpt.bin";
        write_checkpoint(path, f, 0.25, 0.0);
        DataRecipe r;
        r.kind = DataRecipe::Kind::checkpoint;
        r.checkpoint_path = path;
        SpectralField back = generate(r, g, 999);  // seed must not matter
        CHECK(lp_norm(back - f, 2.0) == 0.0);
    }
}

TEST_CASE("series table and CSV") {
    SeriesTable tb;
    tb.columns = {"t", "hs_1.6", "shell_-1", "shell_0"};
    tb.rows = {{0.0, 1.0 / 3.0, 1e-17, 2.0}, {0.1, 0.3333333333333333, 0.5, 1.0}};

    SUBCASE("round trip preserves doubles exactly") {
        SeriesTable back = from_csv(to_csv(tb));
        REQUIRE(back.columns == tb.columns);
        REQUIRE(back.nrows() == tb.nrows());
        for (size_t r = 0; r < tb.nrows(); ++r)
            for (size_t c = 0; c < tb.columns.size(); ++c)
                CHECK(back.rows[r][c] == tb.rows[r][c]);
    }

    SUBCASE("missing columns are reported by name") {
        CHECK_THROWS_WITH_AS(tb.at(0, "nope"), "SeriesTable: missing column 'nope'",
                             std::out_of_range);
    }
}

TEST_CASE("config parse, validate, round trip") {
    const std::string dir = fresh_dir("config");
    RunConfig cfg = linear_heat_config(dir + "/run");

    SUBCASE("serialize(parse(text)) is idempotent") {
        const nlohmann::json j1 = to_json(cfg);
        RunConfig cfg2 = config_from_json(j1);
        const nlohmann::json j2 = to_json(cfg2);
        CHECK(j1.dump() == j2.dump());
    }

    SUBCASE("validation lists every violated constraint") {
        RunConfig bad = cfg;
        bad.grid.n = 48;
        bad.stepper.dt_policy.dt = -1.0;
        bad.output.dir = "";
        auto problems = bad.validate();
        CHECK(problems.size() >= 3);
    }

    SUBCASE("load_config surfaces violations with messages") {
        RunConfig bad = cfg;
        bad.stepper.alpha = 7.0;
        const std::string path = dir + "/bad.json";
        save_config(path, bad);
        CHECK_THROWS_AS(load_config(path), std::invalid_argument);
        try {
            load_config(path);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("alpha") != std::string::npos);
        }
    }

    SUBCASE("criteria cross-field constraints") {
        RunConfig c2 = cfg;
        c2.criteria.theorems = {"prop"};
        c2.criteria.s = 1.7;  // not in analysis list
        CHECK(!c2.validate().empty());
        c2.criteria.s = 1.6;
        CHECK(c2.validate().empty());
        c2.criteria.theorems = {"4"};
        CHECK(!c2.validate().empty());  // needs twin.enabled
    }

    SUBCASE("twin runs require the fixed dt policy") {
        RunConfig c3 = cfg;
        c3.twin.enabled = true;
        c3.stepper.dt_policy.kind = DtPolicy::Kind::cfl;
        bool found = false;
        for (const auto& msg : c3.validate())
            found |= msg.find("identical step sequences") != std::string::npos;
        CHECK(found);
    }
}

TEST_CASE("simulate run writes coherent artifacts") {
    const std::string dir = fresh_dir("simulate") + "/run";
    RunConfig cfg = linear_heat_config(dir);
    REQUIRE(run_simulate(cfg) == exit_ok);

    SUBCASE("trajectory CSV has the monotone-decreasing Sobolev column") {
        SeriesTable tb = read_csv(dir + "/trajectory.csv");
        const auto hs = tb.column("hs_1.6");
        REQUIRE(hs.size() == 6);
        for (size_t k = 1; k < hs.size(); ++k) CHECK(hs[k] < hs[k - 1]);
    }

    SUBCASE("reproducibility: byte-identical outputs on re-run") {
        const std::string csv1 = slurp(dir + "/trajectory.csv");
        const std::string norms1 = slurp(dir + "/norms.json");
        const std::string dir2 = fresh_dir("simulate2") + "/run";
        RunConfig cfg2 = linear_heat_config(dir2);
        REQUIRE(run_simulate(cfg2) == exit_ok);
        CHECK(slurp(dir2 + "/trajectory.csv") == csv1);
        CHECK(slurp(dir2 + "/norms.json") == norms1);
    }

    SUBCASE("final checkpoint resumes cleanly") {
        Checkpoint ck = read_checkpoint(dir + "/state_final.ckpt");
        CHECK(ck.time == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(ck.field.all_finite());
    }

    SUBCASE("atomicity discipline: no temp files survive") {
        CHECK_FALSE(fs::exists(dir + "/trajectory.csv.tmp"));
        CHECK_FALSE(fs::exists(dir + "/norms.json.tmp"));
    }
}

TEST_CASE("twin run artifacts and criteria recompute byte-identically") {
    const std::string dir = fresh_dir("twin") + "/run";
    RunConfig cfg = linear_heat_config(dir);
    cfg.stepper.mode = EquationMode::full;
    cfg.stepper.t_end = 0.2;
    cfg.data.norm_value = 0.3;
    cfg.twin.enabled = true;
    cfg.twin.perturbation.kind = DataRecipe::Kind::single_shell;
    cfg.twin.perturbation.shell = 4;
    cfg.twin.perturbation.normalize = DataRecipe::Norm::l2;
    cfg.twin.perturbation.norm_value = 1e-6;
    cfg.twin.thm4_J = 3;
    cfg.criteria.theorems = {"4", "5"};
    REQUIRE(run_simulate(cfg) == exit_ok);

    SUBCASE("identical twins zero out w") {
        const std::string dir2 = fresh_dir("twin_id") + "/run";
        RunConfig same = cfg;
        same.output.dir = dir2;
        same.twin.perturbation.norm_value = 1e-6;
        same.twin.perturbation.amplitude = 0.0;  // zero perturbation
        same.twin.perturbation.normalize = DataRecipe::Norm::none;
        same.criteria.theorems = {};
        REQUIRE(run_simulate(same) == exit_ok);
        SeriesTable tb = read_csv(dir2 + "/trajectory.csv");
        for (double v : tb.column("w_l2")) CHECK(v == 0.0);
    }

    SUBCASE("criteria JSON recomputes byte-identically from the CSV") {
        const std::string thm4 = slurp(dir + "/criteria/thm4.json");
        const std::string thm5 = slurp(dir + "/criteria/thm5.json");
        fs::remove(dir + "/criteria/thm4.json");
        fs::remove(dir + "/criteria/thm5.json");
        REQUIRE(run_criteria(dir, "all") == exit_ok);
        CHECK(slurp(dir + "/criteria/thm4.json") == thm4);
        CHECK(slurp(dir + "/criteria/thm5.json") == thm5);
    }
}

TEST_CASE("plots derive from the CSV") {
    const std::string dir = fresh_dir("plots") + "/run";
    RunConfig cfg = linear_heat_config(dir);
    cfg.stepper.mode = EquationMode::full;
    cfg.stepper.t_end = 0.2;
    cfg.data.norm_value = 0.3;
    cfg.twin.enabled = true;
    cfg.twin.perturbation.kind = DataRecipe::Kind::single_shell;
    cfg.twin.perturbation.shell = 4;
    cfg.twin.perturbation.normalize = DataRecipe::Norm::l2;
    cfg.twin.perturbation.norm_value = 1e-4;
    cfg.criteria.theorems = {"5"};
    cfg.constants.cstar = 1e-9;  // force an early crossing
    REQUIRE(run_simulate(cfg) == exit_ok);
    REQUIRE(emit_plots(dir) == exit_ok);
    CHECK(fs::exists(dir + "/plots/norms_vs_time.svg"));
    CHECK(fs::exists(dir + "/plots/shell_waterfall.svg"));
    CHECK(fs::exists(dir + "/plots/thm5_ratio.svg"));

    SUBCASE("the plotted crossing marker equals the report's first crossing") {
        // synthetic run dir with a pinned crossing of the c* line
        const std::string sdir = fresh_dir("plots_synth");
        RunConfig scfg = cfg;
        scfg.output.dir = sdir;
        scfg.constants.cstar = 0.5;
        save_config(sdir + "/config.json", scfg);
        write_json(sdir + "/meta.json",
                   nlohmann::json{{"blowup", {{"flagged", false}, {"t_flag", 0.0}}}});
        SeriesTable tb;
        tb.columns = {"t", "l2", "w_p5", "w_lo5", "w_hi5", "grad1_q"};
        tb.rows = {{0.0, 1.0, 0.0, 0.0, 0.0, 2.0},
                   {0.125, 1.0, 1.0, 0.30, 1.0, 2.0},
                   {0.25, 1.0, 1.0, 0.45, 1.0, 2.0},
                   {0.375, 1.0, 1.0, 0.60, 1.0, 2.0},
                   {0.5, 1.0, 1.0, 0.75, 1.0, 2.0}};
        write_csv(sdir + "/trajectory.csv", tb);
        REQUIRE(run_criteria(sdir, "5") == exit_ok);
        REQUIRE(emit_plots(sdir) == exit_ok);
        const nlohmann::json rep = read_json(sdir + "/criteria/thm5.json");
        const double first = rep.at("first_crossing").get<double>();
        CHECK(first == 0.375);
        const std::string svg = slurp(sdir + "/plots/thm5_ratio.svg");
        char want[64];
        std::snprintf(want, sizeof(want), "data-value=\"%.17g\"", first);
        CHECK(svg.find(want) != std::string::npos);
    }

    SUBCASE("empty trajectory is a no-op") {
        const std::string dir2 = fresh_dir("plots_empty");
        SeriesTable empty;
        empty.columns = {"t", "l2"};
        write_csv(dir2 + "/trajectory.csv", empty);
        save_config(dir2 + "/config.json", cfg);
        CHECK(emit_plots(dir2) == exit_ok);
    }

    SUBCASE("single-probe trajectory draws single-point plots") {
        const std::string dir4 = fresh_dir("plots_single");
        SeriesTable one;
        one.columns = {"t", "l2", "linf", "hs_1.6", "shell_0", "shell_1"};
        one.rows = {{0.0, 1.0, 0.5, 2.0, 0.7, 0.3}};
        write_csv(dir4 + "/trajectory.csv", one);
        save_config(dir4 + "/config.json", cfg);
        CHECK(emit_plots(dir4) == exit_ok);
        const std::string svg = slurp(dir4 + "/plots/norms_vs_time.svg");
        CHECK(svg.find("<circle") != std::string::npos);  // point marker fallback
    }

    SUBCASE("missing required columns are reported by name") {
        const std::string dir3 = fresh_dir("plots_missing");
        SeriesTable no_l2;
        no_l2.columns = {"t", "hs_1.6"};
        no_l2.rows = {{0.0, 1.0}};
        write_csv(dir3 + "/trajectory.csv", no_l2);
        save_config(dir3 + "/config.json", cfg);
        CHECK(emit_plots(dir3) == exit_config_error);
    }
}

TEST_CASE("calibration drivers") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    const double s = 1.6, alpha = 0.25;

    SUBCASE("linear-heat family never doubles: C0 returns the cap") {
        DataRecipe r;
        r.kind = DataRecipe::Kind::band_limited_random;
        r.j_lo = 1;
        r.j_hi = 3;
        r.normalize = DataRecipe::Norm::hs;
        r.norm_s = s;
        r.norm_value = 1.0;
        std::vector<SpectralField> family;
        for (double sc : {1.0, 2.0, 4.0}) {
            SpectralField f = generate(r, g, 3);
            f *= sc;
            family.push_back(std::move(f));
        }
        StepperConfig cfg;
        cfg.alpha = alpha;
        cfg.mode = EquationMode::linear_heat;
        cfg.dt_policy.dt = 0.01;
        cfg.t_end = 0.3;
        ProbeSchedule probes;
        probes.probe_dt = 0.05;
        probes.sobolev_s = {s};
        probes.shells = false;
        C0Calibration out = calibrate_c0(family, s, cfg, probes, bank, 0.7);
        CHECK_FALSE(out.failed);
        CHECK(out.C0 == 0.7);
        for (const auto& m : out.members) CHECK(m.censored);
    }

    SUBCASE("empty family rejected") {
        StepperConfig cfg;
        ProbeSchedule probes;
        C0Calibration out = calibrate_c0({}, s, cfg, probes, bank, 1.0);
        CHECK(out.failed);
    }

    SUBCASE("rescaled family exposes the Ju exponent through passing times") {
        // the discrete dynamics scale exactly, so tau ~ h^{-2a/(s-2+2a)} when
        // the family is generated by the scaling symmetry
        DataRecipe r;
        r.kind = DataRecipe::Kind::band_limited_random;
        r.j_lo = 1;
        r.j_hi = 2;
        r.normalize = DataRecipe::Norm::hs;
        r.norm_s = s;
        r.norm_value = 1.0;
        SpectralField base = generate(r, g, 9);

        const double e = 2.0 * alpha / (s - 2.0 + 2.0 * alpha);
        std::vector<double> log_h, log_tau;
        for (int m = 0; m < 3; ++m) {
            const double lam = std::exp2(m);
            SpectralField f = rescale_solution(base, lam, alpha);
            StepperConfig cfg;
            cfg.alpha = alpha;
            cfg.mode = EquationMode::linear_heat;  // tau censored at t_end for all
            cfg.dt_policy.dt = 0.004 / std::pow(lam, 2 * alpha);
            cfg.t_end = 0.4 / std::pow(lam, 2 * alpha);
            ProbeSchedule probes;
            probes.probe_dt = cfg.t_end / 10;
            probes.sobolev_s = {s};
            probes.shells = false;
            FilterBank b2(f.grid);
            C0Calibration out = calibrate_c0({f}, s, cfg, probes, b2, 1e9);
            REQUIRE_FALSE(out.failed);
            log_h.push_back(std::log2(out.members[0].h));
            log_tau.push_back(std::log2(out.members[0].tau));
        }
        // censored taus equal t_end which compresses exactly like lam^{-2a};
        // h scales like lam^{s-2+2a}: slope = -2a/(s-2+2a) = -e
        const double slope =
            (log_tau.back() - log_tau.front()) / (log_h.back() - log_h.front());
        CHECK(slope == doctest::Approx(-e).epsilon(0.10));
    }
}

TEST_CASE("shipped example configs parse and validate") {
    for (const char* name :
         {"linear_heat.json", "twin_uniqueness.json", "smallness_demo.json"}) {
        const std::string path = std::string(SQG_SOURCE_DIR) + "/configs/" + name;
        CAPTURE(name);
        CHECK_NOTHROW(load_config(path));
    }
}

TEST_CASE("environment variable output root") {
    CHECK(resolve_output_dir("/abs/path") == "/abs/path");
    setenv("SQG_OUTPUT_ROOT", "/tmp/sqg_root", 1);
    CHECK(resolve_output_dir("rel/run") == "/tmp/sqg_root/rel/run");
    unsetenv("SQG_OUTPUT_ROOT");
}
