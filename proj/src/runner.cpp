#include "sqg/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "sqg/calibration.hpp"
#include "sqg/io.hpp"

namespace sqg {

namespace fs = std::filesystem;
using nlohmann::json;

std::string resolve_output_dir(const std::string& dir) {
    fs::path p(dir);
    if (p.is_absolute()) return p.string();
    if (const char* root = std::getenv("SQG_OUTPUT_ROOT"))
        return (fs::path(root) / p).string();
    return p.string();
}

namespace {

std::string run_id_of(const json& cfg_json) {
    // FNV-1a over the normalized config text: stable across runs by design
    const std::string text = cfg_json.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SeriesTable steps_table(const TrajectoryRecord& rec) {
    SeriesTable tb;
    tb.columns = {"t", "l2sq", "diss", "dt"};
    for (const StepRow& s : rec.steps) tb.rows.push_back({s.t, s.l2sq, s.dissipation, s.dt});
    return tb;
}

json norms_json(const SeriesTable& tb) {
    json rows = json::array();
    for (const auto& r : tb.rows) {
        json row;
        for (size_t c = 0; c < tb.columns.size(); ++c) row[tb.columns[c]] = r[c];
        rows.push_back(row);
    }
    return rows;
}

json meta_json(const RunConfig& cfg, const TrajectoryRecord& rec, const std::string& id,
               bool twin) {
    return json{{"run_id", id},
                {"twin", twin},
                {"t_final", rec.t_final},
                {"integrator_failed", rec.integrator_failed},
                {"t_fail", rec.t_fail},
                {"blowup", {{"flagged", rec.blowup_flag},
                            {"t_flag", rec.t_flag},
                            {"reason", rec.flag_reason}}},
                {"thm4_p", 2.0 * cfg.twin.thm4_q / (cfg.twin.thm4_q - 1.0)}};
}

double criteria_s(const RunConfig& cfg) {
    if (cfg.criteria.s != 0.0) return cfg.criteria.s;
    return cfg.analysis.sobolev_s.empty() ? 0.0 : cfg.analysis.sobolev_s.front();
}

/// Evaluate one theorem's report from persisted-style inputs.
json evaluate_theorem(const std::string& name, const RunConfig& cfg,
                      const SeriesTable& traj, const json& meta, bool* vacuous) {
    const double s = criteria_s(cfg);
    const double alpha = cfg.stepper.alpha;
    auto mark = [vacuous](Verdict v) {
        if (v == Verdict::vacuous && vacuous) *vacuous = true;
    };
    try {
        if (name == "prop") {
            PropReport r = prop_evaluate(traj, s, alpha, cfg.criteria.gamma, cfg.constants);
            mark(r.overall);
            return to_json(r);
        }
        if (name == "1") {
            Thm1Report r =
                thm1_evaluate(traj, s, alpha, cfg.criteria.T_star, cfg.constants);
            mark(r.overall);
            return to_json(r);
        }
        if (name == "2") {
            const json& b = meta.at("blowup");
            Thm2Report r = thm2_monitor(traj, s, alpha, cfg.constants,
                                        b.value("flagged", false), b.value("t_flag", 0.0),
                                        cfg.criteria.thm2_prefactor);
            mark(r.overall);
            return to_json(r);
        }
        if (name == "3") {
            Thm3Report r = thm3_monitor(traj, s, alpha, cfg.constants);
            mark(r.overall);
            return to_json(r);
        }
        if (name == "4") {
            Thm4Report r = thm4_monitor(traj, cfg.twin.thm4_J, cfg.twin.thm4_q);
            mark(r.overall);
            return to_json(r);
        }
        if (name == "5") {
            Thm5Report r = thm5_monitor(traj, cfg.twin.thm5_p, cfg.twin.thm5_q, alpha,
                                        cfg.constants, cfg.criteria.thm5_delta);
            mark(r.overall);
            return to_json(r);
        }
    } catch (const std::exception& e) {
        if (vacuous) *vacuous = true;
        return json{{"theorem", name}, {"overall", "vacuous"}, {"note", e.what()}};
    }
    return json{{"theorem", name}, {"overall", "vacuous"}, {"note", "unknown theorem id"}};
}

int write_criteria_reports(const RunConfig& cfg, const SeriesTable& traj,
                           const json& meta, const std::string& dir,
                           const std::string& which) {
    bool vacuous = false;
    for (const std::string& t : cfg.criteria.theorems) {
        if (!which.empty() && which != "all" && which != t) continue;
        const json rep = evaluate_theorem(t, cfg, traj, meta, &vacuous);
        write_json(dir + "/criteria/thm" + t + ".json", rep);
    }
    return vacuous ? exit_vacuous : exit_ok;
}

}  // namespace

int run_simulate(const RunConfig& cfg, std::string* run_dir_out) {
    auto bad = cfg.validate();
    if (!bad.empty()) {
        for (const auto& b : bad) std::cerr << "config error: " << b << "\n";
        return exit_config_error;
    }
    const std::string dir = resolve_output_dir(cfg.output.dir);
    if (run_dir_out) *run_dir_out = dir;
    fs::create_directories(dir);

    const json cfg_json = to_json(cfg);
    const std::string id = run_id_of(cfg_json);
    write_json(dir + "/config.json", cfg_json);

    FilterBank bank(cfg.grid);
    double t0 = 0.0;
    SpectralField theta0;
    if (cfg.data.kind == DataRecipe::Kind::checkpoint) {
        // resume: the run continues from the saved state and time
        Checkpoint ck = read_checkpoint(cfg.data.checkpoint_path);
        if (!(ck.field.grid == cfg.grid)) {
            std::cerr << "config error: checkpoint grid does not match grid config\n";
            return exit_config_error;
        }
        theta0 = std::move(ck.field);
        t0 = ck.time;
    } else {
        theta0 = generate(cfg.data, cfg.grid, cfg.seed);
    }

    StepperConfig scfg = cfg.stepper;
    if (cfg.output.checkpoints && scfg.checkpoint_every == 0.0)
        scfg.checkpoint_every = cfg.analysis.probe_dt;

    TrajectoryRecord rec;
    SeriesTable traj;
    bool twin = cfg.twin.enabled;
    if (!twin) {
        rec = evolve(theta0, scfg, cfg.analysis, bank, cfg.blowup, t0);
        traj = rec.to_table();
    } else {
        SpectralField theta0b = theta0;
        theta0b += generate(cfg.twin.perturbation, cfg.grid, cfg.seed + 1);
        TwinDiagnostics diag;
        diag.thm4_J = cfg.twin.thm4_J;
        diag.thm4_p = 2.0 * cfg.twin.thm4_q / (cfg.twin.thm4_q - 1.0);
        diag.thm5_p = cfg.twin.thm5_p;
        diag.thm5_q = cfg.twin.thm5_q;
        const double q5 = cfg.twin.thm5_q, a = cfg.stepper.alpha,
                     cs = cfg.constants.cstar;
        diag.cutoff_of_grad = [q5, a, cs](double g) { return thm5_cutoff(g, q5, a, cs); };
        TwinRecord tw = twin_evolve(theta0, theta0b, scfg, cfg.analysis, bank, diag,
                                    cfg.blowup);
        traj = tw.to_table();
        rec = std::move(tw.first);
        if (cfg.output.checkpoints)
            write_checkpoint(dir + "/state_second_final.ckpt", tw.final_second,
                             cfg.stepper.alpha, rec.t_final);
    }

    write_csv(dir + "/trajectory.csv", traj);
    write_csv(dir + "/energy.csv", steps_table(rec));
    write_json(dir + "/norms.json", norms_json(traj));
    const json meta = meta_json(cfg, rec, id, twin);
    write_json(dir + "/meta.json", meta);
    if (!traj.rows.empty())
        atomic_write(dir + "/spectrum_final.txt", spectrum_text(traj, traj.nrows() - 1));
    write_checkpoint(dir + "/state_final.ckpt", rec.final_state, cfg.stepper.alpha,
                     rec.t_final);
    if (cfg.output.checkpoints) {
        int k = 0;
        for (const auto& [t, f] : rec.snapshots) {
            char name[48];
            std::snprintf(name, sizeof(name), "/checkpoints/ckpt_%05d.ckpt", k++);
            write_checkpoint(dir + name, f, cfg.stepper.alpha, t);
        }
    }

    int code = exit_ok;
    if (!cfg.criteria.theorems.empty())
        code = std::max(code, write_criteria_reports(cfg, traj, meta, dir, "all"));
    if (cfg.output.plots) emit_plots(dir);
    if (rec.integrator_failed) {
        std::cerr << "integrator failure at t = " << rec.t_fail
                  << "; last good state written to state_final.ckpt\n";
        return exit_integrator_failure;
    }
    return code;
}

int run_criteria(const std::string& run_dir, const std::string& which) {
    const std::string dir = resolve_output_dir(run_dir);
    RunConfig cfg;
    json meta;
    SeriesTable traj;
    try {
        cfg = config_from_json(read_json(dir + "/config.json"));
        meta = read_json(dir + "/meta.json");
        traj = read_csv(dir + "/trajectory.csv");
    } catch (const std::exception& e) {
        std::cerr << "criteria: " << e.what() << "\n";
        return exit_config_error;
    }
    if (cfg.criteria.theorems.empty()) {
        std::cerr << "criteria: the run's config requests no theorems\n";
        return exit_config_error;
    }
    if (!which.empty() && which != "all") {
        bool listed = false;
        for (const auto& t : cfg.criteria.theorems) listed |= (t == which);
        if (!listed) {
            std::cerr << "criteria: theorem '" << which
                      << "' was not requested by the run config\n";
            return exit_config_error;
        }
    }
    return write_criteria_reports(cfg, traj, meta, dir, which);
}

int run_calibrate(const RunConfig& cfg, std::string* out_path) {
    auto bad = cfg.validate();
    if (!bad.empty()) {
        for (const auto& b : bad) std::cerr << "config error: " << b << "\n";
        return exit_config_error;
    }
    const std::string dir = resolve_output_dir(cfg.output.dir);
    fs::create_directories(dir);
    const std::string id = run_id_of(to_json(cfg));

    const double s = criteria_s(cfg);
    const double alpha = cfg.stepper.alpha;
    if (!admissible_s(s, alpha)) {
        std::cerr << "config error: calibration needs criteria.s in (2-2a, 2-a)\n";
        return exit_config_error;
    }
    FilterBank bank(cfg.grid);

    CalibrationConstants out = cfg.constants;
    out.Cb = measure_cb(bank, s);
    out.provenance_Cb = "calibrated";

    // C0: amplitude family of the configured recipe (three scales)
    std::vector<SpectralField> family;
    SpectralField base = generate(cfg.data, cfg.grid, cfg.seed);
    for (double sc : {1.0, 2.0, 4.0}) {
        SpectralField f = base;
        f *= sc;
        family.push_back(std::move(f));
    }
    const double cap = cfg.constants.C0;  // configured value acts as the cap
    C0Calibration c0 = calibrate_c0(family, s, cfg.stepper, cfg.analysis, bank, cap);
    if (c0.failed) {
        std::cerr << "calibration failure (C0): " << c0.reason << "\n";
        return exit_integrator_failure;
    }
    out.C0 = c0.C0;
    out.provenance_C0 = "calibrated";

    const int j_cap =
        static_cast<int>(std::floor(std::log2(cfg.grid.dealias_xi()))) - 1;
    const double h_target = sobolev_norm(base, s);
    CpropCalibration cp =
        calibrate_cprop(cfg.grid, bank, s, alpha, cfg.criteria.gamma, h_target, j_cap,
                        cfg.stepper, cfg.analysis, out.C0, 0.05, 0.6, 12, cfg.seed);
    if (cp.failed) {
        std::cerr << "calibration failure (Cprop): " << cp.reason << "\n";
        return exit_integrator_failure;
    }
    out.Cprop = cp.C;
    out.provenance_Cprop = "calibrated";
    out.calibration_run_id = id;

    json j;
    to_json(j, out);
    json extras{{"c0_members", json::array()}, {"cprop_trials", json::array()}};
    for (const auto& m : c0.members)
        extras["c0_members"].push_back(json{
            {"h", m.h}, {"tau", m.tau}, {"censored", m.censored}, {"c0", m.c0}});
    for (const auto& t : cp.trials)
        extras["cprop_trials"].push_back(json{{"c", t.c},
                                              {"t_check", t.t_check},
                                              {"j_min", t.j_min},
                                              {"feasible", t.feasible},
                                              {"conclusion", t.conclusion},
                                              {"worst_contraction", t.worst_contraction}});
    j["diagnostics"] = extras;
    const std::string path = dir + "/constants.json";
    write_json(path, j);
    if (out_path) *out_path = path;
    return exit_ok;
}

}  // namespace sqg
