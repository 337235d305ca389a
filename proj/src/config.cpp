#include "sqg/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "sqg/io.hpp"

namespace sqg {

using nlohmann::json;

namespace {

std::string mode_name(EquationMode m) {
    switch (m) {
        case EquationMode::full: return "full";
        case EquationMode::linear_heat: return "linear_heat";
        case EquationMode::inviscid: return "inviscid";
    }
    return "full";
}

EquationMode mode_from(const std::string& s) {
    if (s == "full") return EquationMode::full;
    if (s == "linear_heat") return EquationMode::linear_heat;
    if (s == "inviscid") return EquationMode::inviscid;
    throw std::invalid_argument("unknown stepper.mode '" + s + "'");
}

std::string kind_name(DataRecipe::Kind k) {
    switch (k) {
        case DataRecipe::Kind::single_shell: return "single_shell";
        case DataRecipe::Kind::band_limited_random: return "band_limited_random";
        case DataRecipe::Kind::high_frequency_concentrated:
            return "high_frequency_concentrated";
        case DataRecipe::Kind::low_frequency_dominated:
            return "low_frequency_dominated";
        case DataRecipe::Kind::gaussian_vortex_pair: return "gaussian_vortex_pair";
        case DataRecipe::Kind::checkpoint: return "checkpoint";
    }
    return "band_limited_random";
}

DataRecipe::Kind kind_from(const std::string& s) {
    if (s == "single_shell") return DataRecipe::Kind::single_shell;
    if (s == "band_limited_random") return DataRecipe::Kind::band_limited_random;
    if (s == "high_frequency_concentrated")
        return DataRecipe::Kind::high_frequency_concentrated;
    if (s == "low_frequency_dominated") return DataRecipe::Kind::low_frequency_dominated;
    if (s == "gaussian_vortex_pair") return DataRecipe::Kind::gaussian_vortex_pair;
    if (s == "checkpoint") return DataRecipe::Kind::checkpoint;
    throw std::invalid_argument("unknown data.kind '" + s + "'");
}

std::string norm_name(DataRecipe::Norm n) {
    switch (n) {
        case DataRecipe::Norm::none: return "none";
        case DataRecipe::Norm::l2: return "l2";
        case DataRecipe::Norm::hs: return "hs";
        case DataRecipe::Norm::linf: return "linf";
    }
    return "none";
}

DataRecipe::Norm norm_from(const std::string& s) {
    if (s == "none") return DataRecipe::Norm::none;
    if (s == "l2") return DataRecipe::Norm::l2;
    if (s == "hs") return DataRecipe::Norm::hs;
    if (s == "linf") return DataRecipe::Norm::linf;
    throw std::invalid_argument("unknown data.normalize '" + s + "'");
}

}  // namespace

json recipe_to_json(const DataRecipe& r) {
    return json{{"kind", kind_name(r.kind)},
                {"shell", r.shell},
                {"j_lo", r.j_lo},
                {"j_hi", r.j_hi},
                {"slope", r.slope},
                {"amplitude", r.amplitude},
                {"normalize", norm_name(r.normalize)},
                {"norm_s", r.norm_s},
                {"norm_value", r.norm_value},
                {"vortex_radius", r.vortex_radius},
                {"vortex_separation", r.vortex_separation},
                {"checkpoint_path", r.checkpoint_path}};
}

DataRecipe recipe_from_json(const json& j) {
    DataRecipe r;
    r.kind = kind_from(j.value("kind", "band_limited_random"));
    r.shell = j.value("shell", r.shell);
    r.j_lo = j.value("j_lo", r.j_lo);
    r.j_hi = j.value("j_hi", r.j_hi);
    r.slope = j.value("slope", r.slope);
    r.amplitude = j.value("amplitude", r.amplitude);
    r.normalize = norm_from(j.value("normalize", "none"));
    r.norm_s = j.value("norm_s", r.norm_s);
    r.norm_value = j.value("norm_value", r.norm_value);
    r.vortex_radius = j.value("vortex_radius", r.vortex_radius);
    r.vortex_separation = j.value("vortex_separation", r.vortex_separation);
    r.checkpoint_path = j.value("checkpoint_path", r.checkpoint_path);
    return r;
}

json to_json(const RunConfig& cfg) {
    json besov = json::array();
    for (auto [s, p] : cfg.analysis.besov_sp) besov.push_back(json::array({s, p}));
    json j{
        {"grid",
         {{"n", cfg.grid.n},
          {"box_length", cfg.grid.box_length},
          {"dealias_fraction", cfg.grid.dealias_fraction}}},
        {"physics", {{"alpha", cfg.stepper.alpha}}},
        {"stepper",
         {{"mode", mode_name(cfg.stepper.mode)},
          {"t_end", cfg.stepper.t_end},
          {"checkpoint_every", cfg.stepper.checkpoint_every},
          {"record_steps", cfg.stepper.record_steps},
          {"dt_policy",
           {{"kind", cfg.stepper.dt_policy.kind == DtPolicy::Kind::fixed ? "fixed" : "cfl"},
            {"dt", cfg.stepper.dt_policy.dt},
            {"safety", cfg.stepper.dt_policy.safety},
            {"dt_max", cfg.stepper.dt_policy.dt_max},
            {"dt_min", cfg.stepper.dt_policy.dt_min}}}}},
        {"analysis",
         {{"probe_dt", cfg.analysis.probe_dt},
          {"sobolev_s", cfg.analysis.sobolev_s},
          {"lp_p", cfg.analysis.lp_p},
          {"besov", besov},
          {"shells", cfg.analysis.shells}}},
        {"blowup",
         {{"norm_multiple", cfg.blowup.norm_multiple},
          {"monitor_s", cfg.blowup.monitor_s},
          {"tail_fraction", cfg.blowup.tail_fraction},
          {"tail_band", cfg.blowup.tail_band}}},
        {"data", recipe_to_json(cfg.data)},
        {"twin",
         {{"enabled", cfg.twin.enabled},
          {"perturbation", recipe_to_json(cfg.twin.perturbation)},
          {"thm4_J", cfg.twin.thm4_J},
          {"thm4_q", cfg.twin.thm4_q},
          {"thm5_p", cfg.twin.thm5_p},
          {"thm5_q", cfg.twin.thm5_q}}},
        {"criteria",
         {{"theorems", cfg.criteria.theorems},
          {"s", cfg.criteria.s},
          {"T_star", cfg.criteria.T_star},
          {"gamma", cfg.criteria.gamma},
          {"thm2_prefactor", cfg.criteria.thm2_prefactor},
          {"thm5_delta", cfg.criteria.thm5_delta}}},
        {"output",
         {{"dir", cfg.output.dir},
          {"plots", cfg.output.plots},
          {"checkpoints", cfg.output.checkpoints}}},
        {"seed", cfg.seed},
    };
    json consts;
    to_json(consts, cfg.constants);
    j["constants"] = consts;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    const json& g = j.at("grid");
    cfg.grid.n = g.value("n", 0);
    cfg.grid.box_length = g.value("box_length", cfg.grid.box_length);
    cfg.grid.dealias_fraction = g.value("dealias_fraction", cfg.grid.dealias_fraction);

    cfg.stepper.alpha = j.at("physics").value("alpha", 0.25);
    if (j.contains("stepper")) {
        const json& st = j.at("stepper");
        cfg.stepper.mode = mode_from(st.value("mode", "full"));
        cfg.stepper.t_end = st.value("t_end", 1.0);
        cfg.stepper.checkpoint_every = st.value("checkpoint_every", 0.0);
        cfg.stepper.record_steps = st.value("record_steps", true);
        if (st.contains("dt_policy")) {
            const json& dp = st.at("dt_policy");
            const std::string kind = dp.value("kind", "fixed");
            if (kind == "fixed")
                cfg.stepper.dt_policy.kind = DtPolicy::Kind::fixed;
            else if (kind == "cfl")
                cfg.stepper.dt_policy.kind = DtPolicy::Kind::cfl;
            else
                throw std::invalid_argument("unknown dt_policy.kind '" + kind + "'");
            cfg.stepper.dt_policy.dt = dp.value("dt", cfg.stepper.dt_policy.dt);
            cfg.stepper.dt_policy.safety = dp.value("safety", cfg.stepper.dt_policy.safety);
            cfg.stepper.dt_policy.dt_max = dp.value("dt_max", cfg.stepper.dt_policy.dt_max);
            cfg.stepper.dt_policy.dt_min = dp.value("dt_min", cfg.stepper.dt_policy.dt_min);
        }
    }
    if (j.contains("analysis")) {
        const json& a = j.at("analysis");
        cfg.analysis.probe_dt = a.value("probe_dt", 0.1);
        cfg.analysis.sobolev_s = a.value("sobolev_s", std::vector<double>{});
        cfg.analysis.lp_p = a.value("lp_p", std::vector<double>{});
        cfg.analysis.shells = a.value("shells", true);
        if (a.contains("besov"))
            for (const auto& e : a.at("besov"))
                cfg.analysis.besov_sp.emplace_back(e.at(0).get<double>(),
                                                   e.at(1).get<double>());
    }
    if (j.contains("blowup")) {
        const json& b = j.at("blowup");
        cfg.blowup.norm_multiple = b.value("norm_multiple", cfg.blowup.norm_multiple);
        cfg.blowup.monitor_s = b.value("monitor_s", cfg.blowup.monitor_s);
        cfg.blowup.tail_fraction = b.value("tail_fraction", cfg.blowup.tail_fraction);
        cfg.blowup.tail_band = b.value("tail_band", cfg.blowup.tail_band);
    }
    if (j.contains("data")) cfg.data = recipe_from_json(j.at("data"));
    if (j.contains("twin")) {
        const json& t = j.at("twin");
        cfg.twin.enabled = t.value("enabled", false);
        if (t.contains("perturbation"))
            cfg.twin.perturbation = recipe_from_json(t.at("perturbation"));
        cfg.twin.thm4_J = t.value("thm4_J", cfg.twin.thm4_J);
        cfg.twin.thm4_q = t.value("thm4_q", cfg.twin.thm4_q);
        cfg.twin.thm5_p = t.value("thm5_p", cfg.twin.thm5_p);
        cfg.twin.thm5_q = t.value("thm5_q", cfg.twin.thm5_q);
    }
    if (j.contains("constants")) from_json(j.at("constants"), cfg.constants);
    if (j.contains("criteria")) {
        const json& c = j.at("criteria");
        cfg.criteria.theorems = c.value("theorems", std::vector<std::string>{});
        cfg.criteria.s = c.value("s", 0.0);
        cfg.criteria.T_star = c.value("T_star", 0.0);
        cfg.criteria.gamma = c.value("gamma", 0.5);
        cfg.criteria.thm2_prefactor = c.value("thm2_prefactor", 1.0);
        cfg.criteria.thm5_delta = c.value("thm5_delta", 0.0);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        cfg.output.dir = o.value("dir", "");
        cfg.output.plots = o.value("plots", false);
        cfg.output.checkpoints = o.value("checkpoints", false);
    }
    cfg.seed = j.value("seed", 1ull);
    return cfg;
}

std::vector<std::string> RunConfig::validate() const {
    std::vector<std::string> bad;
    auto merge = [&bad](std::vector<std::string> more) {
        bad.insert(bad.end(), more.begin(), more.end());
    };
    merge(grid.validate());
    merge(stepper.validate());
    merge(constants.validate());
    if (grid.validate().empty()) merge(data.validate(grid));

    if (!(analysis.probe_dt >= 0.0)) bad.push_back("analysis.probe_dt must be >= 0");
    for (double p : analysis.lp_p)
        if (!(p >= 1.0)) bad.push_back("analysis.lp_p entries must be >= 1");
    for (auto [s, p] : analysis.besov_sp)
        if (!(p >= 1.0)) bad.push_back("analysis.besov integrability must be >= 1");

    const double alpha = stepper.alpha;
    const bool wants_criteria = !criteria.theorems.empty();
    const double s_crit =
        criteria.s != 0.0 ? criteria.s
                          : (analysis.sobolev_s.empty() ? 0.0 : analysis.sobolev_s.front());
    if (wants_criteria) {
        static const std::set<std::string> known = {"prop", "1", "2", "3", "4", "5"};
        for (const auto& t : criteria.theorems)
            if (!known.count(t))
                bad.push_back("criteria.theorems entry '" + t + "' is not one of prop,1,2,3,4,5");
        bool wants_shape = false;
        for (const auto& t : criteria.theorems)
            if (t == "prop" || t == "1" || t == "2" || t == "3") wants_shape = true;
        if (wants_shape) {
            if (!admissible_s(s_crit, alpha))
                bad.push_back("criteria.s must lie in (2-2*alpha, 2-alpha)");
            bool found = false;
            for (double s : analysis.sobolev_s)
                if (s == s_crit) found = true;
            if (!found)
                bad.push_back("criteria.s must be listed in analysis.sobolev_s");
            if (!analysis.shells)
                bad.push_back("criteria on theorems prop/1/2/3 need analysis.shells = true");
        }
        if (!(criteria.gamma > 0.0 && criteria.gamma < 1.0))
            bad.push_back("criteria.gamma must lie in (0, 1)");
        for (const auto& t : criteria.theorems)
            if ((t == "4" || t == "5") && !twin.enabled)
                bad.push_back("criteria theorem " + t + " needs twin.enabled = true");
    }
    if (twin.enabled) {
        merge(twin.perturbation.validate(grid));
        if (!(twin.thm4_q > 1.0) || std::isinf(twin.thm4_q))
            bad.push_back("twin.thm4_q must lie in (1, inf)");
        if (!(twin.thm5_p > 1.0) || std::isinf(twin.thm5_p))
            bad.push_back("twin.thm5_p must lie in (1, inf)");
        if (!(twin.thm5_q > 1.0))
            bad.push_back("twin.thm5_q must lie in (1, inf]");
        if (stepper.dt_policy.kind != DtPolicy::Kind::fixed)
            bad.push_back("twin runs require the fixed dt policy (identical step sequences)");
    }
    if (output.dir.empty()) bad.push_back("output.dir must be set");
    return bad;
}

RunConfig load_config(const std::string& path) {
    json j;
    try {
        j = read_json(path);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    RunConfig cfg = config_from_json(j);
    auto bad = cfg.validate();
    if (!bad.empty()) {
        std::string msg = "invalid config:";
        for (const auto& b : bad) msg += "\n  - " + b;
        throw std::invalid_argument(msg);
    }
    return cfg;
}

void save_config(const std::string& path, const RunConfig& cfg) {
    write_json(path, to_json(cfg));
}

}  // namespace sqg
