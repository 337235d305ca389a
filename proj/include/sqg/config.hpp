#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sqg/criteria.hpp"
#include "sqg/evolution.hpp"
#include "sqg/recipes.hpp"

namespace sqg {

struct TwinConfig {
    bool enabled = false;
    DataRecipe perturbation;   // added to the base data for the second twin
    int thm4_J = 3;
    double thm4_q = 2.0;       // p = 2q/(q-1)
    double thm5_p = 4.0;
    double thm5_q = 2.0;
};

struct CriteriaConfig {
    std::vector<std::string> theorems;  // subset of {"prop","1","2","3","4","5"}
    double s = 0.0;          // defaults to the first analysis Sobolev index
    double T_star = 0.0;     // theorem-1 target time (0: skip)
    double gamma = 0.5;
    double thm2_prefactor = 1.0;
    double thm5_delta = 0.0; // 0: whole run
};

struct OutputConfig {
    std::string dir;
    bool plots = false;
    bool checkpoints = false;
};

/// One experiment: everything needed to reproduce a run byte for byte.
struct RunConfig {
    GridSpec grid;
    StepperConfig stepper;     // alpha, mode, dt policy, t_end, checkpoints
    ProbeSchedule analysis;
    BlowupPolicy blowup;
    DataRecipe data;
    TwinConfig twin;
    CalibrationConstants constants;
    CriteriaConfig criteria;
    OutputConfig output;
    uint64_t seed = 1;

    std::vector<std::string> validate() const;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

/// Parse + validate; throws std::invalid_argument with every violated
/// constraint listed, one per line.
RunConfig load_config(const std::string& path);
void save_config(const std::string& path, const RunConfig& cfg);

nlohmann::json recipe_to_json(const DataRecipe& r);
DataRecipe recipe_from_json(const nlohmann::json& j);

}  // namespace sqg
