#include "faao/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace faao {

using nlohmann::json;

void SolverParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ConfigError(std::string("solver_params.") + name + " must be positive");
    };
    if (inner_max_iters <= 0) throw ConfigError("solver_params.inner_max_iters must be positive");
    if (sca_max_iters <= 0) throw ConfigError("solver_params.sca_max_iters must be positive");
    if (mc_samples <= 0) throw ConfigError("solver_params.mc_samples must be positive");
    positive(inner_grad_tol, "inner_grad_tol");
    positive(sca_tol, "sca_tol");
    positive(penalty_init, "penalty_init");
    positive(feas_tol_equality, "feas_tol_equality");
    if (!(penalty_growth > 1.0)) throw ConfigError("solver_params.penalty_growth must be > 1");
}

void Scenario::finalize() {
    if (!(slot_dt > 0.0)) throw ConfigError("slot_dt must be positive");
    if (!(horizon_T > 0.0)) throw ConfigError("horizon_T must be positive");
    n_slots = static_cast<int>(std::lround(horizon_T / slot_dt));
    if (n_slots < 2) throw ConfigError("n_slots = round(horizon_T/slot_dt) must be >= 2");
    if (!(v_max > 0.0)) throw ConfigError("v_max must be positive");
    if (!(a_max > 0.0)) throw ConfigError("a_max must be positive");
    if (!(altitude_H > 0.0)) throw ConfigError("altitude_H must be positive");
    const double dist = (uav_end - uav_start).norm();
    if (dist > v_max * horizon_T) {
        std::ostringstream os;
        os << "unreachable endpoint: distance " << dist << " m exceeds v_max*T = "
           << v_max * horizon_T << " m";
        throw ConfigError(os.str());
    }
    if (n_tx < 1 || n_relay < 1 || n_rx < 1) throw ConfigError("antenna counts must be >= 1");
    for (double p : {rho0_db, noise_power_dbm_hop1, noise_power_dbm_hop2, power_bs_dbm, power_uav_dbm}) {
        if (!std::isfinite(p)) throw ConfigError("power/gain values must be finite");
    }
    if (!(rician_K >= 0.0)) throw ConfigError("rician_K must be >= 0");
    if (!(outer_tol > 0.0)) throw ConfigError("outer_tol must be positive");
    solver_params.validate();

    rho0_lin = db_to_linear(rho0_db);
    noise1_w = dbm_to_watts(noise_power_dbm_hop1);
    noise2_w = dbm_to_watts(noise_power_dbm_hop2);
    power_bs_w = dbm_to_watts(power_bs_dbm);
    power_uav_w = dbm_to_watts(power_uav_dbm);
}

Scenario default_scenario() {
    Scenario s;  // defaults are the Sec. IV setup
    s.finalize();
    return s;
}

namespace {

Eigen::Vector2d read_vec2(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("key '" + key + "' must be a 2-element numeric array");
    return {j[0].get<double>(), j[1].get<double>()};
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& scope) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key()))
            throw ConfigError("unknown key '" + scope + it.key() + "'");
    }
}

}  // namespace

Scenario load_scenario(const std::string& config_text) {
    json j;
    try {
        j = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("top-level config must be an object");

    static const std::set<std::string> known = {
        "horizon_T", "slot_dt", "altitude_H", "bs_pos", "gu_pos", "uav_start", "uav_end",
        "v_max", "a_max", "rho0_db", "rician_K", "noise_power_dbm_hop1", "noise_power_dbm_hop2",
        "power_bs_dbm", "power_uav_dbm", "n_tx", "n_relay", "n_rx", "modulation", "seed",
        "outer_tol", "los_mode", "solver_params"};
    reject_unknown(j, known, "");

    Scenario s;
    auto num = [&](const char* key, double& out) {
        if (j.contains(key)) {
            if (!j[key].is_number()) throw ConfigError(std::string("key '") + key + "' must be numeric");
            out = j[key].get<double>();
        }
    };
    auto integer = [&](const char* key, int& out) {
        if (j.contains(key)) {
            if (!j[key].is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
            out = j[key].get<int>();
        }
    };
    num("horizon_T", s.horizon_T);
    num("slot_dt", s.slot_dt);
    num("altitude_H", s.altitude_H);
    if (j.contains("bs_pos")) s.bs_pos = read_vec2(j["bs_pos"], "bs_pos");
    if (j.contains("gu_pos")) s.gu_pos = read_vec2(j["gu_pos"], "gu_pos");
    if (j.contains("uav_start")) s.uav_start = read_vec2(j["uav_start"], "uav_start");
    if (j.contains("uav_end")) s.uav_end = read_vec2(j["uav_end"], "uav_end");
    num("v_max", s.v_max);
    num("a_max", s.a_max);
    num("rho0_db", s.rho0_db);
    num("rician_K", s.rician_K);
    num("noise_power_dbm_hop1", s.noise_power_dbm_hop1);
    num("noise_power_dbm_hop2", s.noise_power_dbm_hop2);
    num("power_bs_dbm", s.power_bs_dbm);
    num("power_uav_dbm", s.power_uav_dbm);
    integer("n_tx", s.n_tx);
    integer("n_relay", s.n_relay);
    integer("n_rx", s.n_rx);
    if (j.contains("modulation")) {
        if (!j["modulation"].is_string()) throw ConfigError("key 'modulation' must be a string");
        s.modulation = j["modulation"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ConfigError("key 'seed' must be an integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    num("outer_tol", s.outer_tol);
    if (j.contains("los_mode")) {
        const std::string m = j["los_mode"].get<std::string>();
        if (m == "ones") s.los_mode = LosMode::Ones;
        else if (m == "ula") s.los_mode = LosMode::Ula;
        else throw ConfigError("key 'los_mode' must be 'ones' or 'ula'");
    }
    if (j.contains("solver_params")) {
        const json& sp = j["solver_params"];
        if (!sp.is_object()) throw ConfigError("key 'solver_params' must be an object");
        static const std::set<std::string> known_sp = {
            "inner_max_iters", "inner_grad_tol", "sca_max_iters", "sca_tol",
            "penalty_init", "penalty_growth", "feas_tol_equality", "mc_samples"};
        reject_unknown(sp, known_sp, "solver_params.");
        SolverParams& p = s.solver_params;
        if (sp.contains("inner_max_iters")) p.inner_max_iters = sp["inner_max_iters"].get<int>();
        if (sp.contains("inner_grad_tol")) p.inner_grad_tol = sp["inner_grad_tol"].get<double>();
        if (sp.contains("sca_max_iters")) p.sca_max_iters = sp["sca_max_iters"].get<int>();
        if (sp.contains("sca_tol")) p.sca_tol = sp["sca_tol"].get<double>();
        if (sp.contains("penalty_init")) p.penalty_init = sp["penalty_init"].get<double>();
        if (sp.contains("penalty_growth")) p.penalty_growth = sp["penalty_growth"].get<double>();
        if (sp.contains("feas_tol_equality")) p.feas_tol_equality = sp["feas_tol_equality"].get<double>();
        if (sp.contains("mc_samples")) p.mc_samples = sp["mc_samples"].get<int>();
    }

    s.finalize();
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario(ss.str());
}

std::string save_scenario(const Scenario& s) {
    json j;
    j["horizon_T"] = s.horizon_T;
    j["slot_dt"] = s.slot_dt;
    j["altitude_H"] = s.altitude_H;
    j["bs_pos"] = {s.bs_pos.x(), s.bs_pos.y()};
    j["gu_pos"] = {s.gu_pos.x(), s.gu_pos.y()};
    j["uav_start"] = {s.uav_start.x(), s.uav_start.y()};
    j["uav_end"] = {s.uav_end.x(), s.uav_end.y()};
    j["v_max"] = s.v_max;
    j["a_max"] = s.a_max;
    j["rho0_db"] = s.rho0_db;
    j["rician_K"] = s.rician_K;
    j["noise_power_dbm_hop1"] = s.noise_power_dbm_hop1;
    j["noise_power_dbm_hop2"] = s.noise_power_dbm_hop2;
    j["power_bs_dbm"] = s.power_bs_dbm;
    j["power_uav_dbm"] = s.power_uav_dbm;
    j["n_tx"] = s.n_tx;
    j["n_relay"] = s.n_relay;
    j["n_rx"] = s.n_rx;
    j["modulation"] = s.modulation;
    j["seed"] = s.seed;
    j["outer_tol"] = s.outer_tol;
    j["los_mode"] = s.los_mode == LosMode::Ones ? "ones" : "ula";
    json sp;
    sp["inner_max_iters"] = s.solver_params.inner_max_iters;
    sp["inner_grad_tol"] = s.solver_params.inner_grad_tol;
    sp["sca_max_iters"] = s.solver_params.sca_max_iters;
    sp["sca_tol"] = s.solver_params.sca_tol;
    sp["penalty_init"] = s.solver_params.penalty_init;
    sp["penalty_growth"] = s.solver_params.penalty_growth;
    sp["feas_tol_equality"] = s.solver_params.feas_tol_equality;
    sp["mc_samples"] = s.solver_params.mc_samples;
    j["solver_params"] = sp;
    return j.dump(2) + "\n";
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.horizon_T == b.horizon_T && a.slot_dt == b.slot_dt && a.altitude_H == b.altitude_H &&
           a.bs_pos == b.bs_pos && a.gu_pos == b.gu_pos && a.uav_start == b.uav_start &&
           a.uav_end == b.uav_end && a.v_max == b.v_max && a.a_max == b.a_max &&
           a.rho0_db == b.rho0_db && a.rician_K == b.rician_K &&
           a.noise_power_dbm_hop1 == b.noise_power_dbm_hop1 &&
           a.noise_power_dbm_hop2 == b.noise_power_dbm_hop2 &&
           a.power_bs_dbm == b.power_bs_dbm && a.power_uav_dbm == b.power_uav_dbm &&
           a.n_tx == b.n_tx && a.n_relay == b.n_relay && a.n_rx == b.n_rx &&
           a.modulation == b.modulation && a.seed == b.seed && a.outer_tol == b.outer_tol &&
           a.los_mode == b.los_mode && a.solver_params == b.solver_params;
}

}  // namespace faao
