#include "soot/bench/config.hpp"

#include <fstream>
#include <set>

#include "soot/io.hpp"

namespace soot::bench {

using nlohmann::json;

SootParams SootSettings::params_for(ConstSpan y) const {
  SootParams p;
  p.lambda = lambda_abs ? *lambda_abs : lambda_rel * squared_norm(y);
  p.alpha = alpha;
  p.beta = beta;
  p.eta = eta;
  return p;
}

SolverConfig SootSettings::solver_config() const {
  SolverConfig c;
  c.inner_x = inner_x;
  c.inner_h = inner_h;
  c.step_x = step_x;
  c.step_h = step_h;
  c.stop_tol = stop_tol;
  c.max_outer = max_outer;
  return c;
}

BaselineConfig BaselineSettings::baseline_config() const {
  BaselineConfig c;
  c.lambda_b = lambda_b;
  c.ista_iters = ista_iters;
  c.outer_iters = outer_iters;
  c.stop_tol = stop_tol;
  c.step_scale = step_scale;
  return c;
}

void ExperimentConfig::validate() const {
  if (s < 1 || n < s) throw ConfigError("config: need n >= s >= 1");
  if (sigma_list.empty()) throw ConfigError("config: sigma_list is empty");
  for (double sg : sigma_list) {
    if (!(sg >= 0.0)) throw ConfigError("config: sigma must be >= 0");
  }
  if (innerloop_max_outer < 1) throw ConfigError("config: innerloop_max_outer must be >= 1");
  if (realizations < 1 || innerloop_realizations < 1 || grid.realizations < 1) {
    throw ConfigError("config: realization counts must be >= 1");
  }
  if (!(spike_prob > 0.0 && spike_prob < 1.0)) throw ConfigError("config: need 0 < spike_prob < 1");
  if (!(x_min <= 0.0 && 0.0 <= x_max && x_min < x_max)) {
    throw ConfigError("config: amplitude range must contain 0");
  }
  if (!(radius_factor > 0.0)) throw ConfigError("config: radius_factor must be > 0");
  if (j_values.empty()) throw ConfigError("config: j_values is empty");
  for (int j : j_values) {
    if (j < 1) throw ConfigError("config: j_values entries must be >= 1");
  }
  if (soot.lambda_abs && !(*soot.lambda_abs > 0.0)) throw ConfigError("config: lambda must be > 0");
  if (!(soot.lambda_rel > 0.0)) throw ConfigError("config: lambda_rel must be > 0");
  SootParams probe{1.0, soot.alpha, soot.beta, soot.eta};
  probe.validate();
  soot.solver_config().validate();
  baseline.baseline_config().validate();
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const char* where) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.contains(k)) throw ConfigError(std::string("config: unknown key '") + k + "' in " + where);
  }
}

template <class T>
void get_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void to_json(json& j, const ExperimentConfig& c) {
  json soot = {{"lambda_rel", c.soot.lambda_rel}, {"alpha", c.soot.alpha},
               {"beta", c.soot.beta},             {"eta", c.soot.eta},
               {"inner_x", c.soot.inner_x},       {"inner_h", c.soot.inner_h},
               {"step_x", c.soot.step_x},         {"step_h", c.soot.step_h},
               {"stop_tol", c.soot.stop_tol},     {"max_outer", c.soot.max_outer}};
  if (c.soot.lambda_abs) soot["lambda"] = *c.soot.lambda_abs;
  j = json{{"n", c.n},
           {"s", c.s},
           {"sigma_list", c.sigma_list},
           {"realizations", c.realizations},
           {"seed", c.seed},
           {"spike_prob", c.spike_prob},
           {"x_min", c.x_min},
           {"x_max", c.x_max},
           {"ricker_peak_hz", c.ricker_peak_hz},
           {"sample_interval_s", c.sample_interval_s},
           {"radius_factor", c.radius_factor},
           {"soot", soot},
           {"baseline",
            {{"lambda_b", c.baseline.lambda_b},
             {"ista_iters", c.baseline.ista_iters},
             {"outer_iters", c.baseline.outer_iters},
             {"stop_tol", c.baseline.stop_tol},
             {"step_scale", c.baseline.step_scale}}},
           {"grid",
            {{"lambda_rel", c.grid.lambda_rel},
             {"alpha", c.grid.alpha},
             {"beta", c.grid.beta},
             {"eta", c.grid.eta},
             {"lambda_b", c.grid.lambda_b},
             {"realizations", c.grid.realizations},
             {"sigma", c.grid.sigma}}},
           {"j_values", c.j_values},
           {"innerloop_realizations", c.innerloop_realizations},
           {"innerloop_sigma", c.innerloop_sigma},
           {"innerloop_max_outer", c.innerloop_max_outer},
           {"align_scale", c.align_scale},
           {"threads", c.threads}};
}

void from_json(const json& j, ExperimentConfig& c) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"n", "s", "sigma_list", "realizations", "seed", "spike_prob", "x_min", "x_max",
                  "ricker_peak_hz", "sample_interval_s", "radius_factor", "soot", "baseline",
                  "grid", "j_values", "innerloop_realizations", "innerloop_sigma", "innerloop_max_outer",
                  "align_scale", "threads"},
                 "top level");
  get_opt(j, "n", c.n);
  get_opt(j, "s", c.s);
  get_opt(j, "sigma_list", c.sigma_list);
  get_opt(j, "realizations", c.realizations);
  get_opt(j, "seed", c.seed);
  get_opt(j, "spike_prob", c.spike_prob);
  get_opt(j, "x_min", c.x_min);
  get_opt(j, "x_max", c.x_max);
  get_opt(j, "ricker_peak_hz", c.ricker_peak_hz);
  get_opt(j, "sample_interval_s", c.sample_interval_s);
  get_opt(j, "radius_factor", c.radius_factor);
  get_opt(j, "j_values", c.j_values);
  get_opt(j, "innerloop_realizations", c.innerloop_realizations);
  get_opt(j, "innerloop_sigma", c.innerloop_sigma);
  get_opt(j, "innerloop_max_outer", c.innerloop_max_outer);
  get_opt(j, "align_scale", c.align_scale);
  get_opt(j, "threads", c.threads);
  if (j.contains("soot")) {
    const auto& s = j.at("soot");
    reject_unknown(s,
                   {"lambda_rel", "lambda", "alpha", "beta", "eta", "inner_x", "inner_h",
                    "step_x", "step_h", "stop_tol", "max_outer"},
                   "soot");
    get_opt(s, "lambda_rel", c.soot.lambda_rel);
    if (s.contains("lambda")) c.soot.lambda_abs = s.at("lambda").get<double>();
    get_opt(s, "alpha", c.soot.alpha);
    get_opt(s, "beta", c.soot.beta);
    get_opt(s, "eta", c.soot.eta);
    get_opt(s, "inner_x", c.soot.inner_x);
    get_opt(s, "inner_h", c.soot.inner_h);
    get_opt(s, "step_x", c.soot.step_x);
    get_opt(s, "step_h", c.soot.step_h);
    get_opt(s, "stop_tol", c.soot.stop_tol);
    get_opt(s, "max_outer", c.soot.max_outer);
  }
  if (j.contains("baseline")) {
    const auto& b = j.at("baseline");
    reject_unknown(b, {"lambda_b", "ista_iters", "outer_iters", "stop_tol", "step_scale"}, "baseline");
    get_opt(b, "lambda_b", c.baseline.lambda_b);
    get_opt(b, "ista_iters", c.baseline.ista_iters);
    get_opt(b, "outer_iters", c.baseline.outer_iters);
    get_opt(b, "stop_tol", c.baseline.stop_tol);
    get_opt(b, "step_scale", c.baseline.step_scale);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    reject_unknown(g, {"lambda_rel", "alpha", "beta", "eta", "lambda_b", "realizations", "sigma"},
                   "grid");
    get_opt(g, "lambda_rel", c.grid.lambda_rel);
    get_opt(g, "alpha", c.grid.alpha);
    get_opt(g, "beta", c.grid.beta);
    get_opt(g, "eta", c.grid.eta);
    get_opt(g, "lambda_b", c.grid.lambda_b);
    get_opt(g, "realizations", c.grid.realizations);
    get_opt(g, "sigma", c.grid.sigma);
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  ExperimentConfig c;
  try {
    from_json(json::parse(in), c);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace soot::bench
