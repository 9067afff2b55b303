#include "hypcomp/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "hypcomp/error.hpp"
#include "hypcomp/fft.hpp"

namespace hypcomp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) fail("unknown key '" + k + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(std::string("bad value for '") + key + "': " + e.what());
  }
}

void read_point(const json& obj, const char* key, std::optional<Complex>& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (v.is_null()) {
    out.reset();
    return;
  }
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(std::string("'") + key + "' must be [re, im]");
  }
  out = Complex(v[0].get<double>(), v[1].get<double>());
}

json point(const std::optional<Complex>& p) {
  if (!p) return nullptr;
  return json::array({p->real(), p->imag()});
}

void require_pow2(std::size_t v, const std::string& name) {
  if (!is_power_of_two(v)) fail(name + " must be a power of two");
}

void require_positive(double v, const std::string& name) {
  if (!(v > 0.0)) fail(name + " must be positive");
}

}  // namespace

HyperbolicAutomorphism AutomorphismSpec::build() const {
  if (!attractive) return HyperbolicAutomorphism::canonical(mu);
  return conjugate(HyperbolicAutomorphism::canonical(mu), conjugator(*attractive, *repulsive));
}

WeightSpec ExperimentConfig::weight() const {
  WeightSpec w;
  w.gamma = gamma;
  w.delta = delta;
  if (automorphism.attractive) {
    w.attractive = *automorphism.attractive;
    w.repulsive = *automorphism.repulsive;
  }
  return w;
}

void ExperimentConfig::validate() const {
  if (schema_version != kConfigSchemaVersion) {
    fail("unsupported schema_version " + std::to_string(schema_version));
  }
  if (!(automorphism.mu > 1.0)) fail("mu must be > 1");
  if (automorphism.attractive.has_value() != automorphism.repulsive.has_value()) {
    fail("attractive and repulsive must be given together");
  }
  if (automorphism.attractive) {
    try {
      automorphism.build();
    } catch (const Error& e) {
      fail(std::string("invalid fixed points: ") + e.what());
    }
  }
  try {
    weight().validate();
  } catch (const Error& e) {
    fail(std::string("invalid weight: ") + e.what());
  }
  require_pow2(budgets.n, "budgets.N");
  require_pow2(budgets.oversample, "budgets.oversample");
  require_pow2(budgets.taylor_budget, "budgets.taylor_budget");
  if (budgets.oversample < 4) fail("budgets.oversample must be >= 4");
  if (budgets.window < 1) fail("budgets.window must be >= 1");
  if (budgets.steps_per_period < 2 || budgets.steps_per_period % 2) {
    fail("budgets.steps_per_period must be an even number >= 2");
  }
  if (norm_identity.trials < 1 || norm_identity.degree < 0) fail("norm_identity counts invalid");
  for (double m : norm_identity.mus) {
    if (!(m > 1.0)) fail("norm_identity.mus entries must be > 1");
  }
  if (poisson.rho_nodes < 1 || poisson.theta_nodes < 1 || poisson.sum_theta_nodes < 1 ||
      poisson.sum_terms < 0) {
    fail("poisson node counts invalid");
  }
  require_positive(poisson.min_theta, "poisson.min_theta");
  for (double m : poisson.mus) {
    if (!(m > 1.0)) fail("poisson.mus entries must be > 1");
  }
  if (scan.mode != "two-sided" && scan.mode != "one-sided" && scan.mode != "holder" &&
      scan.mode != "reversed") {
    fail("scan.mode must be two-sided, one-sided, holder or reversed");
  }
  if (!(scan.inner > 0.0 && scan.outer > scan.inner)) fail("scan annulus needs 0 < inner < outer");
  if (scan.radial < 1 || scan.angular < 1) fail("scan grid counts must be >= 1");
  if (!(scan.p > 2.0)) fail("scan.p must be > 2");
  if (scan.holder_count < 1) fail("scan.holder_count must be >= 1");
  if (circle.omega_samples < 1) fail("circle.omega_samples must be >= 1");
  for (int m : circle.truncations) {
    if (m < 0 || m > budgets.window) fail("circle.truncations must lie in [0, window]");
  }
  for (double m : spectrum.mus) {
    if (!(m > 1.0)) fail("spectrum.mus entries must be > 1");
  }
  for (std::size_t d : spectrum.dims) require_pow2(d, "spectrum.dims entries");
  if (spectrum.residual_grid < 1) fail("spectrum.residual_grid must be >= 1");
  if (!(spectrum.margin > 0.0 && spectrum.margin < 1.0)) fail("spectrum.margin must lie in (0, 1)");
  const Tolerances& t = tolerances;
  for (auto [v, name] : {std::pair{t.norm_identity, "norm_identity"}, {t.residual, "residual"},
                         {t.tail, "tail"}, {t.identity, "identity"},
                         {t.hypercyclic, "hypercyclic"}, {t.cauchy, "cauchy"},
                         {t.spectrum_residual, "spectrum_residual"}, {t.gram, "gram"},
                         {t.norm_bound, "norm_bound"}, {t.multiplier, "multiplier"},
                         {t.pass_fraction, "pass_fraction"}}) {
    require_positive(v, std::string("tolerances.") + name);
  }
  if (t.tail >= 1.0) fail("tolerances.tail must be < 1");
  if (t.max_exceptional < 0) fail("tolerances.max_exceptional must be >= 0");
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"norm-identity", "poisson-bounds", "orbit",
                                              "eigen-scan",    "circle-eigen",   "spectrum",
                                              "conjugacy"};
  return names;
}

ExperimentConfig default_config(const std::string& subcommand) {
  ExperimentConfig c;
  if (subcommand == "orbit" || subcommand == "circle-eigen") {
    c.gamma = 0.5;
    c.delta = 0.5;
  }
  if (subcommand == "orbit") c.budgets.window = 40;
  if (subcommand == "spectrum") c.automorphism.mu = 4.0;
  if (subcommand == "conjugacy") {
    c.automorphism.attractive = Complex(0.0, 1.0);
    c.automorphism.repulsive = Complex(0.0, -1.0);
  }
  return c;
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(j, "config",
            {"schema_version", "automorphism", "weight", "budgets", "norm_identity", "poisson",
             "scan", "circle", "spectrum", "tolerances", "output", "seed"});
  if (!j.contains("schema_version")) fail("config needs a schema_version field");
  read(j, "schema_version", c.schema_version);
  read(j, "seed", c.seed);
  if (j.contains("automorphism")) {
    const json& a = j["automorphism"];
    only_keys(a, "automorphism", {"mu", "attractive", "repulsive"});
    read(a, "mu", c.automorphism.mu);
    read_point(a, "attractive", c.automorphism.attractive);
    read_point(a, "repulsive", c.automorphism.repulsive);
  }
  if (j.contains("weight")) {
    const json& w = j["weight"];
    only_keys(w, "weight", {"gamma", "delta"});
    read(w, "gamma", c.gamma);
    read(w, "delta", c.delta);
  }
  if (j.contains("budgets")) {
    const json& b = j["budgets"];
    only_keys(b, "budgets", {"N", "oversample", "taylor_budget", "window", "steps_per_period"});
    read(b, "N", c.budgets.n);
    read(b, "oversample", c.budgets.oversample);
    read(b, "taylor_budget", c.budgets.taylor_budget);
    read(b, "window", c.budgets.window);
    read(b, "steps_per_period", c.budgets.steps_per_period);
  }
  if (j.contains("norm_identity")) {
    const json& s = j["norm_identity"];
    only_keys(s, "norm_identity", {"trials", "degree", "mus"});
    read(s, "trials", c.norm_identity.trials);
    read(s, "degree", c.norm_identity.degree);
    read(s, "mus", c.norm_identity.mus);
  }
  if (j.contains("poisson")) {
    const json& s = j["poisson"];
    only_keys(s, "poisson",
              {"rho_nodes", "theta_nodes", "sum_theta_nodes", "sum_terms", "min_theta", "mus"});
    read(s, "rho_nodes", c.poisson.rho_nodes);
    read(s, "theta_nodes", c.poisson.theta_nodes);
    read(s, "sum_theta_nodes", c.poisson.sum_theta_nodes);
    read(s, "sum_terms", c.poisson.sum_terms);
    read(s, "min_theta", c.poisson.min_theta);
    read(s, "mus", c.poisson.mus);
  }
  if (j.contains("scan")) {
    const json& s = j["scan"];
    only_keys(s, "scan", {"mode", "inner", "outer", "radial", "angular", "p", "holder_count"});
    read(s, "mode", c.scan.mode);
    read(s, "inner", c.scan.inner);
    read(s, "outer", c.scan.outer);
    read(s, "radial", c.scan.radial);
    read(s, "angular", c.scan.angular);
    read(s, "p", c.scan.p);
    read(s, "holder_count", c.scan.holder_count);
  }
  if (j.contains("circle")) {
    const json& s = j["circle"];
    only_keys(s, "circle", {"omega_samples", "truncations"});
    read(s, "omega_samples", c.circle.omega_samples);
    read(s, "truncations", c.circle.truncations);
  }
  if (j.contains("spectrum")) {
    const json& s = j["spectrum"];
    only_keys(s, "spectrum", {"mus", "dims", "residual_grid", "margin"});
    read(s, "mus", c.spectrum.mus);
    read(s, "dims", c.spectrum.dims);
    read(s, "residual_grid", c.spectrum.residual_grid);
    read(s, "margin", c.spectrum.margin);
  }
  if (j.contains("tolerances")) {
    const json& s = j["tolerances"];
    only_keys(s, "tolerances",
              {"norm_identity", "residual", "tail", "identity", "hypercyclic", "cauchy",
               "spectrum_residual", "gram", "norm_bound", "multiplier", "pass_fraction",
               "max_exceptional"});
    Tolerances& t = c.tolerances;
    read(s, "norm_identity", t.norm_identity);
    read(s, "residual", t.residual);
    read(s, "tail", t.tail);
    read(s, "identity", t.identity);
    read(s, "hypercyclic", t.hypercyclic);
    read(s, "cauchy", t.cauchy);
    read(s, "spectrum_residual", t.spectrum_residual);
    read(s, "gram", t.gram);
    read(s, "norm_bound", t.norm_bound);
    read(s, "multiplier", t.multiplier);
    read(s, "pass_fraction", t.pass_fraction);
    read(s, "max_exceptional", t.max_exceptional);
  }
  if (j.contains("output")) {
    const json& s = j["output"];
    only_keys(s, "output", {"dir"});
    read(s, "dir", c.out_dir);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) fail("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string to_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["seed"] = c.seed;
  j["automorphism"] = {{"mu", c.automorphism.mu},
                       {"attractive", point(c.automorphism.attractive)},
                       {"repulsive", point(c.automorphism.repulsive)}};
  j["weight"] = {{"gamma", c.gamma}, {"delta", c.delta}};
  j["budgets"] = {{"N", c.budgets.n},
                  {"oversample", c.budgets.oversample},
                  {"taylor_budget", c.budgets.taylor_budget},
                  {"window", c.budgets.window},
                  {"steps_per_period", c.budgets.steps_per_period}};
  j["norm_identity"] = {{"trials", c.norm_identity.trials},
                        {"degree", c.norm_identity.degree},
                        {"mus", c.norm_identity.mus}};
  j["poisson"] = {{"rho_nodes", c.poisson.rho_nodes},
                  {"theta_nodes", c.poisson.theta_nodes},
                  {"sum_theta_nodes", c.poisson.sum_theta_nodes},
                  {"sum_terms", c.poisson.sum_terms},
                  {"min_theta", c.poisson.min_theta},
                  {"mus", c.poisson.mus}};
  j["scan"] = {{"mode", c.scan.mode},     {"inner", c.scan.inner},
               {"outer", c.scan.outer},   {"radial", c.scan.radial},
               {"angular", c.scan.angular}, {"p", c.scan.p},
               {"holder_count", c.scan.holder_count}};
  j["circle"] = {{"omega_samples", c.circle.omega_samples},
                 {"truncations", c.circle.truncations}};
  j["spectrum"] = {{"mus", c.spectrum.mus},
                   {"dims", c.spectrum.dims},
                   {"residual_grid", c.spectrum.residual_grid},
                   {"margin", c.spectrum.margin}};
  const Tolerances& t = c.tolerances;
  j["tolerances"] = {{"norm_identity", t.norm_identity},
                     {"residual", t.residual},
                     {"tail", t.tail},
                     {"identity", t.identity},
                     {"hypercyclic", t.hypercyclic},
                     {"cauchy", t.cauchy},
                     {"spectrum_residual", t.spectrum_residual},
                     {"gram", t.gram},
                     {"norm_bound", t.norm_bound},
                     {"multiplier", t.multiplier},
                     {"pass_fraction", t.pass_fraction},
                     {"max_exceptional", t.max_exceptional}};
  j["output"] = {{"dir", c.out_dir}};
  return j.dump(2);
}

}  // namespace hypcomp
