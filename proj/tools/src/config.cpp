#include "cliquet_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace cliquet::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& keys) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [k, v] : obj.items()) {
    if (!keys.count(k)) throw ConfigError(where + "." + k + " is not a recognised key");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
  return d;
}

int integer(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::uint64_t unsigned_integer(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

void read_double(const json& obj, const char* key, const std::string& where, double& out) {
  if (obj.contains(key)) out = number(obj, key, where);
}

void read_jump(const json& j, JumpSpec& out) {
  reject_unknown(j, "model.jump", {"kind", "mu", "delta", "alpha"});
  std::string kind = out.kind == JumpLaw::Exponential ? "exponential" : "normal";
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw ConfigError("model.jump.kind must be a string");
    kind = j["kind"].get<std::string>();
  }
  if (kind == "normal") {
    out.kind = JumpLaw::Normal;
  } else if (kind == "exponential") {
    out.kind = JumpLaw::Exponential;
  } else {
    throw ConfigError("model.jump.kind must be \"normal\" or \"exponential\"");
  }
  read_double(j, "mu", "model.jump", out.mu);
  read_double(j, "delta", "model.jump", out.delta);
  read_double(j, "alpha", "model.jump", out.alpha);
}

}  // namespace

Command parse_command(const std::string& s) {
  if (s == "price") return Command::Price;
  if (s == "greeks") return Command::Greeks;
  if (s == "density") return Command::Density;
  if (s == "cdf") return Command::Cdf;
  if (s == "returns") return Command::Returns;
  if (s == "drawdown") return Command::Drawdown;
  if (s == "mc") return Command::Mc;
  if (s == "validate") return Command::Validate;
  throw ConfigError("unknown command '" + s + "'");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Price: return "price";
    case Command::Greeks: return "greeks";
    case Command::Density: return "density";
    case Command::Cdf: return "cdf";
    case Command::Returns: return "returns";
    case Command::Drawdown: return "drawdown";
    case Command::Mc: return "mc";
    case Command::Validate: return "validate";
  }
  return "unknown";
}

OutputFormat parse_output(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw ConfigError("--output must be json or csv");
}

ModelParams ModelConfig::build() const {
  try {
    if (eta) return ModelParams::with_drift(r, sigma, lambda, jump, *eta);
    return risk_neutral_drift(r, sigma, lambda, jump);
  } catch (const InvalidParam& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

ContractTerms ContractConfig::build() const {
  ContractTerms t;
  t.K = K;
  t.g = g;
  t.c = c;
  t.n = n;
  t.t0 = t0;
  if (T && tau) {
    t.T = *T;
    t.tau = *tau;
  } else if (T) {
    t.T = *T;
    t.tau = n >= 1 ? (*T - t0) / n : 0.0;
  } else if (tau) {
    t.tau = *tau;
    t.T = t0 + n * *tau;
  } else {
    throw ConfigError("contract needs T or tau");
  }
  try {
    t.validate();
  } catch (const InvalidContract& e) {
    throw ConfigError(e.what());
  }
  return t;
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v;
  v.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    v.push_back(i == steps ? stop : start + (stop - start) * i / steps);
  }
  return v;
}

GridSpec parse_grid(const std::string& s) {
  const auto eq = s.find('=');
  const auto c1 = s.find(':', eq == std::string::npos ? 0 : eq);
  const auto c2 = c1 == std::string::npos ? c1 : s.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos) {
    throw ConfigError("--grid must look like param=start:stop:steps");
  }
  GridSpec g;
  g.param = s.substr(0, eq);
  try {
    std::size_t used = 0;
    const std::string a = s.substr(eq + 1, c1 - eq - 1);
    const std::string b = s.substr(c1 + 1, c2 - c1 - 1);
    const std::string k = s.substr(c2 + 1);
    g.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    g.stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    g.steps = std::stoi(k, &used);
    if (used != k.size()) throw std::invalid_argument(k);
  } catch (const std::logic_error&) {
    throw ConfigError("--grid values must be numbers: " + s);
  }
  if (g.steps < 1) throw ConfigError("--grid steps must be >= 1");
  if (!std::isfinite(g.start) || !std::isfinite(g.stop)) {
    throw ConfigError("--grid bounds must be finite");
  }
  with_param(RunSpec{}, g.param, g.start);  // rejects unknown names
  return g;
}

void apply_config(RunSpec& spec, const json& doc) {
  reject_unknown(doc, "config", {"model", "contract", "policy", "mc"});
  if (doc.contains("model")) {
    const auto& m = doc["model"];
    reject_unknown(m, "model", {"r", "sigma", "lambda", "jump", "eta"});
    read_double(m, "r", "model", spec.model.r);
    read_double(m, "sigma", "model", spec.model.sigma);
    read_double(m, "lambda", "model", spec.model.lambda);
    if (m.contains("eta")) spec.model.eta = number(m, "eta", "model");
    if (m.contains("jump")) read_jump(m["jump"], spec.model.jump);
  }
  if (doc.contains("contract")) {
    const auto& c = doc["contract"];
    reject_unknown(c, "contract", {"K", "T", "g", "c", "n", "t0", "tau"});
    read_double(c, "K", "contract", spec.contract.K);
    read_double(c, "g", "contract", spec.contract.g);
    read_double(c, "c", "contract", spec.contract.c);
    read_double(c, "t0", "contract", spec.contract.t0);
    if (c.contains("n")) spec.contract.n = integer(c, "n", "contract");
    if (c.contains("T")) spec.contract.T = number(c, "T", "contract");
    if (c.contains("tau")) spec.contract.tau = number(c, "tau", "contract");
  }
  if (doc.contains("policy")) {
    const auto& p = doc["policy"];
    reject_unknown(p, "policy", {"series_eps", "quad_tol", "max_terms"});
    read_double(p, "series_eps", "policy", spec.policy.series_eps);
    read_double(p, "quad_tol", "policy", spec.policy.quad_tol);
    if (p.contains("max_terms")) spec.policy.max_terms = integer(p, "max_terms", "policy");
    try {
      spec.policy.validate();
    } catch (const InvalidParam& e) {
      throw ConfigError(std::string("policy.") + e.what());
    }
  }
  if (doc.contains("mc")) {
    const auto& m = doc["mc"];
    reject_unknown(m, "mc", {"n_paths", "seed", "antithetic"});
    if (m.contains("n_paths")) {
      spec.mc.n_paths = unsigned_integer(m, "n_paths", "mc");
      spec.mc_paths_explicit = true;
    }
    if (m.contains("seed")) spec.mc.seed = unsigned_integer(m, "seed", "mc");
    if (m.contains("antithetic")) {
      if (!m["antithetic"].is_boolean()) throw ConfigError("mc.antithetic must be a boolean");
      spec.mc.antithetic = m["antithetic"].get<bool>();
    }
    if (spec.mc.n_paths < 1) throw ConfigError("mc.n_paths must be >= 1");
  }
}

RunSpec load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  RunSpec spec;
  apply_config(spec, doc);
  return spec;
}

RunSpec with_param(const RunSpec& spec, const std::string& param, double value) {
  RunSpec s = spec;
  if (param == "model.r") s.model.r = value;
  else if (param == "model.sigma") s.model.sigma = value;
  else if (param == "model.lambda") s.model.lambda = value;
  else if (param == "model.eta") s.model.eta = value;
  else if (param == "model.jump.mu") s.model.jump.mu = value;
  else if (param == "model.jump.delta") s.model.jump.delta = value;
  else if (param == "model.jump.alpha") s.model.jump.alpha = value;
  else if (param == "contract.K") s.contract.K = value;
  else if (param == "contract.T") s.contract.T = value;
  else if (param == "contract.g") s.contract.g = value;
  else if (param == "contract.c") s.contract.c = value;
  else if (param == "contract.t0") s.contract.t0 = value;
  else if (param == "contract.tau") s.contract.tau = value;
  else if (param == "contract.n") {
    if (value != std::round(value)) throw ConfigError("contract.n grid values must be integers");
    s.contract.n = static_cast<int>(value);
  } else if (param == "at") s.at = value;
  else if (param == "horizon") s.horizon = value;
  else throw ConfigError("--grid: unknown parameter '" + param + "'");
  return s;
}

}  // namespace cliquet::cli
