#include "cliquet_cli/run.hpp"

#include <cmath>
#include <cstdio>

#include "cliquet/greeks.hpp"
#include "cliquet_cli/validation.hpp"

namespace cliquet::cli {

namespace {

using Row = nlohmann::ordered_json;

std::string jump_kind(JumpLaw k) { return k == JumpLaw::Exponential ? "exponential" : "normal"; }

Row model_json(const ModelParams& m) {
  const auto& j = m.jumps();
  Row jump{{"kind", jump_kind(j.kind)}};
  if (j.kind == JumpLaw::Normal) {
    jump["mu"] = j.mu;
    jump["delta"] = j.delta;
  } else {
    jump["alpha"] = j.alpha;
  }
  return Row{{"r", m.r()},     {"sigma", m.sigma()}, {"lambda", m.lambda()},
             {"jump", jump},   {"eta", m.eta()},     {"gamma", m.gamma()}};
}

Row contract_json(const ContractTerms& t) {
  return Row{{"K", t.K}, {"T", t.T}, {"g", t.g},     {"c", t.c},
             {"n", t.n}, {"t0", t.t0}, {"tau", t.tau}};
}

Row policy_json(const SeriesPolicy& p) {
  return Row{{"series_eps", p.series_eps}, {"quad_tol", p.quad_tol}, {"max_terms", p.max_terms}};
}

Row mc_json(const McConfig& mc) {
  return Row{{"n_paths", mc.n_paths}, {"seed", mc.seed}, {"antithetic", mc.antithetic}};
}

PricingMethod pricing_method(const std::string& m) {
  if (m == "fourier") return PricingMethod::Fourier;
  if (m == "distribution") return PricingMethod::DistributionFn;
  throw ConfigError("--method for price must be fourier or distribution");
}

GreeksMethod greeks_method(const std::string& m) {
  if (m == "fourier") return GreeksMethod::Fourier;
  if (m == "distribution") return GreeksMethod::DistributionFn;
  if (m == "fd") return GreeksMethod::FiniteDifference;
  throw ConfigError("--method for greeks must be fourier, distribution or fd");
}

double horizon(const RunSpec& s, const ContractTerms& t) { return s.horizon ? *s.horizon : t.tau; }

double require_at(const RunSpec& s, const char* what) {
  if (!s.at) throw ConfigError(std::string(what) + " needs --at (or --grid at=...)");
  return *s.at;
}

Row evaluate(const RunSpec& s) {
  const ModelParams m = s.model.build();
  const ContractTerms t = s.contract.build();
  switch (s.command) {
    case Command::Price: {
      const auto r = price(pricing_method(s.method), t, m, s.policy);
      return Row{{"method", to_string(r.method)},
                 {"price", r.price},
                 {"ez1", r.ez1},
                 {"imag_residual", r.imag_residual},
                 {"tail_bound", r.tail_bound},
                 {"abs_error_estimate", r.abs_error_estimate},
                 {"cutoff", r.cutoff},
                 {"panels_used", r.panels_used}};
    }
    case Command::Greeks: {
      const auto conv =
          s.convention == "drift_fixed" ? VegaConvention::DriftFixed : VegaConvention::GammaFrozen;
      const auto g = greeks(t, m, s.policy, greeks_method(s.method), conv);
      return Row{{"method", to_string(g.method)}, {"convention", to_string(g.convention)},
                 {"price", g.price},              {"rho", g.rho},
                 {"delta", g.delta},              {"gamma", g.gamma},
                 {"vega", g.vega}};
    }
    case Command::Density: {
      const double x = require_at(s, "density");
      const double h = horizon(s, t);
      const auto inv = density_fourier(x, h, m, s.policy);
      return Row{{"x", x},
                 {"t", h},
                 {"density", density(x, h, m, s.policy)},
                 {"density_fourier", inv.value},
                 {"imag_residual", inv.imag_residual},
                 {"abs_error_estimate", inv.abs_error_estimate}};
    }
    case Command::Cdf: {
      const double x = require_at(s, "cdf");
      const double h = horizon(s, t);
      return Row{{"x", x}, {"t", h}, {"cdf", cdf(x, h, m, s.policy)}};
    }
    case Command::Returns: {
      const double xi = require_at(s, "returns");
      const double h = horizon(s, t);
      return Row{{"xi", xi}, {"tau", h}, {"return_cdf", return_cdf(xi, h, m, s.policy)}};
    }
    case Command::Drawdown: {
      const double kappa = require_at(s, "drawdown");
      const double h = horizon(s, t);
      return Row{{"kappa", kappa}, {"horizon", h}, {"drawdown_prob", drawdown_prob(kappa, h, m, s.policy)}};
    }
    case Command::Mc: {
      const auto est = mc_price(t, m, s.mc);
      const auto ez = mc_ez1(t, m, s.mc);
      const double analytic = price_fourier(t, m, s.policy).price;
      return Row{{"mc_price", est.mean},
                 {"mc_std_error", est.std_error},
                 {"mc_ez1", ez.mean},
                 {"mc_ez1_std_error", ez.std_error},
                 {"n_paths", est.n_paths},
                 {"seed", est.seed},
                 {"antithetic", s.mc.antithetic},
                 {"analytic_price", analytic},
                 {"analytic_ez1", ez_closed(t, m, s.policy)},
                 {"z_score", std::abs(analytic - est.mean) / est.std_error}};
    }
    case Command::Validate: break;
  }
  throw ConfigError("command cannot be evaluated per row");
}

std::string csv_cell(const Row& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

std::string render_csv(const Row& rows) {
  std::string out;
  if (rows.empty()) return out;
  bool first = true;
  for (const auto& [k, v] : rows.front().items()) {
    out += (first ? "" : ",") + k;
    first = false;
  }
  out += '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [k, v] : row.items()) {
      out += (first ? "" : ",") + csv_cell(v);
      first = false;
    }
    out += '\n';
  }
  return out;
}

std::string error_record(const char* kind, int code, const std::string& msg) {
  return Row{{"error", Row{{"kind", kind}, {"exit_code", code}, {"message", msg}}}}.dump();
}

const char* error_kind(int code) {
  switch (code) {
    case kExitConfig: return "ConfigError";
    case kExitNumerical: return "NumericalError";
    default: return "InternalInvariantViolation";
  }
}

RunOutcome execute(const RunSpec& s) {
  Row report;
  report["command"] = to_string(s.command);
  Row rows = Row::array();
  int code = kExitOk;

  if (s.command == Command::Validate) {
    ValidationOptions vo;
    vo.policy = s.policy;
    vo.seed = s.mc.seed;
    if (s.mc_paths_explicit) {
      vo.price_paths = s.mc.n_paths;
      vo.ez_paths = 10 * s.mc.n_paths;
      vo.cdf_samples = s.mc.n_paths;
    }
    report["policy"] = policy_json(s.policy);
    report["mc"] = Row{{"price_paths", vo.price_paths},
                       {"ez_paths", vo.ez_paths},
                       {"cdf_samples", vo.cdf_samples},
                       {"seed", vo.seed}};
    for (const auto& r : run_validation(vo)) {
      rows.push_back(Row{{"id", r.id},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"measured", r.measured},
                         {"tolerance", r.tolerance},
                         {"detail", r.detail}});
      if (!r.pass) code = kExitChecksFailed;
    }
  } else {
    report["method"] = s.method;
    report["model"] = model_json(s.model.build());
    report["contract"] = contract_json(s.contract.build());
    report["policy"] = policy_json(s.policy);
    if (s.command == Command::Mc) report["mc"] = mc_json(s.mc);
    if (s.grid) {
      report["grid"] = Row{{"param", s.grid->param},
                           {"start", s.grid->start},
                           {"stop", s.grid->stop},
                           {"steps", s.grid->steps}};
      for (double v : s.grid->values()) {
        Row row{{s.grid->param, v}};
        const Row values = evaluate(with_param(s, s.grid->param, v));
        for (const auto& [k, x] : values.items()) row[k] = x;
        rows.push_back(row);
      }
    } else {
      rows.push_back(evaluate(s));
    }
  }
  report["results"] = rows;

  RunOutcome out;
  out.exit_code = code;
  out.report = s.output == OutputFormat::Csv ? render_csv(rows) : report.dump(2) + "\n";
  return out;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidParam*>(&e) ||
      dynamic_cast<const InvalidContract*>(&e) ||
      dynamic_cast<const DivergentExponentialMoment*>(&e) ||
      dynamic_cast<const UnsupportedJumpLaw*>(&e)) {
    return kExitConfig;
  }
  if (dynamic_cast<const QuadratureFailure*>(&e) ||
      dynamic_cast<const TruncationBudgetExceeded*>(&e)) {
    return kExitNumerical;
  }
  return kExitInvariant;
}

RunOutcome run(const RunSpec& spec) {
  try {
    return execute(spec);
  } catch (const std::exception& e) {
    RunOutcome out;
    out.exit_code = exit_code_for(e);
    out.error = error_record(error_kind(out.exit_code), out.exit_code, e.what());
    return out;
  }
}

}  // namespace cliquet::cli
