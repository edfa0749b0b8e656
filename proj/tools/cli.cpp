#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bebound/bounds.hpp"
#include "bebound/dist_spec.hpp"
#include "bebound/errors.hpp"
#include "bebound/filters.hpp"
#include "bebound/oracle.hpp"
#include "bebound/report.hpp"

namespace bebound::cli {

namespace {

using nlohmann::json;

double parse_double(std::string_view token, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw DomainError("bad number '" + std::string(token) + "' in " + std::string(what));
  }
  return v;
}

std::vector<double> x_values(const RunConfig& cfg, std::vector<double> fallback = {}) {
  if (cfg.x && !cfg.x_grid.empty()) throw DomainError("--x and --x-grid are mutually exclusive");
  if (cfg.x) return {*cfg.x};
  if (!cfg.x_grid.empty()) return parse_grid(cfg.x_grid);
  if (fallback.empty()) throw DomainError("one of --x or --x-grid is required");
  return fallback;
}

struct Target {
  DistSpec spec;
  ResolvedDist resolved;
  double beta3 = 0.0;
  int n = 1;
};

Target load_target(const RunConfig& cfg) {
  if (cfg.dist.empty()) throw DomainError("--dist is required");
  if (cfg.n < 1) throw DomainError("--n must be positive");
  DistSpec spec = parse_dist_spec(cfg.dist);
  ResolvedDist resolved = resolve(spec, cfg.n, cfg.raw);
  double beta3 = normal_abs_third_moment();
  int n = 1;
  if (spec.base) {
    beta3 = spec.base->standardized().abs_moment(3.0);
    n = cfg.raw ? 1 : cfg.n;
  }
  return {std::move(spec), std::move(resolved), beta3, n};
}

double cutoff(const RunConfig& cfg, const Target& target) {
  if (cfg.T && cfg.c_T) throw DomainError("--T and --cT are mutually exclusive");
  if (cfg.T) {
    if (!(*cfg.T > 0.0)) throw DomainError("--T must be positive");
    return *cfg.T;
  }
  return cutoff_from_constant(cfg.c_T.value_or(kDefaultCutoffConstant), target.n, target.beta3);
}

// Keeps the table and csv writers uniform across commands.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string cell(double v) { return format_double(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void write_table(const Table& t, std::ostream& out) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << (i ? "  " : "") << r[i] << std::string(width[i] - r[i].size(), ' ');
    }
    out << '\n';
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
}

void emit(const RunConfig& cfg, const json& doc, const Table& table, std::ostream& out) {
  if (cfg.format == "json") {
    out << doc.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    write_csv(table, out);
  } else {
    write_table(table, out);
  }
}

json header(const RunConfig& cfg, const Target& target, double T) {
  return json{{"command", cfg.command}, {"dist", cfg.dist}, {"n", cfg.n}, {"raw", cfg.raw},
              {"T", T},             {"beta3", target.beta3}, {"tol", cfg.tol}};
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  const FilterConstant c22 = c2p_constant(2.0);
  const FilterConstant c21 = c2p_constant(1.0);
  const double x0 = std::cbrt(be_constants::nagaev_small_n / be_constants::uniform_iid_upper - 1.0);
  const double sqrt_2_pi = std::sqrt(2.0 / std::numbers::pi);
  const std::vector<std::pair<std::string, double>> values = {
      {"c22", c22.value},
      {"c22_argmax", c22.argmax_u},
      {"c21", c21.value},
      {"c21_argmax", c21.argmax_u},
      {"coefficient_k3_p2", fix_coefficient(3, 2.0, prawitz_filter())},
      {"coefficient_k3_p1", fix_coefficient(3, 1.0, prawitz_filter())},
      {"x0", x0},
      {"x0_envelope", (0.8 + 2.0 / 3.0) / (x0 * x0)},
      {"sqrt_2_over_pi", sqrt_2_pi},
      {"normal_abs_third_moment", normal_abs_third_moment()},
      {"psi_1", psi(1.0)},
      {"psi_2", psi(2.0)},
      {"psi_3_5", psi(3.5)},
      {"psi_5", psi(5.0)},
      {"uniform_iid_upper", be_constants::uniform_iid_upper},
      {"uniform_lower", be_constants::uniform_lower()},
      {"nagaev_small_n", be_constants::nagaev_small_n},
  };
  const json source = {
      {"c22", "closed form 4 pi, attained at u = pi"},
      {"c21", "grid scan on (0, 200] refined by golden section"},
      {"coefficient_k3_p2", "(c22 / pi) (2k - p) / (k - p)"},
      {"coefficient_k3_p1", "(c21 / pi) (2k - p) / (k - p)"},
      {"x0", "(4.5 / 0.4748 - 1)^(1/3), crossover of the uniform and small-n bounds"},
      {"x0_envelope", "(0.8 + 2/3) / x0^2"},
      {"sqrt_2_over_pi", "limit of psi at infinity"},
      {"normal_abs_third_moment", "E|Z|^3 = 2 sqrt(2/pi)"},
      {"psi", "quadrature on [0, 40]"},
      {"uniform_iid_upper", "published constant"},
      {"uniform_lower", "(3 + sqrt 10) / (6 sqrt(2 pi))"},
      {"nagaev_small_n", "published constant, valid when beta3 / sqrt n >= 2/3"},
  };
  json doc = {{"command", "constants"}, {"source", source}};
  Table table{{"name", "value"}, {}};
  for (const auto& [name, v] : values) {
    doc[name] = v;
    table.rows.push_back({name, cell(v)});
  }
  emit(cfg, doc, table, out);
  return exit_ok;
}

int cmd_cdf_bounds(const RunConfig& cfg, std::ostream& out) {
  const Target target = load_target(cfg);
  const double T = cutoff(cfg, target);
  const std::vector<double> xs = x_values(cfg);
  BoundOptions opt;
  opt.tol = cfg.tol;

  json doc = header(cfg, target, T);
  json reports = json::array();
  Table table{{"x", "lower", "upper", "quadrature_error", "exact_left", "exact", "contained"}, {}};
  bool all_contained = true;
  for (double x : xs) {
    const BoundReport r = cdf_bounds(target.resolved.cf, 1.0, x, T, opt);
    double exact = 0.0;
    double exact_left = 0.0;
    if (target.resolved.law) {
      exact = target.resolved.law->cdf(x);
      exact_left = target.resolved.law->cdf_left(x);
    } else {
      exact = exact_left = normal_cdf(x);
    }
    const bool contained = r.lower <= exact_left && exact <= r.upper;
    all_contained = all_contained && contained;
    reports.push_back({{"report", to_json(r)},
                       {"oracle", {{"cdf", exact}, {"cdf_left", exact_left}, {"contained", contained}}}});
    table.rows.push_back(
        {cell(x), cell(r.lower), cell(r.upper), cell(r.quadrature_error), cell(exact_left), cell(exact), cell(contained)});
  }
  doc["reports"] = reports;
  doc["all_contained"] = all_contained;
  emit(cfg, doc, table, out);
  return all_contained ? exit_ok : exit_audit;
}

int cmd_tail_bounds(const RunConfig& cfg, std::ostream& out) {
  const Target target = load_target(cfg);
  const double T = cutoff(cfg, target);
  const std::vector<double> xs = x_values(cfg);
  TailMode mode;
  if (cfg.mode == "exact-abs") {
    mode = TailMode::exact_abs;
  } else if (cfg.mode == "surrogate") {
    mode = TailMode::surrogate;
  } else {
    throw DomainError("--mode must be exact-abs or surrogate");
  }
  BoundOptions opt;
  opt.tol = cfg.tol;
  opt.p = cfg.p;
  const DiscreteDist* law = target.resolved.law ? &*target.resolved.law : nullptr;

  json doc = header(cfg, target, T);
  doc["k"] = cfg.k;
  doc["mode"] = cfg.mode;
  json reports = json::array();
  Table table{{"x", "lower", "upper", "center", "radius", "correction", "exact_ge", "exact_gt", "contained"}, {}};
  bool all_contained = true;
  for (double x : xs) {
    const BoundReport r = tail_moment_bound(target.resolved.cf, cfg.k, x, T, mode, opt, law);
    const double xk = std::pow(x, cfg.k);
    const double ge = xk * (law ? law->tail_ge(x) : normal_sf(x));
    const double gt = xk * (law ? law->tail_gt(x) : normal_sf(x));
    const bool contained = r.lower <= std::min(ge, gt) && std::max(ge, gt) <= r.upper;
    all_contained = all_contained && contained;
    reports.push_back(
        {{"report", to_json(r)},
         {"oracle", {{"tail_moment_ge", ge}, {"tail_moment_gt", gt}, {"contained", contained}}}});
    table.rows.push_back({cell(x), cell(r.lower), cell(r.upper), cell(r.center), cell(r.radius), cell(r.correction),
                          cell(ge), cell(gt), cell(contained)});
  }
  doc["reports"] = reports;
  doc["all_contained"] = all_contained;
  emit(cfg, doc, table, out);
  return all_contained ? exit_ok : exit_audit;
}

int cmd_nagaev_audit(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dist.empty()) throw DomainError("--dist is required");
  if (cfg.n < 1) throw DomainError("--n must be positive");
  const DistSpec spec = parse_dist_spec(cfg.dist);
  if (!spec.base) throw DomainError("nagaev-audit needs a finite distribution");
  if (!(cfg.c_nu > 0.0)) throw DomainError("--cnu must be positive");
  const std::vector<double> z = cfg.x_grid.empty() ? default_z_grid() : parse_grid(cfg.x_grid);

  const DeltaProfile profile = delta_profile(*spec.base, cfg.n, z, cfg.dist);
  const double m3 = standardized_iid_sum_law(*spec.base, cfg.n).abs_moment(3.0);
  const NagaevResult nagaev = small_n_nagaev(profile.beta3, cfg.n, 0.0, m3);
  const double rosenthal = rosenthal_ub(profile.beta3, cfg.n);

  const bool within = profile.max_normalized <= cfg.c_nu + cfg.tol;
  const bool rosenthal_holds = m3 <= rosenthal + cfg.tol;
  const bool derivation_ok = !nagaev.applicable || nagaev.derivation_closes;
  const bool pass = within && rosenthal_holds && derivation_ok && profile.within_envelope;

  json doc = {
      {"command", "nagaev-audit"},
      {"dist", cfg.dist},
      {"n", cfg.n},
      {"c_nu", cfg.c_nu},
      {"tol", cfg.tol},
      {"profile", to_json(profile)},
      {"nagaev", to_json(nagaev)},
      {"rosenthal", {{"abs_third_moment", m3}, {"bound", rosenthal}, {"holds", rosenthal_holds}}},
      {"max_normalized", profile.max_normalized},
      {"within_c_nu", within},
      {"verdict", pass ? "pass" : "fail"},
  };
  if (cfg.format == "csv") {
    out << to_csv(profile);
  } else {
    Table table{{"z", "delta", "normalized"}, {}};
    for (std::size_t i = 0; i < profile.z.size(); ++i) {
      table.rows.push_back({cell(profile.z[i]), cell(profile.delta[i]), cell(profile.normalized[i])});
    }
    emit(cfg, doc, table, out);
    if (cfg.format == "table") {
      out << "max_normalized " << cell(profile.max_normalized) << "  c_nu " << cell(cfg.c_nu) << "  verdict "
          << (pass ? "pass" : "fail") << '\n';
    }
  }
  return pass ? exit_ok : exit_audit;
}

int cmd_psi(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> xs = x_values(cfg);
  json values = json::array();
  Table table{{"x", "psi"}, {}};
  for (double x : xs) {
    const double v = psi(x);
    values.push_back({{"x", x}, {"psi", v}});
    table.rows.push_back({cell(x), cell(v)});
  }
  json doc = {{"command", "psi"}, {"values", values}, {"limit", std::sqrt(2.0 / std::numbers::pi)}};
  emit(cfg, doc, table, out);
  return exit_ok;
}

int cmd_filter_inspect(const RunConfig& cfg, std::ostream& out, bool p_given) {
  const SmoothingFilter& filter = prawitz_filter();
  const std::vector<double> xs = x_values(cfg, {50.0, 500.0, 5000.0});
  json constants = json::array();
  for (double p : p_given ? std::vector<double>{cfg.p} : std::vector<double>{1.0, 2.0}) {
    constants.push_back(to_json(c2p_constant(filter, p)));
  }
  json kernel = json::array();
  Table table{{"x", "kernel", "residual"}, {}};
  for (double x : xs) {
    const double kv = kernel_eval(filter, x);
    const double res = kernel_residual(filter, x);
    kernel.push_back({{"x", x}, {"kernel", kv}, {"residual", res}});
    table.rows.push_back({cell(x), cell(kv), cell(res)});
  }
  json doc = {{"command", "filter-inspect"},     {"filter", filter.id},
              {"kappa", filter.kappa},           {"support_radius", filter.support_radius},
              {"c2p", constants},                {"kernel", kernel}};
  if (!cfg.t_grid.empty()) {
    json values = json::array();
    for (double t : parse_grid(cfg.t_grid)) {
      const auto m = filter(t);
      values.push_back({{"t", t}, {"re", m.real()}, {"im", m.imag()}});
    }
    doc["values"] = values;
  }
  emit(cfg, doc, table, out);
  return exit_ok;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string_view> parts;
  std::string_view rest = spec;
  for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos;) {
    parts.push_back(rest.substr(0, pos));
    rest.remove_prefix(pos + 1);
  }
  parts.push_back(rest);
  if (parts.size() != 3) throw DomainError("grid '" + spec + "' must be start:stop:step");
  const double start = parse_double(parts[0], "grid start");
  const double stop = parse_double(parts[1], "grid stop");
  const double step = parse_double(parts[2], "grid step");
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (stop < start) throw DomainError("grid stop must not precede start");
  const double count = std::floor((stop - start) / step + 1e-9) + 1.0;
  if (count > 1e6) throw DomainError("grid '" + spec + "' has too many points");
  std::vector<double> out;
  for (int i = 0; i < static_cast<int>(count); ++i) out.push_back(start + i * step);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("BEBOUND_TOL")) {
    try {
      cfg.tol = parse_double(env, "BEBOUND_TOL");
    } catch (const DomainError& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    }
    if (!(cfg.tol > 0.0)) {
      err << "error: BEBOUND_TOL must be positive\n";
      return exit_usage;
    }
  }

  CLI::App app{"Two-sided distribution and tail-moment bounds from characteristic functions"};
  app.require_subcommand(1);
  std::optional<double> tol;
  double T = 0.0, c_T = 0.0, x = 0.0;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  };
  auto add_dist = [&](CLI::App* sub) {
    sub->add_option("--dist", cfg.dist, "rademacher | bernoulli:p | atoms:x1,p1;x2,p2;... | normal")->required();
    sub->add_option("--n", cfg.n, "Number of iid summands (the sum is standardized)");
    sub->add_flag("--raw", cfg.raw, "Use the base law as given, without summing or standardizing");
  };
  auto add_cutoff = [&](CLI::App* sub) {
    auto* t = sub->add_option("--T", T, "Cutoff T");
    auto* c = sub->add_option("--cT", c_T, "T = cT sqrt(n) / beta3 (default cT = 1/sqrt 3)");
    t->excludes(c);
  };
  auto add_x = [&](CLI::App* sub) {
    auto* a = sub->add_option("--x", x, "Single evaluation point");
    auto* g = sub->add_option("--x-grid", cfg.x_grid, "Grid start:stop:step");
    a->excludes(g);
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "Absolute tolerance per transform (env BEBOUND_TOL)");
  };

  auto* constants = app.add_subcommand("constants", "Filter constants, crossover point and psi values");
  add_format(constants);

  auto* cdf = app.add_subcommand("cdf-bounds", "Smoothing-inequality sandwich for the distribution function");
  add_dist(cdf);
  add_cutoff(cdf);
  add_x(cdf);
  add_tol(cdf);
  add_format(cdf);

  auto* tail = app.add_subcommand("tail-bounds", "Two-sided bound on x^k P(X >= x)");
  add_dist(tail);
  add_cutoff(tail);
  add_x(tail);
  add_tol(tail);
  add_format(tail);
  tail->add_option("--k", cfg.k, "Moment order");
  tail->add_option("--p", cfg.p, "Exponent of the swap-error bound (surrogate mode)");
  tail->add_option("--mode", cfg.mode, "exact-abs or surrogate")->check(CLI::IsMember({"exact-abs", "surrogate"}));

  auto* nagaev = app.add_subcommand("nagaev-audit", "Exact nonuniform discrepancy profile against c_nu");
  add_dist(nagaev);
  nagaev->add_option("--cnu", cfg.c_nu, "Constant to audit against");
  nagaev->add_option("--z-grid", cfg.x_grid, "Grid start:stop:step (default: 81 points on [0, 4] plus [2, 3.5])");
  add_tol(nagaev);
  add_format(nagaev);

  auto* psi_cmd = app.add_subcommand("psi", "psi(x) = x^2 E[|Z_-|^3 / (|Z_-| + x)^2]");
  add_x(psi_cmd);
  add_format(psi_cmd);

  auto* inspect = app.add_subcommand("filter-inspect", "Filter constants and kernel decay");
  auto* p_opt = inspect->add_option("--p", cfg.p, "Exponent of the sup constant (default: 1 and 2)");
  add_x(inspect);
  inspect->add_option("--t-grid", cfg.t_grid, "Also print M(t) on start:stop:step");
  add_format(inspect);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (tol) {
    if (!(*tol > 0.0)) {
      err << "error: --tol must be positive\n";
      return exit_usage;
    }
    cfg.tol = *tol;
  }
  if (sub != constants && sub != nagaev) {
    if (given(sub, "--x")) cfg.x = x;
  }
  if (sub == cdf || sub == tail) {
    if (given(sub, "--T")) cfg.T = T;
    if (given(sub, "--cT")) cfg.c_T = c_T;
  }

  try {
    if (sub == constants) return cmd_constants(cfg, out);
    if (sub == cdf) return cmd_cdf_bounds(cfg, out);
    if (sub == tail) return cmd_tail_bounds(cfg, out);
    if (sub == nagaev) return cmd_nagaev_audit(cfg, out);
    if (sub == psi_cmd) return cmd_psi(cfg, out);
    return cmd_filter_inspect(cfg, out, p_opt->count() > 0);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  }
}

}  // namespace bebound::cli
