#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "permbound/bounds.hpp"
#include "permbound/cp_optimizer.hpp"
#include "permbound/flow.hpp"
#include "permbound/interpolation.hpp"
#include "permbound/matrix.hpp"

namespace permbound::cli {

namespace {

using nlohmann::json;

struct SharedOptions {
  std::size_t n = 3;
  std::optional<std::size_t> k;
  std::optional<double> p;
  std::string p_grid;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::size_t threads = 1;
  std::optional<double> tol;
  std::string matrix;
};

void add_shared(CLI::App* sub, SharedOptions& s, std::size_t default_trials, const char* trials_help,
                const char* tol_help) {
  s.trials = default_trials;
  sub->add_option("--n", s.n, "Dimension N")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--k", s.k, "Number of vectors K (verify: sub-permanent bounds)");
  sub->add_option("--p", s.p, "Exponent p");
  sub->add_option("--p-grid", s.p_grid, "Exponent grid a:b:count");
  sub->add_option("--trials", s.trials, trials_help)->capture_default_str();
  sub->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  sub->add_option("--out", s.out, "Report path (default: stdout)");
  sub->add_option("--format", s.format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", s.threads, "Worker thread cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol", s.tol, tol_help);
  sub->add_option("--matrix", s.matrix, "Input matrix JSON {n,k,re,im}");
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("--p-grid must be a:b:count");
  const double a = std::stod(parts[0]);
  const double b = std::stod(parts[1]);
  const long count = std::stol(parts[2]);
  if (count < 1 || (count == 1 && a != b)) throw std::invalid_argument("--p-grid: bad count");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] =
        count == 1 ? a : (i + 1 == count ? b : a + (b - a) * static_cast<double>(i) / (count - 1));
  }
  return grid;
}

void emit(const std::string& report, const SharedOptions& s, std::ostream& out) {
  if (s.out.empty()) {
    out << report;
    if (!report.empty() && report.back() != '\n') out << '\n';
    return;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + s.out);
  file << report;
  if (!report.empty() && report.back() != '\n') file << '\n';
  if (!file) throw std::runtime_error("write failed: " + s.out);
}

OptimizationConfig optimizer_config(const SharedOptions& s) {
  OptimizationConfig config;
  config.num_starts = s.trials;
  config.seed = RngSeed{s.seed};
  config.threads = s.threads;
  config.validate();
  return config;
}

// verify

struct VerifyRow {
  std::string check;
  std::size_t trial = 0;
  RatioReport report;
};

int cmd_verify(const SharedOptions& s, double bound_scale, std::ostream& out) {
  std::vector<ColumnMatrix> inputs;
  if (!s.matrix.empty()) {
    inputs.push_back(load_matrix(s.matrix));
    if (s.k && *s.k != inputs.front().cols()) throw std::invalid_argument("--k disagrees with --matrix");
  } else {
    const bool sub = s.k.has_value() || s.p.has_value();
    const std::size_t k = s.k.value_or(s.n);
    const RandomMode mode = sub ? RandomMode::kNonnegUniform : RandomMode::kComplexGaussian;
    for (std::size_t t = 0; t < s.trials; ++t) {
      inputs.push_back(random_matrix(s.n, k, mode, derive_seed(RngSeed{s.seed}, t)));
    }
  }
  const double tol = s.tol.value_or(1e-9);
  const auto scaled = [&](const RatioReport& r) {
    return make_report(r.n, r.k, r.p, r.lhs, r.rhs * bound_scale, r.equality_class);
  };

  std::vector<VerifyRow> rows;
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    const ColumnMatrix& f = inputs[t];
    if (s.p) {
      const Corollary1Report c = corollary1_check(f, *s.p);
      rows.push_back({"corollary1", t, scaled(c.bound)});
      rows.push_back({"holder_step", t, scaled(c.holder_step)});
    } else if (s.k || !f.is_square()) {
      rows.push_back({"theorem4", t, scaled(theorem4_check(f))});
    } else {
      rows.push_back({"theorem1", t, scaled(theorem1_check(f))});
    }
  }

  std::size_t violations = 0;
  double max_ratio = 0.0;
  for (const auto& row : rows) {
    if (!row.report.holds(tol)) ++violations;
    max_ratio = std::max(max_ratio, row.report.ratio);
  }
  const int code = violations == 0 ? kExitOk : kExitViolation;
  const std::size_t k = inputs.empty() ? s.k.value_or(s.n) : inputs.front().cols();
  const std::size_t n = inputs.empty() ? s.n : inputs.front().rows();

  std::ostringstream report;
  if (s.format == "json") {
    json doc = {{"schema", "permbound.verify.v1"}, {"seed", s.seed}, {"tol", tol}};
    json list = json::array();
    for (const auto& row : rows) {
      json item = json::parse(to_json(row.report));
      item["check"] = row.check;
      item["trial"] = row.trial;
      list.push_back(std::move(item));
    }
    doc["rows"] = std::move(list);
    doc["summary"] = {{"checks", rows.size()}, {"violations", violations}, {"max_ratio", max_ratio}};
    report << doc.dump() << '\n';
  } else {
    report << "# permbound verify v1 seed=" << s.seed << '\n';
    report << "check,trial," << ratio_csv_header() << '\n';
    for (const auto& row : rows) {
      report << row.check << ',' << row.trial << ',' << to_csv_row(row.report) << '\n';
    }
    report << "summary," << rows.size() << ',' << n << ',' << k << ','
           << num(s.p.value_or(2.0)) << ",,," << num(max_ratio)
           << ",,violations=" << violations << '\n';
  }
  emit(report.str(), s, out);
  out << json{{"command", "verify"},
              {"checks", rows.size()},
              {"violations", violations},
              {"max_ratio", max_ratio},
              {"exit", code}}
             .dump()
      << '\n';
  return code;
}

// flow

struct FlowOptions {
  std::vector<double> circulant;
  std::optional<double> t_max;
  double t_min = 1e-3;
  std::size_t t_points = 30;
  bool brute_force = false;
};

int cmd_flow(const SharedOptions& s, const FlowOptions& f, std::ostream& out) {
  const double p = s.p.value_or(2.0);
  const double tol = s.tol.value_or(1e-9);
  const bool circulant = !f.circulant.empty();
  const FlowPath path = f.brute_force ? FlowPath::kBruteForce : FlowPath::kReduced;

  ColumnMatrix start(1, 1);
  if (circulant) {
    start = make_circulant3(f.circulant[0], f.circulant[1]);
  } else if (!s.matrix.empty()) {
    start = load_matrix(s.matrix);
  } else {
    start = random_matrix(s.n, s.n, RandomMode::kNonnegUniform, RngSeed{s.seed});
  }
  if (f.brute_force && start.rows() > SymmetricGroup::kMaxDegree) {
    throw std::invalid_argument("--brute-force supports N <= 6");
  }
  const double t_max = f.t_max.value_or(circulant ? 5.0 : 5.0 / static_cast<double>(start.rows()));
  const std::vector<double> times = geometric_time_grid(f.t_min, t_max, f.t_points);

  const FlowTrace trace = circulant ? circulant_flow(f.circulant[0], f.circulant[1], p, times)
                                    : flow_trace(start, p, times, path);
  const std::vector<double>& watched = circulant ? trace.circulant->phi : trace.eta;
  const double drop = max_decrease(watched);
  const bool monotone = drop <= tol;
  const double slope = circulant
                           ? initial_slope([&](double t) {
                               const std::vector<double> at{t};
                               return circulant_flow(f.circulant[0], f.circulant[1], p, at)
                                   .circulant->phi.front();
                             })
                           : initial_slope([&](double t) { return eta(start, p, t, path); });
  const int code = (p == 2.0 && !monotone) ? kExitViolation : kExitOk;

  emit(s.format == "json" ? to_json(trace) : to_csv(trace), s, out);
  json summary = {{"command", "flow"},
                  {"n", start.rows()},
                  {"p", p},
                  {"points", times.size()},
                  {"series", circulant ? "phi" : "eta"},
                  {"max_decrease", drop},
                  {"monotone", monotone},
                  {"initial_slope", slope},
                  {"exit", code}};
  if (circulant) {
    summary["x_end"] = trace.circulant->x.back();
    summary["y_end"] = trace.circulant->y.back();
  }
  out << summary.dump() << '\n';
  return code;
}

// cp

int cmd_cp(const SharedOptions& s, std::ostream& out) {
  std::vector<double> grid;
  if (!s.p_grid.empty()) {
    grid = parse_grid(s.p_grid);
  } else if (s.p) {
    grid = {*s.p};
  } else {
    grid = parse_grid("1:2:11");
  }
  const double tol = s.tol.value_or(1e-6);
  const std::vector<SweepRow> rows = sweep_p(s.n, grid, optimizer_config(s));

  std::size_t violations = 0;
  double max_gap = 0.0;
  for (const auto& row : rows) {
    if (row.best_ratio < row.lower_bound - tol || row.best_ratio > row.upper_bound + tol) {
      ++violations;
    }
    max_gap = std::max(max_gap, row.conjecture_gap);
  }
  const int code = violations == 0 ? kExitOk : kExitViolation;

  std::ostringstream report;
  if (s.format == "json") {
    json list = json::array();
    for (const auto& row : rows) list.push_back(json::parse(to_json(row)));
    report << json{{"schema", "permbound.cp.v1"}, {"seed", s.seed}, {"rows", list}}.dump() << '\n';
  } else {
    report << "# permbound cp sweep v1 seed=" << s.seed << " starts=" << s.trials << '\n';
    report << sweep_csv_header() << '\n';
    for (const auto& row : rows) report << to_csv_row(row) << '\n';
  }
  emit(report.str(), s, out);
  out << json{{"command", "cp"},
              {"n", s.n},
              {"points", rows.size()},
              {"best_first", rows.front().best_ratio},
              {"best_last", rows.back().best_ratio},
              {"max_conjecture_gap", max_gap},
              {"violations", violations},
              {"exit", code}}
             .dump()
      << '\n';
  return code;
}

// interp

struct InterpOptions {
  bool perm_tensor = false;
  std::size_t m = 2;
  std::size_t t_points = 5;
};

int cmd_interp(const SharedOptions& s, const InterpOptions& o, std::ostream& out) {
  if (o.t_points < 1) throw std::invalid_argument("--t-points must be >= 1");
  const MultilinearForm form = o.perm_tensor
                                   ? MultilinearForm::permanent_tensor(s.n)
                                   : MultilinearForm::random_nonnegative(o.m, s.n, RngSeed{s.seed});
  const PVector q = PVector::uniform(form.arity(), 1.0);
  const PVector r = PVector::uniform(form.arity(), 0.5);
  std::vector<double> t_grid(o.t_points);
  for (std::size_t i = 0; i < o.t_points; ++i) {
    t_grid[i] = static_cast<double>(i + 1) / static_cast<double>(o.t_points + 1);
  }
  const double tol = s.tol.value_or(kLogConvexityRelTol);
  const LogConvexityReport report = logconvexity_check(form, q, r, t_grid, optimizer_config(s), tol);

  std::size_t violations = 0;
  for (const auto& row : report.rows) violations += row.violation ? 1 : 0;
  const int code = violations == 0 ? kExitOk : kExitViolation;

  emit(s.format == "json" ? to_json(report) + "\n" : logconvexity_csv(report), s, out);
  out << json{{"command", "interp"},
              {"arity", form.arity()},
              {"n", form.dim()},
              {"estimate_q", report.estimate_q},
              {"estimate_r", report.estimate_r},
              {"points", report.rows.size()},
              {"violations", violations},
              {"exit", code}}
             .dump()
      << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of Hadamard-type permanent bounds"};
  app.name("permbound");
  app.set_config("--config", "", "TOML/INI file of option defaults; flags override");
  app.require_subcommand(1);

  SharedOptions verify_opts, flow_opts, cp_opts, interp_opts;
  double bound_scale = 1.0;
  FlowOptions flow_extra;
  InterpOptions interp_extra;

  CLI::App* verify = app.add_subcommand("verify", "Check the permanent bounds on random or given matrices");
  add_shared(verify, verify_opts, 100, "Random instances", "Relative slack tolerance (default 1e-9)");
  verify->add_option("--bound-scale", bound_scale)->group("");

  CLI::App* flow = app.add_subcommand("flow", "Trace eta_p(t) along the heat flow");
  add_shared(flow, flow_opts, 1, "Unused", "Allowed drop in the traced series (default 1e-9)");
  flow->add_option("--circulant", flow_extra.circulant, "Start from the 3x3 circulant (x, y)")
      ->expected(2);
  flow->add_option("--t-max", flow_extra.t_max, "Last time (default 5/N; 5 for --circulant)");
  flow->add_option("--t-min", flow_extra.t_min, "First positive time")->capture_default_str();
  flow->add_option("--t-points", flow_extra.t_points, "Grid size including t = 0")
      ->capture_default_str();
  flow->add_flag("--brute-force", flow_extra.brute_force, "Evolve on all of S_N (N <= 6)");

  CLI::App* cp = app.add_subcommand("cp", "Estimate C(p) over a p grid");
  add_shared(cp, cp_opts, 16, "Random starts per p", "Bracket tolerance (default 1e-6)");

  CLI::App* interp = app.add_subcommand("interp", "Log-convexity check of a multilinear form constant");
  add_shared(interp, interp_opts, 16, "Random starts per estimate",
             "Relative violation tolerance (default 1e-4)");
  interp->add_flag("--perm-tensor", interp_extra.perm_tensor, "Use the order-N permanent tensor");
  interp->add_option("--m", interp_extra.m, "Arity of a random nonnegative form")
      ->capture_default_str();
  interp->add_option("--t-points", interp_extra.t_points, "Interior points on the segment")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (verify->parsed()) return cmd_verify(verify_opts, bound_scale, out);
    if (flow->parsed()) return cmd_flow(flow_opts, flow_extra, out);
    if (cp->parsed()) return cmd_cp(cp_opts, out);
    return cmd_interp(interp_opts, interp_extra, out);
  } catch (const std::exception& e) {
    err << "permbound: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace permbound::cli
