#include "mscs/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mscs/coherence.hpp"
#include "mscs/error.hpp"
#include "mscs/pipeline.hpp"
#include "mscs/probability.hpp"
#include "mscs/report.hpp"
#include "mscs/structure.hpp"

namespace mscs::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::string> structure;
  std::size_t components = 0;
  Level max_state = 0;
  std::optional<Level> level;
  std::string spec;
  std::string primed_spec;
  std::vector<std::string> pmfs;
  std::vector<std::string> primed_pmfs;
  std::string state;
  std::string method = "exact";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  std::uint64_t trials = 1000;
  std::string out_path;
  bool json = false;
  std::optional<std::uint64_t> limit;
};

std::string fixed(double value) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(10) << value;
  return s.str();
}

std::uint64_t parse_limit_env(const char* text) {
  std::uint64_t value = 0;
  std::string_view view(text);
  auto [end, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
  if (ec != std::errc() || end != view.data() + view.size() || value == 0) {
    throw UsageError("MSCS_LIMIT must be a positive integer, got '" +
                     std::string(view) + "'");
  }
  return value;
}

EnumerationOptions enumeration(const Options& o) {
  EnumerationOptions e;
  if (o.limit) {
    e.limit = *o.limit;
  } else if (const char* env = std::getenv("MSCS_LIMIT")) {
    e.limit = parse_limit_env(env);
  }
  return e;
}

StructureExpr structure_of(const Options& o) {
  if (!o.structure) throw UsageError("--structure is required");
  return parse_expr(*o.structure);
}

StructureFunction function_of(const Options& o, const StructureExpr& e) {
  return o.components ? StructureFunction::from_expr(e, o.components)
                      : StructureFunction::from_expr(e);
}

ComponentDistribution parse_pmf(const std::string& text) {
  ComponentDistribution d;
  std::stringstream fields(text);
  std::string field;
  while (std::getline(fields, field, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used])))
      ++used;
    if (field.empty() || used != field.size())
      throw UsageError("invalid PMF entry '" + field + "' in '" + text + "'");
    d.pmf.push_back(value);
  }
  return d;
}

// Distributions come from a spec file or from --pmf (one per component, or a
// single one shared by all components).
std::vector<ComponentDistribution> distributions_of(
    const std::string& spec_path, const std::vector<std::string>& pmfs,
    std::size_t components, const char* flag_names) {
  if (!spec_path.empty() && !pmfs.empty())
    throw UsageError(std::string("give either ") + flag_names + ", not both");
  if (!spec_path.empty()) return load_pipeline_spec(spec_path).distributions();
  if (pmfs.empty())
    throw UsageError(std::string("component distributions required (") +
                     flag_names + ")");
  std::vector<ComponentDistribution> out;
  for (const auto& text : pmfs) out.push_back(parse_pmf(text));
  if (out.size() == 1 && components > 1) out.assign(components, out.front());
  return out;
}

StructureExpr structure_or_series(const Options& o, std::size_t components) {
  if (!!o.structure) return parse_expr(*o.structure);
  if (components == 1) return StructureExpr::component(0);
  std::vector<StructureExpr> children;
  for (std::size_t i = 0; i < components; ++i)
    children.push_back(StructureExpr::component(i));
  return StructureExpr::series(std::move(children));
}

/// Series/parallel over c1..cn, each exactly once.
std::optional<BasicKind> basic_kind_of(const StructureExpr& e) {
  if (e.kind == NodeKind::Component) {
    if (e.index == 0) return BasicKind::Series;
    return std::nullopt;
  }
  if (e.kind != NodeKind::Series && e.kind != NodeKind::Parallel)
    return std::nullopt;
  std::vector<bool> seen(e.children.size(), false);
  for (const auto& c : e.children) {
    if (c.kind != NodeKind::Component || c.index >= seen.size() || seen[c.index])
      return std::nullopt;
    seen[c.index] = true;
  }
  return e.kind == NodeKind::Series ? BasicKind::Series : BasicKind::Parallel;
}

json levels_json(const std::vector<double>& values) { return json(values); }

// ---------------------------------------------------------------------------

int cmd_coherence(const Options& o, std::ostream& out) {
  if (o.max_state == 0) throw UsageError("--max-state is required");
  const auto e = structure_of(o);
  const auto phi = function_of(o, e);
  const CoherenceReport report = coherence_report(phi, o.max_state, enumeration(o));
  if (o.json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    write_table(report, out);
  }
  return report.overall ? kExitOk : kExitPropertyFailed;
}

int cmd_eval(const Options& o, std::ostream& out) {
  if (o.state.empty()) throw UsageError("--state is required");
  const auto e = structure_of(o);
  const StateVector x = parse_state_vector(o.state);
  const auto phi = function_of(o, e);
  const StructureBounds b = structure_bounds(phi, x);
  if (o.json) {
    out << json{{"structure", format_expr(e)},
                {"state", to_json(x)},
                {"value", b.value},
                {"low", b.low},
                {"high", b.high}}
               .dump(2)
        << '\n';
  } else {
    out << b.value << '\n';
  }
  return kExitOk;
}

int cmd_ucv(const Options& o, std::ostream& out) {
  if (o.max_state == 0) throw UsageError("--max-state is required");
  if (!o.level) throw UsageError("--level is required");
  const auto e = structure_of(o);
  const auto phi = function_of(o, e);
  const UCVSet set = enumerate_ucv(phi, o.max_state, *o.level, enumeration(o));
  if (o.json) {
    json vectors = json::array();
    for (const auto& v : set.vectors) vectors.push_back(to_json(v));
    out << json{{"structure", phi.name()},
                {"components", phi.arity()},
                {"max_state", o.max_state},
                {"level", set.level},
                {"count", set.vectors.size()},
                {"vectors", vectors}}
               .dump(2)
        << '\n';
  } else {
    for (const auto& v : set.vectors) out << to_string(v) << '\n';
  }
  return kExitOk;
}

int cmd_dist(const Options& o, std::ostream& out) {
  auto dists = distributions_of(o.spec, o.pmfs,
                                !o.structure ? 0 : arity(structure_of(o)),
                                "--spec or --pmf");
  const StructureExpr e = structure_or_series(o, dists.size());
  const Level max_state = require_valid_distributions(dists);

  SystemDistribution result;
  std::vector<double> std_errors;
  if (o.method == "exact") {
    result = exact_system_distribution(e, dists, enumeration(o));
  } else if (o.method == "closed") {
    const auto kind = basic_kind_of(e);
    if (!kind)
      throw UsageError("--method closed needs a plain series or parallel "
                       "structure over c1..cn");
    if (arity(e) != dists.size())
      throw Error(ErrorKind::ArityMismatch,
                  "structure arity differs from the number of distributions");
    std::vector<double> cdf;
    for (Level j = 0; j <= max_state; ++j)
      cdf.push_back(closed_form_cdf(*kind, dists, j));
    std::vector<double> pmf(cdf.size());
    for (std::size_t j = 0; j < cdf.size(); ++j)
      pmf[j] = cdf[j] - (j ? cdf[j - 1] : 0.0);
    result.pmf = std::move(pmf);
    result.cdf = std::move(cdf);
  } else if (o.method == "mc") {
    const auto estimates = monte_carlo_distribution(e, dists, o.samples, o.seed);
    std::vector<double> cdf;
    for (const auto& est : estimates) {
      cdf.push_back(est.estimate);
      std_errors.push_back(est.std_error);
    }
    std::vector<double> pmf(cdf.size());
    for (std::size_t j = 0; j < cdf.size(); ++j)
      pmf[j] = cdf[j] - (j ? cdf[j - 1] : 0.0);
    result.pmf = std::move(pmf);
    result.cdf = std::move(cdf);
  } else {
    throw UsageError("--method must be exact, closed or mc");
  }

  if (!o.out_path.empty()) export_results(result, o.out_path);
  if (o.json) {
    json doc = {{"structure", format_expr(e)},
                {"method", o.method},
                {"max_state", max_state},
                {"pmf", levels_json(result.pmf)},
                {"cdf", levels_json(result.cdf)}};
    if (o.method == "mc") {
      doc["samples"] = o.samples;
      doc["seed"] = o.seed;
      doc["std_error"] = levels_json(std_errors);
    }
    out << doc.dump(2) << '\n';
  } else if (o.out_path.empty()) {
    out << "level  pmf           cdf\n";
    for (std::size_t j = 0; j < result.pmf.size(); ++j) {
      out << std::left << std::setw(7) << j << std::setw(14)
          << fixed(result.pmf[j]) << fixed(result.cdf[j]) << '\n';
    }
    out << std::right;
  }
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  auto dists = distributions_of(o.spec, o.pmfs,
                                !o.structure ? 0 : arity(structure_of(o)),
                                "--spec or --pmf");
  const StructureExpr e = structure_or_series(o, dists.size());
  const Level max_state = require_valid_distributions(dists);
  const BasicKind kind = basic_kind_of(e).value_or(BasicKind::Series);
  const SystemDistribution exact = exact_system_distribution(e, dists, enumeration(o));

  Level first = 0, last = max_state;
  if (o.level) {
    if (*o.level > max_state)
      throw Error(ErrorKind::LevelOutOfRange, "--level exceeds max state");
    first = last = *o.level;
  }
  bool all_within = true;
  json rows = json::array();
  if (!o.json) out << "level  lower         exact         upper\n";
  for (Level j = first; j <= last; ++j) {
    const CdfBounds b = cdf_bounds(kind, dists, j);
    const bool within = b.lower - 1e-12 <= exact.cdf[j] && exact.cdf[j] <= b.upper + 1e-12;
    all_within = all_within && within;
    if (o.json) {
      rows.push_back({{"level", j},
                      {"lower", b.lower},
                      {"exact", exact.cdf[j]},
                      {"upper", b.upper},
                      {"within", within}});
    } else {
      out << std::left << std::setw(7) << j << std::setw(14) << fixed(b.lower)
          << std::setw(14) << fixed(exact.cdf[j]) << fixed(b.upper)
          << (within ? "" : "  OUTSIDE") << '\n'
          << std::right;
    }
  }
  if (o.json) {
    out << json{{"structure", format_expr(e)}, {"levels", rows}, {"within", all_within}}
               .dump(2)
        << '\n';
  }
  return all_within ? kExitOk : kExitPropertyFailed;
}

int cmd_dominance(const Options& o, std::ostream& out) {
  const std::size_t n = !o.structure ? 0 : arity(structure_of(o));
  auto dists = distributions_of(o.spec, o.pmfs, n, "--spec or --pmf");
  auto primed = distributions_of(o.primed_spec, o.primed_pmfs, n,
                                 "--primed-spec or --primed-pmf");
  const StructureExpr e = structure_or_series(o, dists.size());
  const bool holds = dominance_check(e, primed, dists, enumeration(o));
  if (o.json) {
    const auto sys = exact_system_distribution(e, dists, enumeration(o));
    const auto sys_primed = exact_system_distribution(e, primed, enumeration(o));
    out << json{{"structure", format_expr(e)},
                {"dominates", holds},
                {"cdf", levels_json(sys.cdf)},
                {"cdf_primed", levels_json(sys_primed.cdf)}}
               .dump(2)
        << '\n';
  } else {
    out << (holds ? "P(j) >= P'(j) at every level\n"
                  : "dominance FAILS: P(j) < P'(j) at some level\n");
  }
  return holds ? kExitOk : kExitPropertyFailed;
}

int cmd_pipeline_analyze(const Options& o, std::ostream& out) {
  if (o.spec.empty()) throw UsageError("--spec is required");
  const PipelineSpec spec = load_pipeline_spec(o.spec);
  if (o.level) {
    const double value = pipeline_cdf(spec, *o.level);
    if (o.json) {
      out << json{{"segments", spec.segments.size()},
                  {"max_state", spec.max_state},
                  {"levels", json::array({{{"level", *o.level}, {"cdf", value}}})}}
                 .dump(2)
          << '\n';
    } else {
      out << fixed(value) << '\n';
    }
    return kExitOk;
  }
  std::vector<double> cdf;
  for (Level j = 0; j <= spec.max_state; ++j) cdf.push_back(pipeline_cdf(spec, j));
  std::vector<double> pmf(cdf.size());
  for (std::size_t j = 0; j < cdf.size(); ++j) pmf[j] = cdf[j] - (j ? cdf[j - 1] : 0.0);
  if (!o.out_path.empty()) export_results(SystemDistribution{pmf, cdf}, o.out_path);
  if (o.json) {
    json levels = json::array();
    for (std::size_t j = 0; j < cdf.size(); ++j) levels.push_back({{"level", j}, {"cdf", cdf[j]}});
    out << json{{"segments", spec.segments.size()},
                {"max_state", spec.max_state},
                {"levels", levels}}
               .dump(2)
        << '\n';
  } else {
    out << "level  P_pipeline(j)\n";
    for (std::size_t j = 0; j < cdf.size(); ++j)
      out << std::left << std::setw(7) << j << std::right << fixed(cdf[j]) << '\n';
  }
  return kExitOk;
}

json row_json(const SweepRow& row) {
  return {{"trial", row.trial},
          {"p_1_1", row.p_1_1},
          {"p_2_1", row.p_2_1},
          {"P_pipeline_1", row.cdf_1}};
}

int cmd_pipeline_sweep(const Options& o, std::ostream& out) {
  if (o.spec.empty()) throw UsageError("--spec is required");
  const PipelineSpec spec = load_pipeline_spec(o.spec);
  const SweepResult result = sweep_state1(spec, o.trials, o.seed);
  if (!o.out_path.empty()) export_results(result, o.out_path);
  if (o.json) {
    json rows = json::array();
    for (const auto& row : result.rows) rows.push_back(row_json(row));
    out << json{{"seed", result.seed},
                {"trials", result.trials},
                {"argmax", row_json(result.rows[result.argmax])},
                {"corner_supremum", result.corner_supremum},
                {"rows", rows}}
               .dump(2)
        << '\n';
  } else if (o.out_path.empty()) {
    write_sweep_csv(result, out);
  } else {
    const SweepRow& best = result.rows[result.argmax];
    out << "trials           " << result.trials << '\n'
        << "seed             " << result.seed << '\n'
        << "sample argmax    trial " << best.trial << ": p_1_1=" << fixed(best.p_1_1)
        << " p_2_1=" << fixed(best.p_2_1) << " P_pipeline(1)=" << fixed(best.cdf_1)
        << '\n'
        << "corner supremum  " << fixed(result.corner_supremum) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Multistate coherent system analysis", "mscs"};
  app.require_subcommand(1);
  Options o;

  auto structure = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--structure", o.structure,
                                "structure expression, e.g. \"series(c1, parallel(c2, c3))\"");
    if (required) opt->required();
  };
  auto components = [&](CLI::App* sub) {
    sub->add_option("--components", o.components,
                    "declared component count (defaults to the largest index)");
  };
  auto max_state = [&](CLI::App* sub) {
    sub->add_option("--max-state", o.max_state, "largest level M")->required();
  };
  auto level = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--level", o.level, "level j");
    if (required) opt->required();
  };
  auto limit = [&](CLI::App* sub) {
    sub->add_option("--limit", o.limit,
                    "enumeration guard in vectors (env MSCS_LIMIT)");
  };
  auto json_flag = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "machine-readable output");
  };
  auto dists = [&](CLI::App* sub) {
    sub->add_option("--spec", o.spec, "pipeline spec file supplying the PMFs");
    sub->add_option("--pmf", o.pmfs,
                    "comma-separated PMF; repeat per component or give once");
  };

  auto* coherence = app.add_subcommand("coherence", "check the coherence conditions");
  structure(coherence, true);
  components(coherence);
  max_state(coherence);
  limit(coherence);
  json_flag(coherence);

  auto* eval = app.add_subcommand("eval", "evaluate a structure on a state vector");
  structure(eval, true);
  components(eval);
  eval->add_option("--state", o.state, "comma-separated levels")->required();
  json_flag(eval);

  auto* ucv = app.add_subcommand("ucv", "enumerate upper critical connection vectors");
  structure(ucv, true);
  components(ucv);
  max_state(ucv);
  level(ucv, true);
  limit(ucv);
  json_flag(ucv);

  auto* dist = app.add_subcommand("dist", "system performance distribution");
  structure(dist, false);
  dists(dist);
  dist->add_option("--method", o.method, "exact | closed | mc")
      ->check(CLI::IsMember({"exact", "closed", "mc"}));
  dist->add_option("--samples", o.samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);
  dist->add_option("--seed", o.seed, "Monte Carlo seed");
  dist->add_option("--out", o.out_path, "write level,pmf,cdf CSV");
  limit(dist);
  json_flag(dist);

  auto* bounds = app.add_subcommand("bounds", "product bounds against the exact CDF");
  structure(bounds, false);
  dists(bounds);
  level(bounds, false);
  limit(bounds);
  json_flag(bounds);

  auto* dominance = app.add_subcommand("dominance", "check CDF dominance");
  structure(dominance, false);
  dists(dominance);
  dominance->add_option("--primed-spec", o.primed_spec, "spec file for P'");
  dominance->add_option("--primed-pmf", o.primed_pmfs, "PMFs for P'");
  limit(dominance);
  json_flag(dominance);

  auto* pipeline = app.add_subcommand("pipeline", "series pipeline case study");
  pipeline->require_subcommand(1);
  auto* analyze = pipeline->add_subcommand("analyze", "pipeline performance distribution");
  analyze->add_option("--spec", o.spec, "pipeline spec file")->required();
  level(analyze, false);
  analyze->add_option("--out", o.out_path, "write level,pmf,cdf CSV");
  json_flag(analyze);
  auto* sweep = pipeline->add_subcommand("sweep", "randomized State-1 sweep");
  sweep->add_option("--spec", o.spec, "pipeline spec file")->required();
  sweep->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", o.seed, "seed");
  sweep->add_option("--out", o.out_path, "write trial,p_1_1,p_2_1,P_pipeline_1 CSV");
  json_flag(sweep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*coherence) return cmd_coherence(o, out);
    if (*eval) return cmd_eval(o, out);
    if (*ucv) return cmd_ucv(o, out);
    if (*dist) return cmd_dist(o, out);
    if (*bounds) return cmd_bounds(o, out);
    if (*dominance) return cmd_dominance(o, out);
    if (*analyze) return cmd_pipeline_analyze(o, out);
    if (*sweep) return cmd_pipeline_sweep(o, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

}  // namespace mscs::cli
