#include "mscs/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mscs/error.hpp"
#include "mscs/rng.hpp"

namespace mscs {

namespace {

using nlohmann::json;

[[noreturn]] void format_error(const std::string& source,
                               const std::string& what) {
  throw Error(ErrorKind::FormatError, source + ": " + what);
}

void require_state1_precondition(const PipelineSpec& spec,
                                 std::size_t first_segment) {
  for (std::size_t i = first_segment; i < spec.segments.size(); ++i) {
    if (spec.segments[i].distribution.pmf.at(0) != 0.0) {
      throw Error(ErrorKind::PreconditionViolated,
                  "segment " + std::to_string(i + 1) + " ('" +
                      spec.segments[i].name +
                      "') has nonzero State 0 probability");
    }
  }
}

std::vector<double> state1_column(const PipelineSpec& spec) {
  std::vector<double> p1;
  p1.reserve(spec.segments.size());
  for (const auto& seg : spec.segments) p1.push_back(seg.distribution.pmf.at(1));
  return p1;
}

void write_number(std::ostream& out, double value) {
  out << std::setprecision(17) << value;
}

}  // namespace

std::vector<ComponentDistribution> PipelineSpec::distributions() const {
  std::vector<ComponentDistribution> out;
  out.reserve(segments.size());
  for (const auto& seg : segments) out.push_back(seg.distribution);
  return out;
}

PipelineSpec parse_pipeline_spec(std::string_view text,
                                 const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    format_error(source, e.what());
  }
  if (!doc.is_object()) format_error(source, "top level must be an object");

  PipelineSpec spec;
  if (!doc.contains("max_state") || !doc["max_state"].is_number_integer())
    format_error(source, "field 'max_state' must be an integer");
  const auto max_state = doc["max_state"].get<std::int64_t>();
  if (max_state < 1 || max_state > kMaxSupportedState)
    format_error(source, "field 'max_state' must lie in [1, " +
                             std::to_string(kMaxSupportedState) + "]");
  spec.max_state = static_cast<Level>(max_state);

  if (!doc.contains("segments") || !doc["segments"].is_array())
    format_error(source, "field 'segments' must be an array");
  const json& segments = doc["segments"];
  if (segments.empty()) format_error(source, "field 'segments' is empty");

  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string where = "segments[" + std::to_string(i) + "]";
    const json& seg = segments[i];
    if (!seg.is_object()) format_error(source, where + " must be an object");
    if (!seg.contains("name") || !seg["name"].is_string())
      format_error(source, where + ".name must be a string");
    if (!seg.contains("pmf") || !seg["pmf"].is_array())
      format_error(source, where + ".pmf must be an array");
    Segment out;
    out.name = seg["name"].get<std::string>();
    for (const json& p : seg["pmf"]) {
      if (!p.is_number())
        format_error(source, where + ".pmf must contain only numbers");
      out.distribution.pmf.push_back(p.get<double>());
    }
    if (out.distribution.pmf.size() != spec.max_state + 1u) {
      format_error(source, where + ".pmf has " +
                               std::to_string(out.distribution.pmf.size()) +
                               " entries, expected max_state + 1 = " +
                               std::to_string(spec.max_state + 1u));
    }
    const PmfDiagnostic diag = validate_pmf(out.distribution);
    if (!diag.ok()) {
      throw Error(ErrorKind::InvalidPMF,
                  source + ": segment '" + out.name + "': " + diag.message);
    }
    spec.segments.push_back(std::move(out));
  }
  return spec;
}

PipelineSpec load_pipeline_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_pipeline_spec(buffer.str(), path.string());
}

double pipeline_cdf(const PipelineSpec& spec, Level j) {
  const auto dists = spec.distributions();
  return closed_form_cdf(BasicKind::Series, dists, j);
}

double state1_cdf_from(std::span<const double> state1_probabilities) {
  double product = 1.0;
  for (double p : state1_probabilities) product *= 1.0 - p;
  return 1.0 - product;
}

double pipeline_state1_cdf(const PipelineSpec& spec) {
  require_valid_distributions(spec.distributions());
  require_state1_precondition(spec, 0);
  return state1_cdf_from(state1_column(spec));
}

PipelineSpec with_state1_override(const PipelineSpec& spec, std::size_t index,
                                  double p) {
  if (index >= spec.segments.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "segment " + std::to_string(index + 1) + " does not exist");
  }
  if (spec.max_state < 2) {
    throw Error(ErrorKind::PreconditionViolated,
                "State-1 override needs max_state >= 2");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::InvalidPMF, "State-1 probability outside [0, 1]");
  }
  PipelineSpec out = spec;
  auto& pmf = out.segments[index].distribution.pmf;
  std::fill(pmf.begin(), pmf.end(), 0.0);
  pmf[1] = p;
  pmf[spec.max_state] = 1.0 - p;
  return out;
}

SweepResult sweep_state1(const PipelineSpec& spec, std::uint64_t trials,
                         std::uint64_t seed) {
  if (trials == 0) {
    throw Error(ErrorKind::PreconditionViolated, "trials must be >= 1");
  }
  if (spec.segments.size() < 2) {
    throw Error(ErrorKind::PreconditionViolated,
                "the sweep varies segments 1 and 2; the spec has fewer");
  }
  if (spec.max_state < 2) {
    throw Error(ErrorKind::PreconditionViolated,
                "the sweep needs max_state >= 2");
  }
  require_valid_distributions(spec.distributions());
  require_state1_precondition(spec, 2);

  SweepResult result;
  result.seed = seed;
  result.trials = trials;
  result.rows.reserve(trials);

  std::vector<double> p1 = state1_column(spec);
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    p1[0] = rng.uniform_open();
    p1[1] = rng.uniform_open();
    SweepRow row{t + 1, p1[0], p1[1], state1_cdf_from(p1)};
    result.rows.push_back(row);
    if (result.rows[result.argmax].cdf_1 < row.cdf_1)
      result.argmax = result.rows.size() - 1;
  }
  p1[0] = 1.0;
  p1[1] = 1.0;
  result.corner_supremum = state1_cdf_from(p1);
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "trial,p_1_1,p_2_1,P_pipeline_1\n";
  for (const auto& row : result.rows) {
    out << row.trial << ',';
    write_number(out, row.p_1_1);
    out << ',';
    write_number(out, row.p_2_1);
    out << ',';
    write_number(out, row.cdf_1);
    out << '\n';
  }
}

void write_distribution_csv(const SystemDistribution& dist, std::ostream& out) {
  out << "level,pmf,cdf\n";
  for (std::size_t j = 0; j < dist.pmf.size(); ++j) {
    out << j << ',';
    write_number(out, dist.pmf[j]);
    out << ',';
    write_number(out, dist.cdf[j]);
    out << '\n';
  }
}

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  writer(out);
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + path.string());
}

}  // namespace

void export_results(const SweepResult& result,
                    const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_sweep_csv(result, out); });
}

void export_results(const SystemDistribution& dist,
                    const std::filesystem::path& path) {
  write_file(path,
             [&](std::ostream& out) { write_distribution_csv(dist, out); });
}

}  // namespace mscs
