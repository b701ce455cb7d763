#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mscs/probability.hpp"

namespace mscs {

struct Segment {
  std::string name;
  ComponentDistribution distribution;
};

/// A pipeline of segments in series, each with its own state PMF.
struct PipelineSpec {
  Level max_state = 0;
  std::vector<Segment> segments;

  std::vector<ComponentDistribution> distributions() const;
};

/// Reads the JSON spec document:
///   { "max_state": M, "segments": [ { "name": "...", "pmf": [p0..pM] }, ... ] }
PipelineSpec load_pipeline_spec(const std::filesystem::path& path);
PipelineSpec parse_pipeline_spec(std::string_view text,
                                 const std::string& source = "<input>");

/// P[pipeline <= j] = 1 - prod_i (1 - sum_{k<=j} p_ik).
double pipeline_cdf(const PipelineSpec& spec, Level j);

/// 1 - prod_i (1 - p_i1); requires p_i0 = 0 for every segment.
double pipeline_state1_cdf(const PipelineSpec& spec);

/// 1 - prod_i (1 - p_i1) over the given State-1 probabilities, multiplied
/// in order.
double state1_cdf_from(std::span<const double> state1_probabilities);

/// Copy of spec with segment `index` (0-based) replaced by the PMF that puts
/// `p` on State 1 and 1 - p on State M.
PipelineSpec with_state1_override(const PipelineSpec& spec, std::size_t index,
                                  double p);

struct SweepRow {
  std::uint64_t trial = 0;  // 1-based
  double p_1_1 = 0.0;
  double p_2_1 = 0.0;
  double cdf_1 = 0.0;  // P_pipeline(1)
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::size_t argmax = 0;        // row with the largest P_pipeline(1)
  double corner_supremum = 0.0;  // value as p_1_1, p_2_1 -> 1
};

/// Draws (p_1_1, p_2_1) uniformly from (0,1) per trial, holding the other
/// segments at their spec values, and evaluates P_pipeline(1).
SweepResult sweep_state1(const PipelineSpec& spec, std::uint64_t trials,
                         std::uint64_t seed);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_distribution_csv(const SystemDistribution& dist, std::ostream& out);
void export_results(const SweepResult& result,
                    const std::filesystem::path& path);
void export_results(const SystemDistribution& dist,
                    const std::filesystem::path& path);

}  // namespace mscs
