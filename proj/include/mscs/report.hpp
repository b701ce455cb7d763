#pragma once

#include <iosfwd>

#include <json.hpp>

#include "mscs/coherence.hpp"

namespace mscs {

/// Fields: structure, components, max_state, monotone, relevance, boundary,
/// overall, counterexamples. Component indices are 1-based.
nlohmann::json to_json(const CoherenceReport& report);

void write_table(const CoherenceReport& report, std::ostream& out);

nlohmann::json to_json(const StateVector& x);

}  // namespace mscs
