#include "mscs/report.hpp"

#include <iomanip>
#include <ostream>

namespace mscs {

nlohmann::json to_json(const StateVector& x) {
  return nlohmann::json(std::vector<Level>(x.begin(), x.end()));
}

nlohmann::json to_json(const CoherenceReport& report) {
  using nlohmann::json;
  json doc;
  doc["structure"] = report.structure;
  doc["components"] = report.components;
  doc["max_state"] = report.max_state;
  doc["monotone"] = {{"pass", report.monotone.pass}};

  json relevance = json::array();
  json relevance_failures = json::array();
  for (const auto& e : report.relevance) {
    json entry = {{"component", e.component + 1},
                  {"level", e.level},
                  {"pass", e.pass}};
    if (e.witness) entry["witness"] = to_json(*e.witness);
    relevance.push_back(entry);
    if (!e.pass) {
      relevance_failures.push_back(
          {{"component", e.component + 1}, {"level", e.level}, {"note", e.note}});
    }
  }
  doc["relevance"] = relevance;

  json boundary = json::array();
  json boundary_failures = json::array();
  for (const auto& e : report.boundary) {
    boundary.push_back({{"level", e.level}, {"value", e.value}, {"pass", e.pass}});
    if (!e.pass) {
      boundary_failures.push_back({{"level", e.level}, {"value", e.value}});
    }
  }
  doc["boundary"] = boundary;
  doc["overall"] = report.overall;

  json monotone_ce = nullptr;
  if (report.monotone.counterexample) {
    monotone_ce = {{"x", to_json(report.monotone.counterexample->first)},
                   {"y", to_json(report.monotone.counterexample->second)}};
  }
  doc["counterexamples"] = {{"monotone", monotone_ce},
                            {"relevance", relevance_failures},
                            {"boundary", boundary_failures}};
  return doc;
}

void write_table(const CoherenceReport& report, std::ostream& out) {
  auto verdict = [](bool pass) { return pass ? "pass" : "FAIL"; };
  std::size_t relevance_ok = 0;
  for (const auto& e : report.relevance) relevance_ok += e.pass ? 1 : 0;
  std::size_t boundary_ok = 0;
  for (const auto& e : report.boundary) boundary_ok += e.pass ? 1 : 0;

  out << "structure   " << report.structure << '\n'
      << "components  " << report.components << '\n'
      << "max state   " << report.max_state << '\n'
      << '\n'
      << std::left << std::setw(16) << "condition" << "result\n"
      << std::setw(16) << "monotone" << verdict(report.monotone.pass) << '\n';
  if (report.monotone.counterexample) {
    const auto& [x, y] = *report.monotone.counterexample;
    out << "  counterexample x=" << to_string(x) << " <= y=" << to_string(y)
        << '\n';
  }
  out << std::setw(16) << "relevance" << verdict(report.relevance_pass()) << " ("
      << relevance_ok << '/' << report.relevance.size() << ")\n";
  for (const auto& e : report.relevance) {
    if (!e.pass) out << "  " << e.note << '\n';
  }
  out << std::setw(16) << "boundary" << verdict(report.boundary_pass()) << " ("
      << boundary_ok << '/' << report.boundary.size() << ")\n";
  for (const auto& e : report.boundary) {
    if (!e.pass) {
      out << "  phi(" << e.level << ",...," << e.level << ") = " << e.value
          << '\n';
    }
  }
  out << std::setw(16) << "overall" << (report.overall ? "PASS" : "FAIL")
      << '\n';
  out << std::right;
}

}  // namespace mscs
