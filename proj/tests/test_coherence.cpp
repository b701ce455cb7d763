#include <doctest.h>

#include "mscs/coherence.hpp"
#include "mscs/error.hpp"
#include "oracles.hpp"

using namespace mscs;

namespace {

StructureFunction fn(std::size_t n, std::function<Level(std::span<const Level>)> f,
                     std::string name = "custom") {
  return StructureFunction(n, std::move(f), std::move(name));
}

StructureFunction expr(const char* text) {
  return StructureFunction::from_expr(parse_expr(text));
}

}  // namespace

TEST_CASE("basic structures are coherent") {
  for (Level m : {1u, 2u, 4u}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      for (const auto& phi : {StructureFunction::series(n), StructureFunction::parallel(n),
                              StructureFunction::k_out_of_n(1, n)}) {
        const auto report = coherence_report(phi, m);
        CAPTURE(phi.name());
        CHECK(report.overall);
        CHECK(report.monotone.pass);
        CHECK(report.relevance.size() == n * (m + 1));
        CHECK(report.boundary.size() == m + 1);
      }
    }
  }
  CHECK(coherence_report(StructureFunction::series(3), 4).overall);
}

TEST_CASE("planted monotonicity counterexample") {
  const auto phi = fn(2, [](std::span<const Level> x) { return Level{2} - x[0]; });
  const auto result = check_monotonicity(phi, 2);
  CHECK_FALSE(result.pass);
  REQUIRE(result.counterexample.has_value());
  CHECK(result.counterexample->first == StateVector{0, 0});
  CHECK(result.counterexample->second == StateVector{1, 0});
  CHECK(result.counterexample == oracle::first_monotonicity_violation(phi, 2));
}

TEST_CASE("an ignored component is irrelevant at every level") {
  const auto phi = fn(2, [](std::span<const Level> x) { return x[0]; });
  const auto entries = check_relevance(phi, 3);
  for (const auto& e : entries) {
    CAPTURE(e.component);
    CAPTURE(e.level);
    CHECK(e.pass == (e.component == 0));
    if (e.component == 1) {
      CHECK_FALSE(e.witness.has_value());
      CHECK_FALSE(e.note.empty());
    }
  }
  CHECK_FALSE(coherence_report(phi, 3).overall);
  const auto dup = StructureFunction::from_expr(parse_expr("parallel(c1, c1)"), 2);
  CHECK_FALSE(coherence_report(dup, 2).overall);
}

TEST_CASE("boundary failure of a capped shift") {
  const Level m = 3;
  const auto phi = fn(2, [m](std::span<const Level> x) {
    return std::min<Level>(std::min(x[0], x[1]) + 1, m);
  });
  const auto boundary = check_boundary(phi, m);
  CHECK_FALSE(boundary[0].pass);
  CHECK(boundary[0].value == 1);
  for (Level j = 1; j <= m; ++j) CHECK(boundary[j].pass == (j == m));
  CHECK(check_monotonicity(phi, m).pass);
  CHECK_FALSE(coherence_report(phi, m).overall);
}

TEST_CASE("relevance witnesses agree with the oracle") {
  oracle::Engine rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 3);
    const Level m = static_cast<Level>(oracle::uniform_int(rng, 1, 3));
    const auto phi = StructureFunction::from_expr(oracle::random_full_expr(rng, n, 3));
    CAPTURE(phi.name());
    for (const auto& e : check_relevance(phi, m)) {
      const auto expected = oracle::first_relevance_witness(phi, e.component, e.level, m);
      CHECK(e.pass == expected.has_value());
      CHECK(e.witness == expected);
    }
  }
}

TEST_CASE("arbitrary tables: monotonicity verdicts agree with the oracle") {
  oracle::Engine rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 3);
    const Level m = static_cast<Level>(oracle::uniform_int(rng, 1, 2));
    std::vector<Level> table;
    const auto all = oracle::all_vectors(n, m);
    for (std::size_t k = 0; k < all.size(); ++k)
      table.push_back(static_cast<Level>(oracle::uniform_int(rng, 0, m)));
    const auto phi = fn(n, [all, table](std::span<const Level> x) {
      const StateVector v{std::vector<Level>(x.begin(), x.end())};
      for (std::size_t k = 0; k < all.size(); ++k)
        if (all[k] == v) return table[k];
      return Level{0};
    });
    CHECK(check_monotonicity(phi, m).counterexample ==
          oracle::first_monotonicity_violation(phi, m));
  }
}

TEST_CASE("structure bounds sandwich the value") {
  const auto phi = expr("koon(2; c1, c2, c3)");
  const auto b = structure_bounds(phi, StateVector{2, 0, 3});
  CHECK(b.low == 0);
  CHECK(b.value == 2);
  CHECK(b.high == 3);
  oracle::Engine rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto e = oracle::random_full_expr(rng, 4, 3);
    const auto f = StructureFunction::from_expr(e);
    const auto x = oracle::random_vector(rng, 4, 4);
    const auto bounds = structure_bounds(f, x);
    CHECK(bounds.low <= bounds.value);
    CHECK(bounds.value <= bounds.high);
  }
}

TEST_CASE("redundancy and composition comparisons") {
  const StateVector x{1, 3};
  const StateVector y{2, 0};
  // series: phi(x v y) = 2 >= phi(x) v phi(y) = 1 v 0 = 1
  auto r = redundancy_comparison(BasicKind::Series, x, y);
  CHECK(r.component_level == 2);
  CHECK(r.system_level == 1);
  // parallel: phi(x ^ y) = max(1, 0) = 1 <= phi(x) ^ phi(y) = 3 ^ 2 = 2
  auto c = composition_comparison(BasicKind::Parallel, x, y);
  CHECK(c.component_level == 1);
  CHECK(c.system_level == 2);

  oracle::Engine rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = oracle::random_vector(rng, 3, 4);
    const auto b = oracle::random_vector(rng, 3, 4);
    for (auto kind : {BasicKind::Series, BasicKind::Parallel}) {
      const auto red = redundancy_comparison(kind, a, b);
      CHECK(red.component_level >= red.system_level);
      const auto comp = composition_comparison(kind, a, b);
      CHECK(comp.component_level <= comp.system_level);
      if (kind == BasicKind::Parallel) CHECK(red.component_level == red.system_level);
      if (kind == BasicKind::Series) CHECK(comp.component_level == comp.system_level);
    }
  }
}

TEST_CASE("upper critical connection vectors") {
  const auto par = StructureFunction::parallel(2);
  const auto ucv1 = enumerate_ucv(par, 2, 1);
  CHECK(ucv1.vectors == std::vector<StateVector>{{0, 1}, {1, 0}});
  const auto ser = StructureFunction::series(2);
  CHECK(enumerate_ucv(ser, 2, 2).vectors == std::vector<StateVector>{{2, 2}});
  CHECK(enumerate_ucv(ser, 2, 0).vectors == std::vector<StateVector>{{0, 0}});

  CHECK(is_connection_vector(par, StateVector{0, 1}, 1));
  CHECK_FALSE(is_connection_vector(par, StateVector{1, 1}, 0));
  CHECK(is_upper_critical(par, StateVector{1, 0}, 1, 2));
  const auto notcrit = check_upper_critical(par, StateVector{1, 1}, 1, 2);
  CHECK_FALSE(notcrit.upper_critical);
  CHECK(notcrit.witness == StateVector{0, 1});

  oracle::Engine rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 3);
    const Level m = static_cast<Level>(oracle::uniform_int(rng, 1, 3));
    const auto phi = StructureFunction::from_expr(oracle::random_full_expr(rng, n, 3));
    for (Level j = 0; j <= m; ++j) {
      const auto set = enumerate_ucv(phi, m, j);
      std::vector<StateVector> expected;
      for (const auto& x : oracle::all_vectors(n, m))
        if (oracle::is_upper_critical(phi, x, j, m)) expected.push_back(x);
      CHECK(set.vectors == expected);
      for (const auto& x : oracle::all_vectors(n, m)) {
        CHECK(is_upper_critical(phi, x, j, m) == oracle::is_upper_critical(phi, x, j, m));
      }
      for (std::size_t a = 0; a < set.vectors.size(); ++a)
        for (std::size_t b = 0; b < set.vectors.size(); ++b)
          if (a != b) CHECK_FALSE(leq(set.vectors[a], set.vectors[b]));
    }
  }
}

TEST_CASE("level lower bound") {
  const auto phi = expr("koon(2; c1, c2, c3)");
  const Level m = 3;
  for (Level j = 0; j <= m; ++j) {
    for (const auto& ucv : enumerate_ucv(phi, m, j).vectors) {
      const LevelLowerBound bound(phi, ucv, j, m);
      for (const auto& x : oracle::all_vectors(3, m)) {
        CHECK(bound.holds(x));
        if (leq(ucv, x)) CHECK(phi(x) >= j);
      }
    }
  }
  try {
    LevelLowerBound(phi, StateVector{2, 2, 2}, 1, m);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
  CHECK_THROWS_AS(LevelLowerBound(phi, StateVector{1, 1}, 1, m), Error);
  CHECK(level_lower_bound_check(phi, StateVector{1, 1, 0}, 1, StateVector{2, 3, 0}, m));
}
