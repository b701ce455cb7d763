#include <doctest.h>

#include <cmath>

#include "mscs/error.hpp"
#include "mscs/probability.hpp"
#include "oracles.hpp"

using namespace mscs;

namespace {

std::vector<ComponentDistribution> replicate(std::vector<double> pmf, std::size_t n) {
  return std::vector<ComponentDistribution>(n, ComponentDistribution{std::move(pmf)});
}

}  // namespace

TEST_CASE("validate_pmf diagnostics") {
  CHECK(validate_pmf({{0.25, 0.75}}).ok());
  CHECK(validate_pmf({{0.0, 0.1, 0.2, 0.3, 0.4}}).ok());

  const auto over = validate_pmf({{0.5, 0.6}});
  CHECK(over.issue == PmfIssue::NormalizationError);
  CHECK(over.residual == doctest::Approx(0.1));

  const auto neg = validate_pmf({{-0.1, 1.1}});
  CHECK(neg.issue == PmfIssue::NegativeMass);
  CHECK(neg.entry == 0);

  CHECK(validate_pmf({{1.0}}).issue == PmfIssue::TooFewStates);
  CHECK(validate_pmf({{0.0, 1.5, 0.5}}).issue == PmfIssue::ExceedsOne);
  CHECK(validate_pmf({{0.5, 0.5 + 5e-10}}).ok());
  CHECK_FALSE(validate_pmf({{0.5, 0.5 + 5e-9}}).ok());

  try {
    const std::vector<ComponentDistribution> mixed{{{0.5, 0.5}}, {{0.2, 0.3, 0.5}}};
    require_valid_distributions(mixed);
    FAIL("expected InvalidPMF");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidPMF);
  }
  CHECK_THROWS_AS(require_valid_distributions({}), Error);
}

TEST_CASE("component cdf") {
  const ComponentDistribution d{{0.1, 0.2, 0.3, 0.4}};
  CHECK(component_cdf(d, 0) == doctest::Approx(0.1));
  CHECK(component_cdf(d, 2) == doctest::Approx(0.6));
  CHECK(component_cdf(d, 3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(component_cdf(d, 4), Error);
}

TEST_CASE("two-component series example") {
  const auto dists = replicate({0.5, 0.5}, 2);
  const auto dist = exact_system_distribution(parse_expr("series(c1, c2)"), dists);
  CHECK(dist.pmf[0] == doctest::Approx(0.75));
  CHECK(dist.pmf[1] == doctest::Approx(0.25));
  CHECK(dist.cdf[1] == doctest::Approx(1.0));
  CHECK(closed_form_cdf(BasicKind::Series, dists, 0) == doctest::Approx(0.75));
  CHECK(closed_form_cdf(BasicKind::Parallel, dists, 0) == doctest::Approx(0.25));
}

TEST_CASE("exact distribution matches the oracle") {
  oracle::Engine rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 4);
    const Level m = static_cast<Level>(oracle::uniform_int(rng, 1, 3));
    const auto e = oracle::random_full_expr(rng, n, 3);
    std::vector<ComponentDistribution> dists;
    for (std::size_t i = 0; i < n; ++i) dists.push_back(oracle::random_pmf(rng, m));
    const auto dist = exact_system_distribution(e, dists);
    const auto expected = oracle::distribution(StructureFunction::from_expr(e), dists);
    const auto expected_cdf = oracle::cumulative(expected);
    for (Level j = 0; j <= m; ++j) {
      CHECK(dist.pmf[j] == doctest::Approx(expected[j]).epsilon(1e-12));
      CHECK(dist.cdf[j] == doctest::Approx(expected_cdf[j]).epsilon(1e-12));
    }
    CHECK(dist.cdf[m] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("closed forms and bounds agree with enumeration") {
  oracle::Engine rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 5);
    const Level m = static_cast<Level>(oracle::uniform_int(rng, 1, 4));
    std::vector<ComponentDistribution> dists;
    for (std::size_t i = 0; i < n; ++i) dists.push_back(oracle::random_pmf(rng, m));
    const auto series = StructureFunction::series(n);
    const auto parallel = StructureFunction::parallel(n);
    const auto s = exact_system_distribution(series, dists);
    const auto p = exact_system_distribution(parallel, dists);
    const auto koon = exact_system_distribution(
        StructureFunction::k_out_of_n(oracle::uniform_int(rng, 1, n), n), dists);
    for (Level j = 0; j <= m; ++j) {
      CHECK(closed_form_cdf(BasicKind::Series, dists, j) ==
            doctest::Approx(s.cdf[j]).epsilon(1e-12));
      CHECK(closed_form_cdf(BasicKind::Parallel, dists, j) ==
            doctest::Approx(p.cdf[j]).epsilon(1e-12));
      const auto b = cdf_bounds(BasicKind::Series, dists, j);
      CHECK(b.lower <= b.upper + 1e-15);
      for (const auto* d : {&s, &p, &koon}) {
        CHECK(b.lower <= d->cdf[j] + 1e-12);
        CHECK(d->cdf[j] <= b.upper + 1e-12);
      }
    }
  }
}

TEST_CASE("dominance") {
  oracle::Engine rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 4);
    const Level m = static_cast<Level>(oracle::uniform_int(rng, 1, 3));
    const auto e = oracle::random_full_expr(rng, n, 3);
    std::vector<ComponentDistribution> primed, plain;
    for (std::size_t i = 0; i < n; ++i) {
      primed.push_back(oracle::random_pmf(rng, m));
      plain.push_back(oracle::dominated_below(rng, primed.back()));
    }
    CHECK(dominance_check(e, primed, plain));
  }
  const auto e = parse_expr("series(c1, c2)");
  const auto low = replicate({0.9, 0.1}, 2);
  const auto high = replicate({0.1, 0.9}, 2);
  try {
    dominance_check(e, low, high);
    FAIL("expected HypothesisViolated");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::HypothesisViolated);
  }
  CHECK(dominance_check(e, high, low));
}

TEST_CASE("monte carlo is deterministic and converges") {
  const auto e = parse_expr("series(c1, c2)");
  const auto dists = replicate({0.5, 0.5}, 2);
  const auto a = monte_carlo_cdf(e, dists, 0, 100000, 42);
  const auto b = monte_carlo_cdf(e, dists, 0, 100000, 42);
  CHECK(a.estimate == b.estimate);
  CHECK(a.samples == 100000);
  CHECK(a.seed == 42);
  CHECK(std::abs(a.estimate - 0.75) < 4 * a.std_error + 1e-12);
  CHECK(monte_carlo_cdf(e, dists, 0, 100000, 43).estimate != a.estimate);

  const auto all = monte_carlo_distribution(e, dists, 100000, 42);
  CHECK(all[0].estimate == a.estimate);
  CHECK(all[1].estimate == 1.0);

  oracle::Engine rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = oracle::uniform_int(rng, 1, 4);
    const Level m = static_cast<Level>(oracle::uniform_int(rng, 1, 3));
    const auto ex = oracle::random_full_expr(rng, n, 3);
    std::vector<ComponentDistribution> ds;
    for (std::size_t i = 0; i < n; ++i) ds.push_back(oracle::random_pmf(rng, m));
    const auto exact = exact_system_distribution(ex, ds);
    const auto mc = monte_carlo_distribution(ex, ds, 200000, 1000 + trial);
    for (Level j = 0; j <= m; ++j) {
      CHECK(std::abs(mc[j].estimate - exact.cdf[j]) <= 5 * mc[j].std_error + 1e-9);
    }
  }
}
