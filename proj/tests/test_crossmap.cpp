#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "xmap/crossmap.hpp"
#include "xmap/error.hpp"

using namespace xmap;
using xmap::test::country_map;

namespace {

template <class F>
std::optional<ErrorKind> kind_of(F&& fn) {
  return xmap::test::kind_from(std::forward<F>(fn));
}

template <class F>
Error error_of(F&& fn) {
  auto e = xmap::test::error_from(std::forward<F>(fn));
  REQUIRE(e.has_value());
  return *e;
}

}  // namespace

TEST_SUITE_BEGIN("crossmap");

TEST_CASE("category labels") {
  CHECK(CategoryLabel("  BLX \t").str() == "BLX");
  CHECK(CategoryLabel("004").str() == "004");
  CHECK(CategoryLabel("a") != CategoryLabel("A"));
  CHECK(kind_of([] { CategoryLabel("   "); }) == ErrorKind::InvalidLabel);
  CHECK(kind_of([] { CategoryLabel("a,b"); }) == ErrorKind::InvalidLabel);
  CHECK(kind_of([] { CategoryLabel("a\"b"); }) == ErrorKind::InvalidLabel);
  CHECK(kind_of([] { CategoryLabel("a\nb"); }) == ErrorKind::InvalidLabel);
}

TEST_CASE("build_crossmap accepts the country table") {
  const auto c = country_map();
  CHECK(c.sources().size() == 4);
  CHECK(c.targets().size() == 4);
  CHECK(c.links().size() == 5);
  CHECK(c.source_taxonomy() == "CTRY_OLD");
  CHECK(c.target_taxonomy() == "CTRY_NEW");
  // input order preserved
  CHECK(c.links()[0].from.str() == "BLX");
  CHECK(c.links()[4].to.str() == "AUS");
  CHECK(c.sources()[0].str() == "BLX");
  CHECK(c.targets()[2].str() == "DEU");
  CHECK(c.weight(CategoryLabel("BLX"), CategoryLabel("LUX")) == 0.5);
  CHECK_FALSE(c.weight(CategoryLabel("BLX"), CategoryLabel("DEU")).has_value());
}

TEST_CASE("identity and self-loops") {
  const auto c = build_crossmap("T", "T", {{"A", "A", 1.0}});
  CHECK(c.links().size() == 1);
  CHECK(classify_source(c, CategoryLabel("A")) == RelationKind::OneToOne);
  CHECK(classify_target(c, CategoryLabel("A")) == RelationKind::Unique);
}

TEST_CASE("validation errors") {
  CHECK(kind_of([] { build_crossmap("S", "T", std::span<const LinkSpec>{}); }) ==
        ErrorKind::EmptyCrossmap);

  SUBCASE("weight sum names the source") {
    const auto e = error_of([] { build_crossmap("S", "T", {{"BLX", "BEL", 0.6}, {"BLX", "LUX", 0.5}}); });
    CHECK(e.kind() == ErrorKind::WeightSumViolation);
    CHECK(e.label() == "BLX");
    CHECK(e.info().value.value() == doctest::Approx(1.1));
  }
  SUBCASE("duplicate pair") {
    const auto e = error_of(
        [] { build_crossmap("S", "T", {{"A", "X", 0.5}, {"A", "Y", 0.5}, {"A", "X", 0.5}}); });
    CHECK(e.kind() == ErrorKind::DuplicateLink);
    CHECK(e.label() == "A");
    CHECK(e.info().link_index == 2u);
  }
  SUBCASE("explicit zero and negative weights are rejected") {
    CHECK(kind_of([] { build_crossmap("S", "T", {{"A", "X", 1.0}, {"A", "Y", 0.0}}); }) ==
          ErrorKind::WeightOutOfRange);
    CHECK(kind_of([] { build_crossmap("S", "T", {{"A", "X", 1.5}, {"A", "Y", -0.5}}); }) ==
          ErrorKind::WeightOutOfRange);
    CHECK(kind_of([] { build_crossmap("S", "T", {{"A", "X", std::nan("")}}); }) ==
          ErrorKind::WeightOutOfRange);
  }
  SUBCASE("weight above one inside the tolerance band") {
    CHECK(kind_of([] {
            build_crossmap("S", "T", {{"A", "X", 1.0000005}, {"A", "Y", 1e-7}});
          }) == ErrorKind::WeightOutOfRange);
  }
  SUBCASE("a lone weight above one breaks the sum") {
    CHECK(kind_of([] { build_crossmap("S", "T", {{"A", "X", 1.001}}); }) ==
          ErrorKind::WeightSumViolation);
  }
  SUBCASE("labels") {
    CHECK(kind_of([] { build_crossmap("S", "T", {{"", "X", 1.0}}); }) == ErrorKind::InvalidLabel);
  }
}

TEST_CASE("row sums within tolerance") {
  CHECK_NOTHROW(
      build_crossmap("S", "T", {{"A", "X", 0.333333}, {"A", "Y", 0.333333}, {"A", "Z", 0.333333}}));
  CHECK(kind_of([] {
          build_crossmap("S", "T", {{"A", "X", 0.33333}, {"A", "Y", 0.33333}, {"A", "Z", 0.33333}});
        }) == ErrorKind::WeightSumViolation);
  CHECK(kind_of([] { build_crossmap("S", "T", {{"A", "X", 0.5}, {"A", "Y", 0.499}}); }) ==
        ErrorKind::WeightSumViolation);
  // a lone link inside the tolerance band means the whole mass
  const auto c = build_crossmap("S", "T", {{"A", "X", 0.9999995}});
  CHECK(c.links()[0].weight == 1.0);
  CHECK(is_crosswalk(c));
}

TEST_CASE("validation is independent of link order") {
  std::vector<LinkSpec> links = xmap::test::country_links();
  std::reverse(links.begin(), links.end());
  const auto c = build_crossmap("S", "T", links);
  CHECK(summarize(c).n_splits == 1);
  links.push_back({"BLX", "BEL", 0.5});
  CHECK(kind_of([&] { build_crossmap("S", "T", links); }) == ErrorKind::DuplicateLink);
}

TEST_CASE("classification") {
  const auto c = country_map();
  CHECK(classify_source(c, CategoryLabel("BLX")) == RelationKind::Split);
  CHECK(classify_source(c, CategoryLabel("AUS")) == RelationKind::OneToOne);
  CHECK(kind_of([&] { classify_source(c, CategoryLabel("DEU")); }) == ErrorKind::UnknownCategory);
  CHECK(classify_target(c, CategoryLabel("DEU")) == RelationKind::Aggregate);
  CHECK(classify_target(c, CategoryLabel("LUX")) == RelationKind::Unique);
  CHECK(kind_of([&] { classify_target(c, CategoryLabel("BLX")); }) == ErrorKind::UnknownCategory);
}

TEST_CASE("summarize") {
  SUBCASE("country table") {
    const auto s = summarize(country_map());
    CHECK(s.n_sources == 4);
    CHECK(s.n_targets == 4);
    CHECK(s.n_links == 5);
    CHECK(s.n_splits == 1);
    CHECK(s.n_aggregates == 1);
    CHECK(s.max_in_degree == 2);
    CHECK_FALSE(s.is_crosswalk);
    REQUIRE(s.most_synthetic_targets.size() == 4);
    CHECK(s.most_synthetic_targets[0] == std::pair{CategoryLabel("DEU"), std::size_t{2}});
    CHECK(s.most_synthetic_targets[1].first.str() == "AUS");
    CHECK(s.most_synthetic_targets[2].first.str() == "BEL");
    CHECK(s.most_synthetic_targets[3].first.str() == "LUX");
  }
  SUBCASE("identity") {
    const auto s = summarize(build_crossmap("T", "T", {{"A", "A", 1.0}}));
    CHECK(s.n_sources == 1);
    CHECK(s.n_targets == 1);
    CHECK(s.n_links == 1);
    CHECK(s.n_splits == 0);
    CHECK(s.n_aggregates == 0);
    CHECK(s.max_in_degree == 1);
    CHECK(s.is_crosswalk);
  }
}

TEST_CASE("summary counts against a brute-force degree scan") {
  std::mt19937_64 rng(20240611);
  for (int iter = 0; iter < 300; ++iter) {
    xmap::test::GenOptions opt;
    opt.unit_only = iter % 5 == 0;
    const auto c = xmap::test::random_crossmap(rng, 12, 12, opt);
    const auto specs = xmap::test::specs_of(c);
    const auto out_deg = xmap::test::out_degrees(specs);
    const auto in_deg = xmap::test::in_degrees(specs);

    std::size_t splits = 0;
    std::size_t aggregates = 0;
    std::size_t max_in = 0;
    for (const auto& [label, d] : out_deg) {
      splits += d >= 2;
      CHECK((classify_source(c, CategoryLabel(label)) == RelationKind::Split) == (d >= 2));
    }
    for (const auto& [label, d] : in_deg) {
      aggregates += d >= 2;
      max_in = std::max(max_in, d);
    }
    const auto s = summarize(c);
    CHECK(s.n_splits == splits);
    CHECK(s.n_aggregates == aggregates);
    CHECK(s.max_in_degree == max_in);
    CHECK(s.n_links >= std::max(s.n_sources, s.n_targets));

    // three-way crosswalk equivalence
    const bool all_unit = std::all_of(specs.begin(), specs.end(), [](auto& l) { return l.weight == 1.0; });
    const bool all_degree_one =
        std::all_of(out_deg.begin(), out_deg.end(), [](auto& kv) { return kv.second == 1; });
    CHECK(s.is_crosswalk == all_unit);
    CHECK(all_unit == all_degree_one);

    // row-stochastic by direct summation
    std::map<std::string, double> sums;
    for (const auto& l : specs) sums[l.from] += l.weight;
    for (const auto& [label, sum] : sums) CHECK(std::abs(sum - 1.0) <= kWeightSumTolerance);
  }
}

TEST_SUITE_END();
