#include <doctest.h>

#include <stdexcept>

#include "fixtures.hpp"
#include "nner/core.hpp"
#include "nner/oracle.hpp"

using namespace nner;

TEST_CASE("is_inside matches the containment definition") {
  CHECK(is_inside(1, 2, 0, 2));
  CHECK_FALSE(is_inside(0, 2, 0, 2));
  CHECK(is_inside(0, 1, 0, 2));
  CHECK_FALSE(is_inside(1, 3, 0, 2));
  CHECK(is_inside(5, 6, 4, 6));
}

TEST_CASE("is_inside is irreflexive, antisymmetric and transitive") {
  const int n = 8;
  std::vector<std::pair<int, int>> spans;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) spans.emplace_back(i, j);

  for (auto a : spans) {
    CHECK_FALSE(is_inside(a.first, a.second, a.first, a.second));
    for (auto b : spans) {
      if (is_inside(a.first, a.second, b.first, b.second))
        CHECK_FALSE(is_inside(b.first, b.second, a.first, a.second));
      for (auto c : spans) {
        if (is_inside(a.first, a.second, b.first, b.second) &&
            is_inside(b.first, b.second, c.first, c.second))
          CHECK(is_inside(a.first, a.second, c.first, c.second));
      }
    }
  }
}

TEST_CASE("validate_analysis per search space") {
  const auto s2 = tests::example_sentence(2);
  CHECK(validate_analysis(s2.gold, s2.n, SearchSpace::Nested).valid);
  CHECK(validate_analysis(s2.gold, s2.n, SearchSpace::RestrictedNested).valid);
  CHECK_FALSE(validate_analysis(s2.gold, s2.n, SearchSpace::NonNested).valid);

  // identical spans with different labels are invalid everywhere
  const Analysis same_span({{0, 0, 2}, {1, 0, 2}});
  for (auto space :
       {SearchSpace::NonNested, SearchSpace::Nested, SearchSpace::RestrictedNested}) {
    const auto report = validate_analysis(same_span, 2, space);
    CHECK_FALSE(report.valid);
    CHECK(report.overlap_violations.size() == 1);
  }

  // two non-unary children of (0,4)
  const Analysis two_wide({{0, 0, 4}, {0, 0, 2}, {0, 2, 4}});
  CHECK(validate_analysis(two_wide, 4, SearchSpace::Nested).valid);
  const auto report = validate_analysis(two_wide, 4, SearchSpace::RestrictedNested);
  CHECK_FALSE(report.valid);
  REQUIRE(report.child_violations.size() == 1);
  CHECK(report.child_violations[0] == Mention{0, 0, 4});

  CHECK_THROWS_AS(validate_analysis(Analysis({{0, 2, 9}}), 8, SearchSpace::Nested),
                  std::out_of_range);
  CHECK_THROWS_AS(validate_analysis(Analysis({{0, 3, 3}}), 8, SearchSpace::Nested),
                  std::out_of_range);
}

TEST_CASE("search spaces are nested within each other") {
  for (int n = 0; n <= 4; ++n) {
    for (const Analysis& a : enumerate_analyses(SearchSpace::RestrictedNested, n, 2))
      CHECK(validate_analysis(a, n, SearchSpace::Nested).valid);
    for (const Analysis& a : enumerate_analyses(SearchSpace::NonNested, n, 2)) {
      CHECK(validate_analysis(a, n, SearchSpace::Nested).valid);
      CHECK(validate_analysis(a, n, SearchSpace::RestrictedNested).valid);
    }
  }
}

TEST_CASE("children_of finds direct children only") {
  const auto s2 = tests::example_sentence(2);
  const auto c2 = children_of(Mention{0, 2, 8}, s2.gold);
  CHECK(c2 == std::vector<Mention>{{0, 2, 3}, {0, 5, 6}});

  const auto s4 = tests::example_sentence(4);
  const auto c4 = children_of(Mention{0, 2, 6}, s4.gold);
  CHECK(c4 == std::vector<Mention>{{1, 4, 6}});  // not the inner (1,5,6)

  const Analysis solo({{0, 1, 3}});
  CHECK(children_of(Mention{0, 1, 3}, solo).empty());

  CHECK_THROWS_AS(children_of(Mention{0, 0, 8}, s4.gold), std::invalid_argument);
}

TEST_CASE("children partition the strict interior") {
  for (int n = 2; n <= 4; ++n) {
    for (const Analysis& a : enumerate_analyses(SearchSpace::Nested, n, 1)) {
      for (const Mention& m : a) {
        const auto children = children_of(m, a);
        for (const Mention& x : a) {
          if (x == m || !is_inside(x, m)) continue;
          int containers = 0;
          bool is_child = false;
          for (const Mention& c : children) {
            if (c == x) is_child = true;
            if (is_inside(x, c)) ++containers;
          }
          CHECK((is_child ? containers == 0 : containers == 1));
        }
      }
    }
  }
}

TEST_CASE("analyses are canonically sorted and deduplicated") {
  const Analysis a({{1, 2, 4}, {0, 0, 1}, {1, 2, 4}, {0, 2, 4}});
  REQUIRE(a.size() == 3);
  CHECK(a.mentions()[0] == Mention{0, 0, 1});
  CHECK(a.mentions()[1] == Mention{0, 2, 4});
  CHECK(a.mentions()[2] == Mention{1, 2, 4});
  CHECK(a.contains(Mention{1, 2, 4}));
  CHECK_FALSE(a.contains(Mention{1, 0, 1}));

  // the empty sentence admits exactly the empty analysis
  CHECK(validate_analysis(Analysis{}, 0, SearchSpace::Nested).valid);
}

TEST_CASE("label sets reject duplicates, empties and item markers") {
  CHECK_THROWS_AS(LabelSet({"PER", "PER"}), std::invalid_argument);
  CHECK_THROWS_AS(LabelSet({""}), std::invalid_argument);
  CHECK_THROWS_AS(LabelSet({"→"}), std::invalid_argument);
  CHECK_THROWS_AS(LabelSet({"↦"}), std::invalid_argument);
  CHECK_THROWS_AS(LabelSet({"↔"}), std::invalid_argument);
  CHECK_THROWS_AS(LabelSet({"↤"}), std::invalid_argument);
  const LabelSet ok({"PER", "GPE"});
  CHECK(ok.find("GPE") == 1);
  CHECK_FALSE(ok.find("ORG").has_value());
}
