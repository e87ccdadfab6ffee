#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "popmatch/matching.hpp"
#include "popmatch/profile.hpp"
#include "test_util.hpp"

using namespace popmatch;
using testutil::make_profile;

namespace {

// Independent enumeration oracle: recursive, set-based, no shared code with
// the library's backtracking enumerator.
void oracle_enumerate(const PreferenceProfile& p, PersonId a, std::set<ItemId>& used,
                      std::vector<ItemId>& picks, std::vector<Matching>& out) {
  if (a == p.n) {
    out.push_back(Matching{picks});
    return;
  }
  for (const ItemId b : p.list(a)) {
    if (used.count(b)) continue;
    used.insert(b);
    picks.push_back(b);
    oracle_enumerate(p, a + 1, used, picks, out);
    picks.pop_back();
    used.erase(b);
  }
  picks.push_back(LastResort::id(p, a));
  oracle_enumerate(p, a + 1, used, picks, out);
  picks.pop_back();
}

std::vector<Matching> oracle_all_matchings(const PreferenceProfile& p) {
  std::set<ItemId> used;
  std::vector<ItemId> picks;
  std::vector<Matching> out;
  oracle_enumerate(p, 0, used, picks, out);
  return out;
}

}  // namespace

TEST_CASE("phi basics") {
  const auto p = make_profile(2, {{0, 1}, {0, 1}});
  const Matching m{{0, 1}};
  const Matching m2{{1, 0}};
  CHECK(phi(m, m, p) == 0);
  CHECK(phi(m, m2, p) == 1);
  CHECK(phi(m2, m, p) == 1);
  CHECK(compare(m, m2, p) == Comparison::ties);
  CHECK(compare(m, m, p) == Comparison::ties);

  const auto q = make_profile(1, {{0}});
  const Matching real{{0}};
  const Matching resort{{LastResort::id(q, 0)}};
  CHECK(phi(real, resort, q) == 1);
  CHECK(phi(resort, real, q) == 0);
  CHECK(compare(real, resort, q) == Comparison::wins);
  CHECK(compare(resort, real, q) == Comparison::loses);
}

TEST_CASE("phi rejects invalid matchings") {
  const auto p = make_profile(3, {{0, 1}, {0, 1}});
  CHECK_THROWS_AS(phi(Matching{{0, 0}}, Matching{{0, 1}}, p), std::invalid_argument);
  CHECK_THROWS_AS(phi(Matching{{2, 1}}, Matching{{0, 1}}, p), std::invalid_argument);  // unlisted
  CHECK_THROWS_AS(phi(Matching{{0}}, Matching{{0, 1}}, p), std::invalid_argument);     // size
  // Foreign last resort: person 0 taking person 1's sentinel.
  CHECK_THROWS_AS(phi(Matching{{LastResort::id(p, 1), 1}}, Matching{{0, 1}}, p),
                  std::invalid_argument);
}

TEST_CASE("enumeration counts match the oracle") {
  const auto one = make_profile(1, {{0}});
  CHECK(enumerate_matchings(one).size() == 2);

  const auto contested = make_profile(2, {{0}, {0}});
  CHECK(enumerate_matchings(contested).size() == 3);

  const auto pair = make_profile(2, {{0, 1}, {0, 1}});
  CHECK(enumerate_matchings(pair).size() == 7);

  for (const auto* profile : {&one, &contested, &pair}) {
    const auto got = enumerate_matchings(*profile);
    const auto expected = oracle_all_matchings(*profile);
    REQUIRE(got.size() == expected.size());
    std::set<std::vector<ItemId>> got_set;
    std::set<std::vector<ItemId>> expected_set;
    for (const auto& m : got) {
      CHECK(!validate_matching(m, *profile).has_value());
      got_set.insert(m.assignment);
    }
    for (const auto& m : expected) expected_set.insert(m.assignment);
    CHECK(got_set == expected_set);           // same matchings
    CHECK(got_set.size() == got.size());      // each exactly once
  }
}

TEST_CASE("enumerator streams the same sequence as the materialized list") {
  const auto p = make_profile(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto all = enumerate_matchings(p);
  MatchingEnumerator stream(p);
  std::size_t i = 0;
  while (auto m = stream.next()) {
    REQUIRE(i < all.size());
    CHECK(m->assignment == all[i].assignment);
    ++i;
  }
  CHECK(i == all.size());
}

TEST_CASE("enumeration cap refuses with a required estimate") {
  const auto p = generate_incomplete(30, 40, 3, 5);  // 4^30 >> 1e6
  try {
    enumerate_matchings(p);
    FAIL("expected EnumerationCapExceeded");
  } catch (const EnumerationCapExceeded& e) {
    CHECK(e.required > kDefaultEnumerationCap);
    CHECK(e.cap == kDefaultEnumerationCap);
  }
  CHECK_THROWS_AS(exists_popular_bruteforce(p), EnumerationCapExceeded);
  CHECK(enumeration_bound(p) > kDefaultEnumerationCap);
}

TEST_CASE("popularity of tiny instances") {
  const auto one = make_profile(1, {{0}});
  CHECK(is_popular_bruteforce(Matching{{0}}, one));
  CHECK(!is_popular_bruteforce(Matching{{LastResort::id(one, 0)}}, one));
  REQUIRE(exists_popular_bruteforce(one).has_value());
  CHECK(exists_popular_bruteforce(one)->assignment == std::vector<ItemId>{0});
}

TEST_CASE("three identical complete lists: nothing is popular") {
  const auto p = make_profile(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  for (const auto& m : enumerate_matchings(p)) CHECK(!is_popular_bruteforce(m, p));
  CHECK(!exists_popular_bruteforce(p).has_value());
}

TEST_CASE("two people sharing a complete 2-list have a popular matching") {
  const auto p = make_profile(2, {{0, 1}, {0, 1}});
  const auto witness = exists_popular_bruteforce(p);
  REQUIRE(witness.has_value());
  std::set<ItemId> assigned(witness->assignment.begin(), witness->assignment.end());
  CHECK(assigned == std::set<ItemId>{0, 1});
}

TEST_CASE("antisymmetry and the phi sum bound on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = generate_incomplete(3, 4, 2, seed);
    const auto all = enumerate_matchings(p);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        const auto forward = compare(all[i], all[j], p);
        const auto backward = compare(all[j], all[i], p);
        if (forward == Comparison::wins) CHECK(backward == Comparison::loses);
        if (forward == Comparison::loses) CHECK(backward == Comparison::wins);
        if (forward == Comparison::ties) CHECK(backward == Comparison::ties);
        CHECK(phi(all[i], all[j], p) + phi(all[j], all[i], p) <= p.n);
      }
    }
  }
}

TEST_CASE("witness is the first popular matching in enumeration order") {
  const auto p = make_profile(3, {{0}, {1}, {2}});
  const auto witness = exists_popular_bruteforce(p);
  REQUIRE(witness.has_value());
  CHECK(witness->assignment == std::vector<ItemId>{0, 1, 2});
}
