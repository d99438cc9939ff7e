#include "artin/spectrum.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "artin/graph.hpp"
#include "artin/group_word.hpp"
#include "artin/trace.hpp"
#include "helpers.hpp"

using namespace artin;

namespace {

Trace power(const Trace& w, int k) {
  Trace out = Trace::from_normal_word(w.graph(), {});
  for (int i = 0; i < k; ++i) out = multiply(out, w);
  return out;
}

GroupWord random_group_word(std::mt19937& rng, const GraphPtr& g, std::size_t len) {
  std::vector<GLetter> letters(len);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(g->size()) - 1);
  std::bernoulli_distribution flip(0.5);
  for (auto& l : letters) l = {pick(rng), flip(rng)};
  return GroupWord::from_letters(g, std::move(letters));
}

std::vector<Trace> parse_all(const GraphPtr& g, std::initializer_list<const char*> words) {
  std::vector<Trace> out;
  for (const char* w : words) out.push_back(Trace::parse(g, w));
  return out;
}

}  // namespace

TEST_CASE("least positive element above a group word", "[spectrum]") {
  auto free2 = testutil::free2();
  auto z2 = testutil::z2();
  auto path4 = testutil::path4();

  auto least = [](const GraphPtr& g, const char* w) {
    return least_positive_above(GroupWord::parse(g, w));
  };

  CHECK(least(free2, "a b")->str() == "a b");
  CHECK(least(free2, "1")->str() == "1");
  CHECK(least(free2, "a b^-1")->str() == "a");
  CHECK(least(free2, "a^-1 b^-1")->str() == "1");  // inverse of b a
  CHECK(least(z2, "a^-1 b")->str() == "b");
  CHECK_FALSE(least(path4, "b^-1 a d").has_value());
  CHECK_FALSE(least(free2, "a b^-1 a").has_value());
}

TEST_CASE("least positive element is the minimum of all positive bounds", "[spectrum]") {
  // For |g| <= 4 any positive element above g has a least one of length at
  // most 4, so scanning that ball decides existence both ways.
  std::mt19937 rng(41002);
  for (const auto& g : testutil::standard_graphs()) {
    auto ball = enumerate_traces(g, 4);
    for (int trial = 0; trial < 25; ++trial) {
      GroupWord w = random_group_word(rng, g, 1 + rng() % 4);
      if (w.length() > 4) continue;
      auto u = least_positive_above(w);
      GroupWord winv = group_invert(w);
      bool any = false;
      for (const Trace& x : ball) {
        bool above = group_multiply(winv, GroupWord::from_trace(x)).is_positive();
        any = any || above;
        if (above && u) CHECK(left_divides(*u, x));
        if (above) CHECK(u.has_value());
      }
      CHECK(u.has_value() == any);
      if (u) CHECK(group_multiply(winv, GroupWord::from_trace(*u)).is_positive());
    }
  }
}

TEST_CASE("group joins extend monoid joins", "[spectrum]") {
  std::mt19937 rng(8717);
  for (const auto& g : testutil::standard_graphs()) {
    for (int trial = 0; trial < 40; ++trial) {
      Trace x = testutil::random_trace(rng, g, 3);
      Trace y = testutil::random_trace(rng, g, 3);
      auto monoid = join(x, y);
      auto group = join_in_group(GroupWord::from_trace(x), GroupWord::from_trace(y));
      CHECK(monoid.has_value() == group.has_value());
      if (monoid && group) CHECK(same_element(*group, GroupWord::from_trace(*monoid)));
    }
    for (int trial = 0; trial < 40; ++trial) {
      GroupWord a = random_group_word(rng, g, rng() % 4);
      GroupWord b = random_group_word(rng, g, rng() % 4);
      auto ab = join_in_group(a, b);
      auto ba = join_in_group(b, a);
      CHECK(ab.has_value() == ba.has_value());
      if (ab && ba) {
        CHECK(same_element(*ab, *ba));
        CHECK(group_multiply(group_invert(a), *ab).is_positive());
        CHECK(group_multiply(group_invert(b), *ab).is_positive());
      }
    }
  }
}

TEST_CASE("tail membership on pinned points", "[spectrum]") {
  auto free2 = testutil::free2();
  auto z2 = testutil::z2();

  SECTION("the identity tail is the set of inverses of positives") {
    auto p = SpectrumPoint::tail(Trace::parse(free2, "1"));
    CHECK(member(p, GroupWord::parse(free2, "a^-1")));
    CHECK(member(p, GroupWord::parse(free2, "a^-1 b^-1")));
    CHECK_FALSE(member(p, GroupWord::parse(free2, "a")));
    CHECK_FALSE(member(p, GroupWord::parse(free2, "a b^-1")));
    CHECK(member(p, GroupWord::parse(free2, "1")));
  }

  SECTION("tail of a free product word") {
    auto p = SpectrumPoint::tail(Trace::parse(free2, "a b"));
    CHECK(member(p, GroupWord::parse(free2, "a")));
    CHECK_FALSE(member(p, GroupWord::parse(free2, "b")));
    CHECK(member(p, GroupWord::parse(free2, "a b a b")));
    CHECK(member(p, GroupWord::parse(free2, "a b a")));
    CHECK_FALSE(member(p, GroupWord::parse(free2, "b a")));
    CHECK(member(p, GroupWord::parse(free2, "a b b^-1")));  // reduces to a
  }

  SECTION("tail of a commuting generator") {
    auto p = SpectrumPoint::tail(Trace::parse(z2, "a"));
    CHECK(member(p, GroupWord::parse(z2, "a a a")));
    CHECK_FALSE(member(p, GroupWord::parse(z2, "b")));
    CHECK(member(p, GroupWord::parse(z2, "a a b^-1")));
  }
}

TEST_CASE("tail membership matches a bounded group-arithmetic search", "[spectrum]") {
  // Membership g <= w^k settles within length(g)+1 residual rounds when it
  // holds at all, so a 12-power horizon is generous at these sizes.
  std::mt19937 rng(90210);
  for (const auto& g : testutil::standard_graphs()) {
    for (int trial = 0; trial < 50; ++trial) {
      Trace w = testutil::random_trace(rng, g, 3);
      GroupWord x = random_group_word(rng, g, rng() % 5);
      auto p = SpectrumPoint::tail(w);
      bool direct = false;
      GroupWord pw = group_identity(g);
      for (int k = 0; k <= 12 && !direct; ++k) {
        direct = group_multiply(group_invert(x), pw).is_positive();
        pw = group_multiply(pw, GroupWord::from_trace(w));
      }
      CHECK(member(p, x) == direct);
    }
  }
}

TEST_CASE("points are hereditary and directed on samples", "[spectrum]") {
  std::mt19937 rng(5883);
  for (const auto& g : testutil::standard_graphs()) {
    for (int trial = 0; trial < 10; ++trial) {
      Trace w = testutil::random_trace(rng, g, 3);
      auto p = SpectrumPoint::tail(w);
      for (int s = 0; s < 8; ++s) {
        int k = static_cast<int>(rng() % 3);
        GroupWord m1 = group_multiply(GroupWord::from_trace(power(w, k)),
                                      group_invert(GroupWord::from_trace(testutil::random_trace(rng, g, 3))));
        GroupWord m2 = group_multiply(GroupWord::from_trace(power(w, static_cast<int>(rng() % 3))),
                                      group_invert(GroupWord::from_trace(testutil::random_trace(rng, g, 3))));
        REQUIRE(member(p, m1));
        REQUIRE(member(p, m2));
        // heredity: dropping further below a member stays inside
        GroupWord below = group_multiply(m1, group_invert(GroupWord::from_trace(testutil::random_trace(rng, g, 2))));
        CHECK(member(p, below));
        // directedness: two members always join inside the point
        auto j = join_in_group(m1, m2);
        REQUIRE(j.has_value());
        CHECK(member(p, *j));
      }
    }
  }
}

TEST_CASE("maximal element dichotomy", "[spectrum]") {
  auto free2 = testutil::free2();
  CHECK(has_maximal_element(SpectrumPoint::tail(Trace::parse(free2, "1"))));
  CHECK_FALSE(has_maximal_element(SpectrumPoint::tail(Trace::parse(free2, "a"))));
  CHECK_FALSE(has_maximal_element(SpectrumPoint::tail(Trace::parse(free2, "a b"))));
  auto shifted = SpectrumPoint::translate(GroupWord::parse(free2, "a"),
                                          SpectrumPoint::tail(Trace::parse(free2, "1")));
  CHECK(has_maximal_element(shifted));
}

TEST_CASE("translates shift membership", "[spectrum]") {
  auto free2 = testutil::free2();
  auto omega_e = SpectrumPoint::tail(Trace::parse(free2, "1"));

  SECTION("translation by a positive generator") {
    auto q = SpectrumPoint::translate(GroupWord::parse(free2, "a"), omega_e);
    CHECK(member(q, GroupWord::parse(free2, "a")));
    CHECK(member(q, GroupWord::parse(free2, "1")));
    CHECK_FALSE(member(q, GroupWord::parse(free2, "b")));
    CHECK_FALSE(member(q, GroupWord::parse(free2, "a b")));
    CHECK(member(q, GroupWord::parse(free2, "a b^-1")));
    CHECK_FALSE(q.is_tail());
  }

  SECTION("identity translation is a fixed point") {
    auto q = SpectrumPoint::translate(group_identity(free2), omega_e);
    CHECK(q.is_tail());
    std::mt19937 rng(333);
    for (int i = 0; i < 30; ++i) {
      GroupWord g = random_group_word(rng, free2, rng() % 4);
      CHECK(member(q, g) == member(omega_e, g));
    }
  }

  SECTION("translating back recovers the base point") {
    auto q = SpectrumPoint::translate(GroupWord::parse(free2, "a"), omega_e);
    auto r = SpectrumPoint::translate(GroupWord::parse(free2, "a^-1"), q);
    CHECK(r.is_tail());
    std::mt19937 rng(334);
    for (int i = 0; i < 30; ++i) {
      GroupWord g = random_group_word(rng, free2, rng() % 4);
      CHECK(member(r, g) == member(omega_e, g));
    }
  }

  SECTION("shifts compose by group multiplication") {
    auto p = SpectrumPoint::tail(Trace::parse(free2, "a b"));
    auto q = SpectrumPoint::translate(GroupWord::parse(free2, "a"), p);
    auto r = SpectrumPoint::translate(GroupWord::parse(free2, "a b"), q);
    CHECK(same_element(r.shift(), GroupWord::parse(free2, "a b a")));
    CHECK(r.tail_word() == p.tail_word());
    CHECK_FALSE(r.is_tail());
  }

  SECTION("translates outside the domain are rejected") {
    CHECK_THROWS_AS(SpectrumPoint::translate(GroupWord::parse(free2, "a^-1"), omega_e),
                    input_error);
    auto p = SpectrumPoint::tail(Trace::parse(free2, "a b"));
    CHECK_THROWS_AS(SpectrumPoint::translate(GroupWord::parse(free2, "b^-1"), p), input_error);
  }
}

TEST_CASE("relation satisfaction on pinned points", "[spectrum]") {
  auto free2 = testutil::free2();
  auto k22 = testutil::k22();

  SECTION("a full tail satisfies the generator relation") {
    auto p = SpectrumPoint::tail(Trace::parse(free2, "a b"));
    CHECK(satisfies(p, parse_all(free2, {"a", "b"})));
  }

  SECTION("the identity tail satisfies only identity-bearing sets") {
    auto p = SpectrumPoint::tail(Trace::parse(free2, "1"));
    CHECK_FALSE(satisfies(p, parse_all(free2, {"a"})));
    CHECK_FALSE(satisfies(p, parse_all(free2, {"a", "b"})));
    CHECK(satisfies(p, parse_all(free2, {"1"})));
    CHECK(satisfies(p, parse_all(free2, {"1", "a"})));
  }

  SECTION("bipartite separating behaviour") {
    auto p = SpectrumPoint::tail(Trace::parse(k22, "b1 b2"));
    CHECK(satisfies(p, parse_all(k22, {"b1", "b2"})));
    CHECK_FALSE(satisfies(p, parse_all(k22, {"a1", "a2"})));
  }

  SECTION("empty relation sets are never satisfied") {
    CHECK_FALSE(satisfies(SpectrumPoint::tail(Trace::parse(free2, "a b")), {}));
  }

  SECTION("translates answer through their base tail") {
    auto p = SpectrumPoint::tail(Trace::parse(free2, "a b"));
    auto q = SpectrumPoint::translate(GroupWord::parse(free2, "a"), p);
    CHECK(satisfies(q, parse_all(free2, {"a", "b"})) == satisfies(p, parse_all(free2, {"a", "b"})));
    CHECK(satisfies(q, parse_all(free2, {"b"})) == satisfies(p, parse_all(free2, {"b"})));
  }
}

TEST_CASE("relation satisfaction agrees with the sampled defining condition", "[spectrum]") {
  std::mt19937 rng(77170);
  for (const auto& g : testutil::standard_graphs()) {
    for (int trial = 0; trial < 8; ++trial) {
      Trace w = testutil::random_trace(rng, g, 2);
      std::vector<Trace> relation;
      int members = 1 + static_cast<int>(rng() % 2);
      for (int i = 0; i < members; ++i) relation.push_back(testutil::random_trace(rng, g, 2));
      auto p = SpectrumPoint::tail(w);
      bool verdict = satisfies(p, relation);

      // Every member of the point is w^k q^-1, so quantify over bounded q.
      bool sampled = true;
      for (const Trace& q : enumerate_traces(g, 3)) {
        GroupWord t = group_invert(GroupWord::from_trace(q));
        bool covered = false;
        for (const Trace& h : relation)
          covered = covered || member(p, group_multiply(t, GroupWord::from_trace(h)));
        sampled = sampled && covered;
        if (!sampled) break;
      }
      if (verdict) CHECK(sampled);
      if (!sampled) CHECK_FALSE(verdict);
    }
  }
}

TEST_CASE("classifier on pinned relation sets", "[spectrum]") {
  auto free2 = testutil::free2();
  auto z2 = testutil::z2();
  auto k22 = testutil::k22();
  auto path4 = testutil::path4();

  auto tier = [](const GraphPtr& g, std::initializer_list<const char*> words) {
    return classify_relation(g, parse_all(g, words)).tier;
  };

  CHECK(tier(free2, {"a", "b"}) == RelationClass::kEssential);
  CHECK(tier(free2, {"a"}) == RelationClass::kUnsatisfiable);
  CHECK(tier(free2, {"1", "a"}) == RelationClass::kTrivial);
  CHECK(tier(z2, {"a"}) == RelationClass::kBoundary);
  CHECK(tier(z2, {"a", "b"}) == RelationClass::kEssential);
  CHECK(tier(k22, {"a1", "a2"}) == RelationClass::kBoundary);
  CHECK(tier(path4, {"b"}) == RelationClass::kUnsatisfiable);
  CHECK(classify_relation(free2, {}).tier == RelationClass::kUnsatisfiable);

  auto cls = classify_relation(free2, parse_all(free2, {"a"}));
  CHECK_FALSE(cls.boundary.in_class);
  REQUIRE(cls.boundary.witness.has_value());
  CHECK(cls.boundary.witness->str() == "b");

  CHECK(std::string(to_string(RelationClass::kEssential)) == "essential");
  CHECK(std::string(to_string(RelationClass::kUnsatisfiable)) == "unsatisfiable");
}

TEST_CASE("classifier hierarchy and certificates on random sets", "[spectrum]") {
  std::mt19937 rng(60110);
  for (const auto& g : testutil::standard_graphs()) {
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<Trace> relation;
      int members = static_cast<int>(rng() % 4);
      for (int i = 0; i < members; ++i) relation.push_back(testutil::random_trace(rng, g, 2));
      auto cls = classify_relation(g, relation);
      if (cls.essential.in_class && !relation.empty()) CHECK(cls.boundary.in_class);
      switch (cls.tier) {
        case RelationClass::kTrivial:
          CHECK(std::any_of(relation.begin(), relation.end(),
                            [](const Trace& t) { return t.length() == 0; }));
          CHECK(cls.essential.in_class);
          break;
        case RelationClass::kEssential:
          CHECK(cls.essential.in_class);
          CHECK(cls.boundary.in_class);
          break;
        case RelationClass::kBoundary:
          CHECK(cls.boundary.in_class);
          CHECK_FALSE(cls.essential.in_class);
          break;
        case RelationClass::kUnsatisfiable:
          if (!relation.empty()) {
            CHECK_FALSE(cls.boundary.in_class);
            REQUIRE(cls.boundary.witness.has_value());
            for (const Trace& x : relation) CHECK_FALSE(join(x, *cls.boundary.witness).has_value());
          }
          break;
      }
    }
  }
}

TEST_CASE("satisfaction separates the classifier tiers on tails", "[spectrum]") {
  // A satisfiable relation set holds on every sufficiently full tail, an
  // unsatisfiable one fails on the tail of its annihilator.
  auto free2 = testutil::free2();
  auto fullp = SpectrumPoint::tail(Trace::parse(free2, "a b"));
  CHECK(satisfies(fullp, parse_all(free2, {"a", "b"})));

  auto cls = classify_relation(free2, parse_all(free2, {"a"}));
  REQUIRE(cls.boundary.witness.has_value());
  auto dead = SpectrumPoint::tail(*cls.boundary.witness);
  CHECK_FALSE(satisfies(dead, parse_all(free2, {"a"})));
}
