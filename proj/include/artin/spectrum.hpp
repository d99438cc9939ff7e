#pragma once

// Decidable models of points in the diagonal's spectrum.  A tail point
// omega(w) is the set of group elements below some power of w; translates
// t*omega are defined exactly when t^-1 lies in the point.  Membership,
// relation satisfaction, and the four-tier classifier below are all exact
// decisions, each backed by a terminating residual iteration or a finite
// automaton search.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "artin/automata.hpp"
#include "artin/errors.hpp"
#include "artin/graph.hpp"
#include "artin/group_word.hpp"
#include "artin/trace.hpp"

namespace artin {

// Least positive element above g in the left divisibility order on the
// group, when one exists.  Any positive p with g*p positive must cancel
// every inverse letter of g, so a minimal one has exactly that many
// letters, and minimality forces uniqueness; searching that length settles
// existence.
inline std::optional<Trace> least_positive_above(const GroupWord& g) {
  if (g.is_positive()) return g.to_trace();
  const std::size_t n = g.negative_count();
  std::optional<Trace> found;
  for (const Trace& p : enumerate_traces(g.graph(), n)) {
    if (p.length() != n) continue;
    GroupWord gp = group_multiply(g, GroupWord::from_trace(p));
    if (!gp.is_positive()) continue;
    if (found) throw internal_error("least positive element above a group word is not unique");
    found = gp.to_trace();
  }
  return found;
}

// Least upper bound of two group elements, when one exists.
inline std::optional<GroupWord> join_in_group(const GroupWord& g, const GroupWord& h) {
  auto p = least_positive_above(group_multiply(group_invert(g), h));
  if (!p) return std::nullopt;
  return group_multiply(g, GroupWord::from_trace(*p));
}

namespace detail {

// Does r divide some power of w?  The residual sequence (w^j)\r has
// non-increasing length, so it reaches the identity, dies, or revisits a
// value and cycles; all three outcomes are detected.
inline bool divides_some_power(const Trace& w, Trace r) {
  std::set<std::vector<Gen>> seen;
  while (true) {
    if (r.length() == 0) return true;
    if (!seen.insert(r.word()).second) return false;
    std::optional<Trace> next = residual(w, r);
    if (!next) return false;
    r = std::move(*next);
  }
}

}  // namespace detail

class SpectrumPoint {
 public:
  static SpectrumPoint tail(Trace w) {
    GroupWord e = group_identity(w.graph());
    return SpectrumPoint(std::move(e), std::move(w));
  }

  // t * p, defined only when t^-1 is a member of p.  Nested translates
  // collapse into a single shift over the base tail.
  static SpectrumPoint translate(const GroupWord& t, const SpectrumPoint& p) {
    require_same_graph(t.graph(), p.graph());
    if (!member(p, group_invert(t)))
      throw input_error("translate is undefined: the shift's inverse is not a member");
    return SpectrumPoint(group_multiply(t, p.shift_), p.base_);
  }

  bool is_tail() const { return shift_.is_identity(); }
  const GroupWord& shift() const { return shift_; }
  const Trace& tail_word() const { return base_; }
  const GraphPtr& graph() const { return base_.graph(); }

  // g is in t*omega(w) iff t^-1 g is below some power of w; the latter
  // holds iff the least positive element above t^-1 g exists and divides
  // a power.
  friend bool member(const SpectrumPoint& p, const GroupWord& g) {
    require_same_graph(p.graph(), g.graph());
    GroupWord rel = group_multiply(group_invert(p.shift_), g);
    std::optional<Trace> u = least_positive_above(rel);
    if (!u) return false;
    return detail::divides_some_power(p.base_, *u);
  }

 private:
  SpectrumPoint(GroupWord shift, Trace base) : shift_(std::move(shift)), base_(std::move(base)) {}

  GroupWord shift_;
  Trace base_;
};

// Only omega(e) has a maximal element (namely e, shifted along with the
// point); any longer tail keeps growing past every member.
inline bool has_maximal_element(const SpectrumPoint& p) { return p.tail_word().length() == 0; }

// Exact decision of "every member g of the point admits h in the relation
// set with g*h still a member".  Members of omega(w) are w^k q^-1 with q
// positive, which reduces the condition to: for every q there are h and m
// with h <= q w^m.  The product automaton over the relation set tracks the
// residuals q\h; a tuple is bad iff no coordinate divides a power of w
// from there.  Translates inherit the verdict from their base tail.
inline bool satisfies(const SpectrumPoint& p, const std::vector<Trace>& relation) {
  for (const Trace& h : relation) require_same_graph(p.graph(), h.graph());
  if (relation.empty()) return false;
  const Trace& w = p.tail_word();
  const GraphPtr& g = p.graph();
  const int n = static_cast<int>(g->size());
  ProductAutomaton prod(g, relation);

  std::map<std::vector<Gen>, bool> memo;
  auto divides_power_from = [&](const ResidualAutomaton& a, StateId s) {
    if (a.is_sink(s)) return false;
    Trace cur = *a.residual_at(s);
    std::vector<std::vector<Gen>> trail;
    std::set<std::vector<Gen>> on_path;
    bool verdict;
    while (true) {
      if (auto hit = memo.find(cur.word()); hit != memo.end()) {
        verdict = hit->second;
        break;
      }
      if (cur.length() == 0) {
        verdict = true;
        break;
      }
      if (!on_path.insert(cur.word()).second) {
        verdict = false;  // cycled without reaching the identity
        break;
      }
      trail.push_back(cur.word());
      std::optional<Trace> next = residual(w, cur);
      if (!next) {
        verdict = false;
        break;
      }
      cur = std::move(*next);
    }
    for (auto& r : trail) memo.emplace(std::move(r), verdict);
    return verdict;
  };

  std::vector<char> seen;
  auto first_visit = [&seen](StateId s) {
    if (static_cast<std::size_t>(s) >= seen.size()) seen.resize(s + 1, 0);
    if (seen[s]) return false;
    seen[s] = 1;
    return true;
  };

  std::deque<StateId> queue{prod.start()};
  first_visit(prod.start());
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    bool covered = false;
    for (std::size_t i = 0; i < prod.arity() && !covered; ++i)
      covered = divides_power_from(prod.component(i), prod.tuple(s)[i]);
    if (!covered) return false;
    for (Gen a = 0; a < n; ++a) {
      StateId t = prod.step(s, a);
      if (first_visit(t)) queue.push_back(t);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

enum class RelationClass { kUnsatisfiable, kBoundary, kEssential, kTrivial };

inline const char* to_string(RelationClass c) {
  switch (c) {
    case RelationClass::kUnsatisfiable: return "unsatisfiable";
    case RelationClass::kBoundary: return "boundary";
    case RelationClass::kEssential: return "essential";
    case RelationClass::kTrivial: return "trivial";
  }
  return "unsatisfiable";
}

struct Classification {
  RelationClass tier;
  EssentialCertificate essential;
  BoundaryCertificate boundary;
};

// Finest applicable tier: trivial (identity member) implies a finite
// survivor set, which in turn rules out annihilators; the empty set is
// unsatisfiable by convention.
inline Classification classify_relation(const GraphPtr& g, const std::vector<Trace>& relation) {
  for (const Trace& h : relation) require_same_graph(g, h.graph());
  EssentialCertificate ess = is_essential_relation(g, relation);
  BoundaryCertificate bnd = is_boundary_relation(g, relation);
  RelationClass tier;
  if (relation.empty()) {
    tier = RelationClass::kUnsatisfiable;
  } else {
    if (ess.in_class && !bnd.in_class)
      throw internal_error("finite survivor set coexists with an annihilator");
    bool has_identity = false;
    for (const Trace& h : relation) has_identity = has_identity || h.length() == 0;
    if (has_identity)
      tier = RelationClass::kTrivial;
    else if (ess.in_class)
      tier = RelationClass::kEssential;
    else if (bnd.in_class)
      tier = RelationClass::kBoundary;
    else
      tier = RelationClass::kUnsatisfiable;
  }
  return {tier, std::move(ess), std::move(bnd)};
}

}  // namespace artin
