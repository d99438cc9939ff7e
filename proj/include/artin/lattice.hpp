#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "artin/errors.hpp"
#include "artin/graph.hpp"
#include "artin/spectrum.hpp"
#include "artin/star_algebra.hpp"
#include "artin/trace.hpp"

// Ideal lattice of the Toeplitz algebra.  Closed ideals correspond to
// upward-closed families of subsets of the opposite-graph component set;
// each family is named by its antichain of minimal members.  The empty
// antichain names the zero ideal, and the antichain {∅} names the whole
// algebra.  Everything here works with that combinatorial picture and leans
// on the spectrum module when a claim needs an analytic witness.

namespace artin {

// A subset of the component set, as a bitmask over component indices.
using ComponentSet = std::uint64_t;

inline ComponentSet full_component_set(const ComponentDecomposition& d) {
  return d.count() >= 64 ? ~ComponentSet(0) : (ComponentSet(1) << d.count()) - 1;
}

inline std::string component_set_name(const ComponentDecomposition& d, ComponentSet b) {
  std::string out = "{";
  for (std::size_t c = 0; c < d.count(); ++c) {
    if (!((b >> c) & 1)) continue;
    if (out.size() > 1) out += ", ";
    out += d.component_name(c);
  }
  return out + "}";
}

class LatticeIdeal {
 public:
  LatticeIdeal(ComponentDecomposition decomp, std::vector<ComponentSet> sets)
      : decomp_(std::move(decomp)) {
    const ComponentSet full = full_component_set(decomp_);
    for (ComponentSet b : sets)
      if (b & ~full) throw input_error("unknown component in ideal generator set");
    std::sort(sets.begin(), sets.end(), set_order);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    // sorted by size, so any subset of b has already been kept
    for (ComponentSet b : sets) {
      bool minimal = std::none_of(gens_.begin(), gens_.end(),
                                  [b](ComponentSet c) { return (c & ~b) == 0; });
      if (minimal) gens_.push_back(b);
    }
  }

  const ComponentDecomposition& decomposition() const { return decomp_; }
  const GraphPtr& graph() const { return decomp_.graph; }

  // Mutually incomparable component sets, sorted by size then bitmask.
  const std::vector<ComponentSet>& generators() const { return gens_; }

  bool is_zero() const { return gens_.empty(); }
  bool is_whole() const { return gens_.size() == 1 && gens_[0] == 0; }

  // Whether c belongs to the upward-closed family the antichain generates.
  bool contains(ComponentSet c) const {
    return std::any_of(gens_.begin(), gens_.end(),
                       [c](ComponentSet b) { return (b & ~c) == 0; });
  }

  friend bool operator==(const LatticeIdeal& a, const LatticeIdeal& b) {
    return same_graph(a.graph(), b.graph()) && a.gens_ == b.gens_;
  }
  friend bool operator!=(const LatticeIdeal& a, const LatticeIdeal& b) { return !(a == b); }

 private:
  static bool set_order(ComponentSet a, ComponentSet b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  }

  ComponentDecomposition decomp_;
  std::vector<ComponentSet> gens_;
};

inline std::string ideal_name(const LatticeIdeal& ideal) {
  if (ideal.is_zero()) return "0";
  std::string out = "<";
  for (ComponentSet b : ideal.generators()) {
    if (out.size() > 1) out += ", ";
    out += component_set_name(ideal.decomposition(), b);
  }
  return out + ">";
}

inline ComponentSet component_set_by_names(const ComponentDecomposition& d,
                                           const std::vector<std::string>& names) {
  ComponentSet b = 0;
  for (const auto& n : names)
    b |= ComponentSet(1) << d.component_by_name(n);
  return b;
}

inline LatticeIdeal antichain_reduce(ComponentDecomposition d, std::vector<ComponentSet> sets) {
  return LatticeIdeal(std::move(d), std::move(sets));
}

// Name-level entry point: each set is given by vertex names, a vertex
// standing for the component containing it.
inline LatticeIdeal antichain_reduce(const ComponentDecomposition& d,
                                     const std::vector<std::vector<std::string>>& named) {
  std::vector<ComponentSet> sets;
  sets.reserve(named.size());
  for (const auto& names : named) sets.push_back(component_set_by_names(d, names));
  return LatticeIdeal(d, std::move(sets));
}

inline LatticeIdeal zero_ideal(ComponentDecomposition d) {
  return LatticeIdeal(std::move(d), {});
}

inline LatticeIdeal whole_ideal(ComponentDecomposition d) {
  return LatticeIdeal(std::move(d), {0});
}

// Generated by the singleton component sets; the kernel of the boundary map.
inline LatticeIdeal boundary_ideal(ComponentDecomposition d) {
  std::vector<ComponentSet> singletons;
  for (std::size_t c = 0; c < d.count(); ++c)
    singletons.push_back(ComponentSet(1) << c);
  return LatticeIdeal(std::move(d), std::move(singletons));
}

// Generated by the full component set; contained in every nonzero ideal.
inline LatticeIdeal minimal_ideal(ComponentDecomposition d) {
  ComponentSet full = full_component_set(d);
  return LatticeIdeal(std::move(d), {full});
}

inline void require_same_lattice(const LatticeIdeal& a, const LatticeIdeal& b) {
  require_same_graph(a.graph(), b.graph());
}

inline bool ideal_leq(const LatticeIdeal& a, const LatticeIdeal& b) {
  require_same_lattice(a, b);
  return std::all_of(a.generators().begin(), a.generators().end(),
                     [&b](ComponentSet x) { return b.contains(x); });
}

inline LatticeIdeal ideal_join(const LatticeIdeal& a, const LatticeIdeal& b) {
  require_same_lattice(a, b);
  std::vector<ComponentSet> sets = a.generators();
  sets.insert(sets.end(), b.generators().begin(), b.generators().end());
  return LatticeIdeal(a.decomposition(), std::move(sets));
}

// Meets intersect the generated families, so generators combine by union.
inline LatticeIdeal ideal_meet(const LatticeIdeal& a, const LatticeIdeal& b) {
  require_same_lattice(a, b);
  std::vector<ComponentSet> sets;
  for (ComponentSet x : a.generators())
    for (ComponentSet y : b.generators()) sets.push_back(x | y);
  return LatticeIdeal(a.decomposition(), std::move(sets));
}

namespace detail {

// Upward-closed families of subsets of an n-element set, each family encoded
// as a bitmask indexed by subset.  Built one ground element at a time: a
// family over i+1 elements is a pair (without, with) of families over i
// elements with without ⊆ with.
inline std::vector<std::uint64_t> upward_closed_families(std::size_t n) {
  std::vector<std::uint64_t> fams = {0, 1};
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned block = 1u << i;
    std::vector<std::uint64_t> next;
    next.reserve(fams.size() * 2);
    for (std::uint64_t lo : fams)
      for (std::uint64_t hi : fams)
        if ((lo & hi) == lo) next.push_back(lo | (hi << block));
    fams.swap(next);
  }
  return fams;
}

}  // namespace detail

struct IdealLattice {
  std::vector<LatticeIdeal> ideals;             // ascending by family bitmask
  std::vector<std::uint64_t> closures;          // parallel: the generated families
  std::vector<std::pair<int, int>> covers;      // Hasse edges (lower, upper)

  std::size_t proper_nontrivial_quotients() const {
    return ideals.size() < 2 ? 0 : ideals.size() - 2;
  }
};

inline IdealLattice enumerate_ideals(const ComponentDecomposition& d,
                                     std::size_t max_components = 5) {
  if (max_components > 5)
    throw input_error("ideal enumeration is capped at 5 opposite-graph components");
  if (d.count() > max_components)
    throw input_error("the opposite graph has " + std::to_string(d.count()) +
                      " components, above the enumeration bound " +
                      std::to_string(max_components));
  const std::size_t n = d.count();
  auto fams = detail::upward_closed_families(n);
  std::sort(fams.begin(), fams.end());

  IdealLattice out;
  std::map<std::uint64_t, int> index;
  for (std::uint64_t f : fams) {
    index.emplace(f, static_cast<int>(out.ideals.size()));
    out.closures.push_back(f);
    std::vector<ComponentSet> mins;
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << n); ++s) {
      if (!((f >> s) & 1)) continue;
      bool minimal = true;
      if (s) {
        std::uint64_t t = (s - 1) & s;
        while (true) {
          if ((f >> t) & 1) {
            minimal = false;
            break;
          }
          if (!t) break;
          t = (t - 1) & s;
        }
      }
      if (minimal) mins.push_back(s);
    }
    out.ideals.emplace_back(d, std::move(mins));
  }

  // Removing one antichain generator from a family gives the unique family
  // covered by it, so the Hasse diagram falls out of the generator lists.
  for (int j = 0; j < static_cast<int>(out.ideals.size()); ++j)
    for (ComponentSet s : out.ideals[j].generators()) {
      auto it = index.find(out.closures[j] & ~(std::uint64_t(1) << s));
      if (it == index.end())
        throw internal_error("family below an enumerated ideal was not enumerated");
      out.covers.emplace_back(it->second, j);
    }
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

// The relation set S_B: the generators of the components in B, as
// length-one traces.
inline std::vector<Trace> basic_relation(const ComponentDecomposition& d, ComponentSet b) {
  if (b & ~full_component_set(d)) throw input_error("unknown component in relation set");
  std::vector<Trace> out;
  for (Gen v = 0; v < static_cast<Gen>(d.graph->size()); ++v)
    if ((b >> d.component_of[v]) & 1) out.push_back(Trace::from_letters(d.graph, {v}));
  return out;
}

// Product of the generators lying outside the components of B, in vertex
// order.  Tail points of this word realise the subset B on the spectrum.
inline Trace complement_word(const ComponentDecomposition& d, ComponentSet b) {
  if (b & ~full_component_set(d)) throw input_error("unknown component in relation set");
  std::vector<Gen> letters;
  for (Gen v = 0; v < static_cast<Gen>(d.graph->size()); ++v)
    if (!((b >> d.component_of[v]) & 1)) letters.push_back(v);
  return Trace::from_letters(d.graph, letters);
}

struct SeparatingWitness {
  SpectrumPoint point;
  ComponentSet subset;   // the component set the two families disagree on
  bool under_first;      // whether that set lies in the first ideal's family
  std::string explanation;
};

// A spectrum point whose satisfied basic relations tell the two ideals
// apart.  The point ω(w) with w supported off B satisfies S_C exactly when
// C ⊄ B; picking B from the symmetric difference of the families makes the
// relation sets of one ideal all hold and some relation of the other fail.
inline SeparatingWitness separating_witness(const LatticeIdeal& first,
                                            const LatticeIdeal& second) {
  require_same_lattice(first, second);
  if (first == second)
    throw input_error("the ideals coincide, so no spectrum point separates them");

  std::optional<ComponentSet> pick;
  bool under_first = true;
  for (ComponentSet b : first.generators())
    if (!second.contains(b)) {
      pick = b;
      break;
    }
  if (!pick) {
    under_first = false;
    for (ComponentSet b : second.generators())
      if (!first.contains(b)) {
        pick = b;
        break;
      }
  }
  if (!pick) throw internal_error("distinct antichains generate the same family");

  const ComponentDecomposition& d = first.decomposition();
  const Trace w = complement_word(d, *pick);
  SpectrumPoint point = SpectrumPoint::tail(w);

  auto check = [&](const LatticeIdeal& ideal) {
    for (ComponentSet c : ideal.generators()) {
      const bool expect = (c & ~*pick) != 0;  // C ⊄ B
      if (satisfies(point, basic_relation(d, c)) != expect)
        throw internal_error("separating point failed its satisfaction check");
    }
  };
  check(first);
  check(second);

  std::ostringstream ex;
  ex << "the component set " << component_set_name(d, *pick) << " lies under "
     << ideal_name(under_first ? first : second) << " but not under "
     << ideal_name(under_first ? second : first) << "; the tail point of '" << w.str()
     << "' satisfies a basic relation S_C exactly when C is not contained in "
     << component_set_name(d, *pick) << ", so it separates the two ideals";
  return {std::move(point), *pick, under_first, ex.str()};
}

// Generators and relations for a quotient of the Toeplitz algebra.  The
// graph fixes the unconditional relations: every generator is an isometry,
// adjacent generators doubly commute, and non-adjacent generators have
// orthogonal ranges.  Each extra set S_i imposes ∏_{s∈S_i}(1 − V_s V_s*) = 0,
// recorded alongside its multiplied-out form.
struct QuotientPresentation {
  GraphPtr graph;
  std::vector<std::pair<Gen, Gen>> commuting;
  std::vector<std::pair<Gen, Gen>> orthogonal;
  std::vector<ComponentSet> extra_sets;
  std::vector<std::vector<Gen>> extra;
  std::vector<AlgebraElement> expansions;
};

namespace detail {

inline QuotientPresentation base_presentation(const GraphPtr& g) {
  QuotientPresentation p{g, g->edges(), {}, {}, {}, {}};
  for (Gen u = 0; u < static_cast<Gen>(g->size()); ++u)
    for (Gen v = u + 1; v < static_cast<Gen>(g->size()); ++v)
      if (!g->adjacent(u, v)) p.orthogonal.emplace_back(u, v);
  return p;
}

inline void add_extra_relation(QuotientPresentation& p, const ComponentDecomposition& d,
                               ComponentSet b) {
  std::vector<Gen> s;
  for (Gen v = 0; v < static_cast<Gen>(d.graph->size()); ++v)
    if ((b >> d.component_of[v]) & 1) s.push_back(v);
  p.extra_sets.push_back(b);
  p.extra.push_back(std::move(s));
  p.expansions.push_back(defect(p.graph, basic_relation(d, b)));
}

inline void require_reduced(const QuotientPresentation& p) {
  for (std::size_t i = 0; i < p.extra_sets.size(); ++i)
    for (std::size_t j = 0; j < p.extra_sets.size(); ++j)
      if (i != j && (p.extra_sets[i] & ~p.extra_sets[j]) == 0)
        throw internal_error("presentation has nested extra relation sets");
}

}  // namespace detail

// Presentation of the quotient by the given ideal.  Refused when the monoid
// has a nontrivial centre: a generator commuting with everything yields a
// unitary central in every quotient, and the relation scheme above no longer
// exhausts the ideals.
inline QuotientPresentation quotient_presentation(const LatticeIdeal& ideal) {
  const ComponentDecomposition& d = ideal.decomposition();
  if (!d.isolated.empty()) {
    std::string who;
    for (Gen v : d.isolated) {
      if (!who.empty()) who += ", ";
      who += d.graph->name(v);
    }
    throw input_error("quotient presentations need a trivial centre, but " + who +
                      (d.isolated.size() == 1 ? " commutes" : " commute") +
                      " with every generator");
  }
  QuotientPresentation p = detail::base_presentation(d.graph);
  for (ComponentSet b : ideal.generators()) detail::add_extra_relation(p, d, b);
  detail::require_reduced(p);
  return p;
}

struct BoundaryReport {
  QuotientPresentation presentation;
  LatticeIdeal ideal;          // kernel of the quotient map
  bool flags_available;        // centre shown trivial, so the flags below hold
  bool purely_infinite;
  bool simple;
  std::vector<Gen> isolated;   // centre generators when the flags are withheld
  std::string justification;
};

// Smallest nonzero closed invariant quotient: one extra relation per
// opposite-graph component.  The structural flags are claimed only when the
// centre is mechanically verified to be trivial.
inline BoundaryReport boundary_quotient_report(const GraphPtr& g) {
  ComponentDecomposition d = opp_components(g);
  QuotientPresentation p = detail::base_presentation(g);
  for (std::size_t c = 0; c < d.count(); ++c)
    detail::add_extra_relation(p, d, ComponentSet(1) << c);
  LatticeIdeal ideal = boundary_ideal(d);

  const bool ok = g->size() > 0 && d.isolated.empty();
  std::string why;
  if (ok) {
    why = "every generator fails to commute with some other generator, so the "
          "centre is trivial and the boundary quotient is purely infinite and simple";
  } else if (g->size() == 0) {
    why = "the graph has no vertices and the algebra is one-dimensional; the "
          "structural flags do not apply";
  } else {
    std::string who;
    for (Gen v : d.isolated) {
      if (!who.empty()) who += ", ";
      who += g->name(v);
    }
    why = who + (d.isolated.size() == 1 ? " commutes" : " commute") +
          " with every other generator, giving a central free abelian direct "
          "factor; pure infiniteness and simplicity are not asserted";
  }
  return {std::move(p), std::move(ideal), ok, ok, ok, d.isolated, std::move(why)};
}

struct MinimalIdealReport {
  LatticeIdeal ideal;             // generated by the full component set
  std::vector<Gen> lower_bounds;  // the generator set, a finite set of lower bounds
  AlgebraElement defect;          // its defect projection, which generates the ideal
  bool coincides_with_boundary;   // true exactly when the opposite graph is connected
  std::string note;
};

inline MinimalIdealReport minimal_ideal_report(const GraphPtr& g) {
  ComponentDecomposition d = opp_components(g);
  const ComponentSet full = full_component_set(d);
  std::vector<Gen> all(g->size());
  for (Gen v = 0; v < static_cast<Gen>(g->size()); ++v) all[v] = v;
  AlgebraElement f = defect(g, basic_relation(d, full));
  const bool coincide = d.count() == 1;
  std::string note =
      g->size() == 0
          ? "the algebra is one-dimensional and has no nonzero proper ideals"
          : "generated by the defect projection of the full generator set; every "
            "nonzero ideal contains it, and it is isomorphic to the algebra of "
            "compact operators";
  return {minimal_ideal(std::move(d)), std::move(all), std::move(f), coincide,
          std::move(note)};
}

}  // namespace artin
