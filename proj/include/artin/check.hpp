#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "artin/automata.hpp"
#include "artin/errors.hpp"
#include "artin/graph.hpp"
#include "artin/group_word.hpp"
#include "artin/lattice.hpp"
#include "artin/spectrum.hpp"
#include "artin/star_algebra.hpp"
#include "artin/trace.hpp"

// Self-contained invariant suites for the `verify` subcommand.  Each suite
// sweeps a bounded, deterministic portion of the monoid and records the
// first counterexample it meets.  The bounds grow with the depth argument;
// depth 3 keeps the whole run comfortably under a minute on a small graph.

namespace artin {

struct CheckOutcome {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;  // first failure, empty when passed
};

namespace detail {

class Checker {
 public:
  explicit Checker(std::string name) { out_.name = std::move(name); }

  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++out_.cases;
    if (!ok && out_.passed) {
      out_.passed = false;
      out_.counterexample = describe();
    }
  }

  void skip_note(std::string note) {
    if (out_.passed && out_.cases == 0) out_.counterexample = std::move(note);
  }

  CheckOutcome take() { return std::move(out_); }

 private:
  CheckOutcome out_;
};

inline std::vector<std::vector<Gen>> all_letter_words(const GraphPtr& g, int len) {
  std::vector<std::vector<Gen>> out{{}};
  const int n = static_cast<int>(g->size());
  std::size_t prev_start = 0;
  for (int l = 0; l < len && n > 0; ++l) {
    const std::size_t end = out.size();
    for (std::size_t i = prev_start; i < end; ++i)
      for (Gen a = 0; a < n; ++a) {
        std::vector<Gen> w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    prev_start = end;
  }
  return out;
}

}  // namespace detail

inline CheckOutcome check_graph(const GraphPtr& g) {
  detail::Checker c("graph structure");
  const PresentationGraph opp = g->opposite();
  c.expect(opp.opposite() == *g, [] { return std::string("opposite is not an involution"); });
  ComponentDecomposition d = opp_components(g);
  std::vector<int> seen(g->size(), 0);
  for (const auto& comp : d.components)
    for (Gen v : comp) ++seen[static_cast<std::size_t>(v)];
  c.expect(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }),
           [] { return std::string("components do not partition the vertex set"); });
  for (Gen v = 0; v < static_cast<Gen>(g->size()); ++v) {
    const bool central =
        std::find(d.isolated.begin(), d.isolated.end(), v) != d.isolated.end();
    c.expect(central == (opp.neighbours(v) == 0),
             [&] { return "centre detection disagrees at " + g->name(v); });
  }
  return c.take();
}

inline CheckOutcome check_normal_forms(const GraphPtr& g, int depth) {
  detail::Checker c("normal forms");
  for (const auto& w : detail::all_letter_words(g, depth)) {
    Trace t = Trace::from_letters(g, w);
    c.expect(Trace::from_letters(g, t.word()) == t, [&] {
      return "normalization is not idempotent on '" + t.str() + "'";
    });
    // swapping one adjacent commuting pair must not change the element
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == w[i + 1] || !g->adjacent(w[i], w[i + 1])) continue;
      std::vector<Gen> swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      c.expect(Trace::from_letters(g, swapped) == t, [&] {
        return "commuting swap changed the trace of '" + t.str() + "'";
      });
    }
  }
  return c.take();
}

inline CheckOutcome check_monoid_laws(const GraphPtr& g, int depth) {
  detail::Checker c("monoid laws");
  const Trace e = identity(g);
  const std::vector<Trace> small = enumerate_traces(g, std::min(depth, 2));
  const std::vector<Trace> all = enumerate_traces(g, depth);
  for (const Trace& x : all) {
    c.expect(multiply(x, e) == x && multiply(e, x) == x,
             [&] { return "identity law fails at '" + x.str() + "'"; });
    c.expect(multiply(x, e).length() == x.length(),
             [&] { return "length drift at '" + x.str() + "'"; });
  }
  for (const Trace& x : small)
    for (const Trace& y : small)
      for (const Trace& z : small)
        c.expect(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)), [&] {
          return "associativity fails at '" + x.str() + "', '" + y.str() + "', '" +
                 z.str() + "'";
        });
  return c.take();
}

inline CheckOutcome check_divisibility(const GraphPtr& g, int depth) {
  detail::Checker c("divisibility and residuals");
  const std::vector<Trace> all = enumerate_traces(g, depth);
  for (const Trace& x : all)
    for (const Trace& y : all) {
      const Trace xy = multiply(x, y);
      c.expect(left_divides(x, xy),
               [&] { return "'" + x.str() + "' should divide '" + xy.str() + "'"; });
      c.expect(left_quotient(x, xy) == y, [&] {
        return "quotient of '" + xy.str() + "' by '" + x.str() + "' is wrong";
      });
      const bool div = left_divides(x, y);
      const auto q = left_quotient(x, y);
      c.expect(div == q.has_value(),
               [&] { return "divides and quotient disagree on '" + x.str() + "', '" +
                            y.str() + "'"; });
      if (q)
        c.expect(multiply(x, *q) == y, [&] {
          return "quotient does not reassemble '" + y.str() + "'";
        });
    }
  return c.take();
}

inline CheckOutcome check_joins(const GraphPtr& g, int depth) {
  detail::Checker c("joins");
  const std::vector<Trace> all = enumerate_traces(g, depth);
  const std::vector<Trace> bounds = enumerate_traces(g, 2 * depth);
  for (const Trace& x : all)
    for (const Trace& y : all) {
      const auto j = join(x, y);
      const auto ji = join(y, x);
      c.expect(j == ji,
               [&] { return "join is asymmetric on '" + x.str() + "', '" + y.str() + "'"; });
      if (j) {
        c.expect(left_divides(x, *j) && left_divides(y, *j), [&] {
          return "join '" + j->str() + "' is not an upper bound of '" + x.str() +
                 "', '" + y.str() + "'";
        });
        const auto r = residual(x, y);
        c.expect(r && multiply(x, *r) == *j, [&] {
          return "residual law fails on '" + x.str() + "', '" + y.str() + "'";
        });
      }
      // every common upper bound within reach must be above the join,
      // and a failed join must admit none at all
      for (const Trace& z : bounds) {
        if (!left_divides(x, z) || !left_divides(y, z)) continue;
        c.expect(j.has_value() && left_divides(*j, z), [&] {
          return "upper bound '" + z.str() + "' of '" + x.str() + "', '" + y.str() +
                 "' escapes the join";
        });
      }
    }
  return c.take();
}

inline CheckOutcome check_residual_automata(const GraphPtr& g, int depth) {
  detail::Checker c("residual automata");
  const std::vector<Trace> all = enumerate_traces(g, depth);
  for (const Trace& x : all) {
    ResidualAutomaton aut(x);
    for (const Trace& y : all) {
      const StateId s = aut.run(y);
      const auto r = residual(y, x);
      c.expect(aut.is_sink(s) == !r.has_value(), [&] {
        return "automaton for '" + x.str() + "' disagrees with residual on '" + y.str() +
               "'";
      });
      if (r)
        c.expect(aut.residual_at(s) == r, [&] {
          return "automaton state for '" + x.str() + "' run on '" + y.str() +
                 "' holds the wrong residual";
        });
      c.expect(aut.is_accept(s) == left_divides(x, y), [&] {
        return "acceptance of '" + y.str() + "' disagrees with divisibility by '" +
               x.str() + "'";
      });
    }
  }
  return c.take();
}

inline CheckOutcome check_relation_certificates(const GraphPtr& g, int depth) {
  detail::Checker c("relation certificates");
  std::vector<Trace> pool = enumerate_traces(g, 2);
  if (pool.size() > 9) pool.erase(pool.begin() + 9, pool.end());  // identity plus the first eight
  std::vector<std::vector<Trace>> relations;
  relations.push_back({});
  for (std::size_t i = 1; i < pool.size(); ++i) relations.push_back({pool[i]});
  for (std::size_t i = 1; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      relations.push_back({pool[i], pool[j]});

  const std::vector<Trace> scan = enumerate_traces(g, depth + 2);
  for (const auto& h : relations) {
    const BoundaryCertificate b = is_boundary_relation(g, h);
    if (!h.empty()) {
      if (b.in_class) {
        for (const Trace& z : scan) {
          const bool annihilates = std::all_of(h.begin(), h.end(), [&](const Trace& x) {
            return !join(x, z).has_value();
          });
          c.expect(!annihilates, [&] {
            return "'" + z.str() + "' annihilates a relation judged annihilator-free";
          });
        }
      } else {
        c.expect(b.witness.has_value(),
                 [] { return std::string("missing annihilator witness"); });
        if (b.witness)
          for (const Trace& x : h)
            c.expect(!join(x, *b.witness).has_value(), [&] {
              return "claimed annihilator '" + b.witness->str() + "' joins with '" +
                     x.str() + "'";
            });
      }
    }

    const EssentialCertificate ecert = is_essential_relation(g, h);
    auto survives = [&](const Trace& t) {
      return std::none_of(h.begin(), h.end(),
                          [&](const Trace& x) { return left_divides(x, t); });
    };
    if (ecert.in_class) {
      std::vector<Trace> direct;
      for (const Trace& t : scan)
        if (survives(t)) direct.push_back(t);
      std::vector<Trace> reported = ecert.survivors;
      std::sort(reported.begin(), reported.end());
      std::sort(direct.begin(), direct.end());
      c.expect(reported == direct, [&] {
        return "survivor set disagrees with the direct filter for a finite relation";
      });
    } else if (ecert.chain) {
      Trace t = ecert.chain->first;
      for (int k = 0; k < 3; ++k) {
        c.expect(survives(t), [&] {
          return "pumped word '" + t.str() + "' does not survive its relation";
        });
        t = multiply(t, ecert.chain->second);
      }
    }
  }
  return c.take();
}

inline CheckOutcome check_spectrum(const GraphPtr& g, int depth) {
  detail::Checker c("spectrum points");
  std::vector<Trace> pool = enumerate_traces(g, 2);
  if (pool.size() > 7) pool.erase(pool.begin() + 7, pool.end());
  const std::vector<Trace> qs = enumerate_traces(g, std::min(depth, 2));

  for (const Trace& w : pool) {
    const SpectrumPoint p = SpectrumPoint::tail(w);

    // members of the form w^k q^{-1} generate the tail by construction
    for (const Trace& q : qs)
      for (int k = 0; k <= 2; ++k) {
        Trace power = identity(g);
        for (int i = 0; i < k; ++i) power = multiply(power, w);
        const GroupWord m = group_multiply(GroupWord::from_trace(power),
                                           group_invert(GroupWord::from_trace(q)));
        c.expect(member(p, m), [&] {
          return "tail of '" + w.str() + "' misses its defining member '" + m.str() + "'";
        });
      }

    // hereditary: positive divisors of members are members
    for (const Trace& q : qs) {
      if (!member(p, GroupWord::from_trace(q))) continue;
      for (const Trace& x : qs)
        if (left_divides(x, q))
          c.expect(member(p, GroupWord::from_trace(x)), [&] {
            return "tail of '" + w.str() + "' is not hereditary at '" + x.str() + "'";
          });
    }

    // directed: members admit a common upper bound inside the point
    for (const Trace& x : qs)
      for (const Trace& y : qs) {
        const GroupWord gx = GroupWord::from_trace(x), gy = GroupWord::from_trace(y);
        if (!member(p, gx) || !member(p, gy)) continue;
        const auto ub = join_in_group(gx, gy);
        c.expect(ub.has_value() && member(p, *ub), [&] {
          return "members '" + x.str() + "', '" + y.str() + "' of the tail of '" +
                 w.str() + "' have no common member bound";
        });
      }

    // translating by a member and back is the identity
    for (const Trace& x : qs) {
      const GroupWord t = group_invert(GroupWord::from_trace(x));
      if (!member(p, group_invert(t))) continue;
      const SpectrumPoint moved = SpectrumPoint::translate(t, p);
      const SpectrumPoint back = SpectrumPoint::translate(group_invert(t), moved);
      for (const Trace& q : qs)
        c.expect(member(back, GroupWord::from_trace(q)) ==
                     member(p, GroupWord::from_trace(q)),
                 [&] {
                   return "translate round trip changed the tail of '" + w.str() + "'";
                 });
    }
  }
  return c.take();
}

inline CheckOutcome check_algebra(const GraphPtr& g, int depth) {
  detail::Checker c("algebra identities");
  const std::vector<Trace> all = enumerate_traces(g, std::min(depth, 3));

  for (const Trace& x : all)
    for (const Trace& y : all) {
      const AlgebraElement prod = AlgebraElement::range_projection(x) *
                                  AlgebraElement::range_projection(y);
      const auto j = join(x, y);
      const AlgebraElement expect =
          j ? AlgebraElement::range_projection(*j) : AlgebraElement::zero(g);
      c.expect(prod == expect, [&] {
        return "range projections of '" + x.str() + "', '" + y.str() +
               "' do not multiply to their join";
      });
    }

  // a deterministic element mixing diagonal and off-diagonal terms
  std::vector<Trace> pool = enumerate_traces(g, 2);
  if (pool.size() > 6) pool.erase(pool.begin() + 6, pool.end());
  AlgebraElement mixed = AlgebraElement::zero(g);
  int k = 1;
  for (const Trace& x : pool)
    for (const Trace& y : pool) {
      mixed += AlgebraElement::monomial(Monomial(x, y), Rational(((k % 5) - 2), 1 + k % 3));
      ++k;
    }
  const AlgebraElement once = expectation_phi(mixed);
  c.expect(expectation_phi(once) == once,
           [] { return std::string("diagonal expectation is not idempotent"); });
  const AlgebraElement graded = expectation_grading(mixed);
  c.expect(expectation_grading(graded) == graded,
           [] { return std::string("graded expectation is not idempotent"); });
  c.expect(expectation_phi(graded) == once,
           [] { return std::string("expectations do not compose"); });
  c.expect(adjoint(adjoint(mixed)) == mixed,
           [] { return std::string("adjoint is not an involution"); });

  // defect expansions agree with the product form on the component sets
  ComponentDecomposition d = opp_components(g);
  std::vector<std::vector<Trace>> sets;
  for (std::size_t i = 0; i < d.count(); ++i)
    sets.push_back(basic_relation(d, ComponentSet(1) << i));
  sets.push_back(atoms(g));
  for (const auto& h : sets)
    c.expect(defect(g, h) == defect_by_product(g, h),
             [] { return std::string("defect expansion routes disagree"); });
  return c.take();
}

inline CheckOutcome check_controlled_map(const GraphPtr& g, int depth) {
  detail::Checker c("controlled map");
  const std::vector<Trace> all = enumerate_traces(g, depth);

  // homomorphism, order preservation, and the length grading behind (C1)
  for (const Trace& x : all) {
    c.expect(abelianize(multiply(x, x)) == add(abelianize(x), abelianize(x)),
             [&] { return "abelianization is not additive at '" + x.str() + "'"; });
    for (const Trace& y : all) {
      c.expect(abelianize(multiply(x, y)) == add(abelianize(x), abelianize(y)),
               [&] { return "abelianization is not additive on '" + x.str() + "', '" +
                            y.str() + "'"; });
      if (left_divides(x, y))
        c.expect(leq(abelianize(x), abelianize(y)), [&] {
          return "order is not preserved on '" + x.str() + "' <= '" + y.str() + "'";
        });
    }
  }

  // (C1) fibers are finite: the image determines the length, so each fiber
  // sits inside one finite sphere
  std::map<std::vector<long long>, std::vector<const Trace*>> fibers;
  for (const Trace& x : all) fibers[abelianize(x).counts].push_back(&x);
  for (const auto& [img, members] : fibers)
    for (const Trace* m : members)
      c.expect(m->length() == members.front()->length(), [&] {
        return "fiber over a common image mixes lengths at '" + m->str() + "'";
      });

  // (C3) only the identity maps to zero
  for (const Trace& x : all) {
    const AbelianVector img = abelianize(x);
    const bool zero = std::all_of(img.counts.begin(), img.counts.end(),
                                  [](long long v) { return v == 0; });
    c.expect(zero == (x.length() == 0),
             [&] { return "nontrivial kernel element '" + x.str() + "'"; });
  }

  // (C2), (C4), (C5) on all pairs with a finite join
  for (const Trace& x : all)
    for (const Trace& y : all) {
      const auto j = join(x, y);
      if (!j) continue;
      c.expect(abelianize(*j) == componentwise_max(abelianize(x), abelianize(y)),
               [&] { return "join image mismatch on '" + x.str() + "', '" + y.str() +
                            "'"; });
      if (leq(abelianize(x), abelianize(y)))
        c.expect(left_divides(x, y), [&] {
          return "image order does not lift to divisibility on '" + x.str() + "', '" +
                 y.str() + "'";
        });
      if (abelianize(x) == abelianize(y))
        c.expect(x == y, [&] {
          return "joinable pair '" + x.str() + "', '" + y.str() +
                 "' shares an image without being equal";
        });
    }
  return c.take();
}

inline CheckOutcome check_lattice(const GraphPtr& g) {
  detail::Checker c("ideal lattice");
  ComponentDecomposition d = opp_components(g);
  if (d.count() > 3) {
    c.skip_note("skipped: more than 3 opposite-graph components");
    return c.take();
  }
  IdealLattice lat = enumerate_ideals(d);
  const int m = static_cast<int>(lat.ideals.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const bool sub = (lat.closures[i] & ~lat.closures[j]) == 0;
      c.expect(ideal_leq(lat.ideals[i], lat.ideals[j]) == sub, [&] {
        return "ideal order disagrees with family containment at " +
               ideal_name(lat.ideals[i]) + ", " + ideal_name(lat.ideals[j]);
      });
      if (i < j) {
        const SeparatingWitness w = separating_witness(lat.ideals[i], lat.ideals[j]);
        c.expect(lat.ideals[i].contains(w.subset) != lat.ideals[j].contains(w.subset),
                 [&] {
                   return "separating subset fails to separate " +
                          ideal_name(lat.ideals[i]) + ", " + ideal_name(lat.ideals[j]);
                 });
      }
    }

  // tail points cut out exactly the expected basic relations
  for (ComponentSet b = 0; b < (ComponentSet(1) << d.count()); ++b) {
    const SpectrumPoint p = SpectrumPoint::tail(complement_word(d, b));
    for (ComponentSet s = 0; s < (ComponentSet(1) << d.count()); ++s)
      c.expect(satisfies(p, basic_relation(d, s)) == ((s & ~b) != 0), [&] {
        return "tail point of " + component_set_name(d, b) +
               " satisfies the wrong basic relations";
      });
  }
  return c.take();
}

inline std::vector<CheckOutcome> run_all_checks(const GraphPtr& g, int depth) {
  if (depth < 1 || depth > 6)
    throw input_error("verify depth must be between 1 and 6");
  std::vector<CheckOutcome> out;
  out.push_back(check_graph(g));
  out.push_back(check_normal_forms(g, depth));
  out.push_back(check_monoid_laws(g, depth));
  out.push_back(check_divisibility(g, depth));
  out.push_back(check_joins(g, depth));
  out.push_back(check_residual_automata(g, depth));
  out.push_back(check_relation_certificates(g, depth));
  out.push_back(check_spectrum(g, depth));
  out.push_back(check_algebra(g, depth));
  out.push_back(check_controlled_map(g, depth));
  out.push_back(check_lattice(g));
  return out;
}

}  // namespace artin
