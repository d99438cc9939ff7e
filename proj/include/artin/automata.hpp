#pragma once

// Finite-state machinery over residuals.  For a fixed target x the states
// are the residuals u\x of words read so far, together with an absorbing
// sink for "no common upper bound"; the composition law (u s)\x = s\(u\x)
// makes the letter-by-letter transition well defined, and the residual
// letters always form a sub-multiset of x, so the reachable part is finite.
//
// Products of these automata decide the two relation classes:
//   * a relation set H admits an annihilating word iff the all-sink tuple
//     is reachable in the product over all generators;
//   * the elements avoiding every x*P for x in H form a finite set iff the
//     product restricted to normal-form extensions, kept within states
//     where no coordinate has accepted, is acyclic.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "artin/errors.hpp"
#include "artin/graph.hpp"
#include "artin/trace.hpp"

namespace artin {

using StateId = int;

class ResidualAutomaton {
 public:
  static constexpr StateId sink = 0;

  explicit ResidualAutomaton(const Trace& target) : g_(target.graph()) {
    const int n = static_cast<int>(g_->size());
    states_.push_back(nullptr);  // sink
    trans_.emplace_back(n, sink);
    start_ = intern(target.word());
    for (StateId s = start_; s < static_cast<StateId>(states_.size()); ++s) {
      for (Gen a = 0; a < n; ++a) {
        StateId t = letter_step(*states_[s], a);  // may grow trans_, so two steps
        trans_[s][a] = t;
      }
    }
    accept_ = intern({});  // reading the target itself always reaches it
  }

  StateId start() const { return start_; }
  StateId accept() const { return accept_; }
  bool is_sink(StateId s) const { return s == sink; }
  bool is_accept(StateId s) const { return s == accept_; }
  std::size_t state_count() const { return states_.size(); }

  // The residual labelling a state; nullopt at the sink.
  std::optional<Trace> residual_at(StateId s) const {
    if (s == sink) return std::nullopt;
    return Trace::from_normal_word(g_, *states_[s]);
  }

  StateId step(StateId s, Gen a) const { return trans_[s][a]; }

  StateId run(std::span<const Gen> word) const {
    StateId s = start_;
    for (Gen a : word) s = trans_[s][a];
    return s;
  }

  StateId run(const Trace& z) const { return run(z.word()); }

  const GraphPtr& graph() const { return g_; }

 private:
  // Two residuals are the same state iff their normal forms agree; states_
  // points at the interning map's keys (nullptr at the sink).
  StateId intern(std::span<const Gen> rep) {
    std::vector<Gen> nf = detail::normalize(*g_, rep);
    auto [it, fresh] = index_.try_emplace(std::move(nf), static_cast<StateId>(states_.size()));
    if (fresh) {
      states_.push_back(&it->first);
      trans_.emplace_back(g_->size(), sink);
    }
    return it->second;
  }

  StateId letter_step(const std::vector<Gen>& r, Gen a) {
    std::vector<Gen> next = r;
    if (detail::strip_first(*g_, next, a)) return intern(next);
    for (Gen s : r)
      if (!g_->adjacent(a, s)) return sink;
    return intern(r);  // a commutes with all of r: residual unchanged
  }

  GraphPtr g_;
  std::map<std::vector<Gen>, StateId> index_;
  std::vector<const std::vector<Gen>*> states_;
  std::vector<std::vector<StateId>> trans_;
  StateId start_ = sink, accept_ = sink;
};

// Reading any representative of z from x's automaton lands in the sink
// exactly when x and z have no common upper bound.
inline bool is_annihilated(const Trace& x, const Trace& z) {
  require_same_graph(x.graph(), z.graph());
  ResidualAutomaton a(x);
  return a.is_sink(a.run(z));
}

// ---------------------------------------------------------------------------

// Recognizer for the normal-form language.  One mask of currently blocked
// letters is the whole state: reading t blocks s iff t commutes with s and
// s was blocked already or s < t.
class NormalFormDFA {
 public:
  using State = std::uint64_t;

  explicit NormalFormDFA(GraphPtr g) : g_(std::move(g)) {}

  State start() const { return normal_start(); }
  bool readable(State s, Gen t) const { return !((s >> t) & 1u); }
  State step(State s, Gen t) const { return normal_step(*g_, s, t); }

  bool accepts(std::span<const Gen> word) const {
    State s = start();
    for (Gen t : word) {
      if (!readable(s, t)) return false;
      s = step(s, t);
    }
    return true;
  }

  const GraphPtr& graph() const { return g_; }

 private:
  GraphPtr g_;
};

// Recognizer for { normal forms of words with x as a left divisor }:
// residual automaton and normal-form mask run in lockstep.
class DivisibilityDFA {
 public:
  explicit DivisibilityDFA(const Trace& x) : residuals_(x), nf_(x.graph()) {}

  struct State {
    StateId residual;
    NormalFormDFA::State blocked;
  };

  State start() const { return {residuals_.start(), nf_.start()}; }

  std::optional<State> step(State s, Gen t) const {
    if (!nf_.readable(s.blocked, t)) return std::nullopt;  // leaves the language
    return State{residuals_.step(s.residual, t), nf_.step(s.blocked, t)};
  }

  bool accepting(const State& s) const { return residuals_.is_accept(s.residual); }

  bool accepts(std::span<const Gen> word) const {
    State s = start();
    for (Gen t : word) {
      auto next = step(s, t);
      if (!next) return false;
      s = *next;
    }
    return accepting(s);
  }

  bool accepts(const Trace& z) const { return accepts(std::span<const Gen>(z.word())); }

  const ResidualAutomaton& residuals() const { return residuals_; }

 private:
  ResidualAutomaton residuals_;
  NormalFormDFA nf_;
};

inline DivisibilityDFA divisibility_language_dfa(const Trace& x) { return DivisibilityDFA(x); }

// ---------------------------------------------------------------------------

// Product of the residual automata of a finite relation set, explored on
// demand; tuple states are interned in discovery order.
class ProductAutomaton {
 public:
  ProductAutomaton(GraphPtr g, const std::vector<Trace>& targets) : g_(std::move(g)) {
    components_.reserve(targets.size());
    for (const Trace& t : targets) {
      require_same_graph(g_, t.graph());
      components_.emplace_back(t);
    }
    std::vector<StateId> init(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i) init[i] = components_[i].start();
    start_ = intern(std::move(init));
  }

  StateId start() const { return start_; }
  std::size_t explored() const { return tuples_.size(); }
  std::size_t arity() const { return components_.size(); }
  const ResidualAutomaton& component(std::size_t i) const { return components_[i]; }
  const std::vector<StateId>& tuple(StateId s) const { return tuples_[s]; }
  const GraphPtr& graph() const { return g_; }

  StateId step(StateId s, Gen a) {
    std::vector<StateId> next(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i)
      next[i] = components_[i].step(tuples_[s][i], a);
    return intern(std::move(next));
  }

  bool all_sink(StateId s) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (!components_[i].is_sink(tuples_[s][i])) return false;
    return true;
  }

  bool any_accept(StateId s) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
      if (components_[i].is_accept(tuples_[s][i])) return true;
    return false;
  }

 private:
  StateId intern(std::vector<StateId> tup) {
    auto [it, fresh] = index_.try_emplace(std::move(tup), static_cast<StateId>(tuples_.size()));
    if (fresh) tuples_.push_back(it->first);
    return it->second;
  }

  GraphPtr g_;
  std::vector<ResidualAutomaton> components_;
  std::map<std::vector<StateId>, StateId> index_;
  std::deque<std::vector<StateId>> tuples_;  // deque keeps tuple() references stable
  StateId start_;
};

// ---------------------------------------------------------------------------

// Decides whether some single word is annihilated by every member of the
// relation set, i.e. whether the all-sink tuple is reachable.  in_class
// means no such word exists; otherwise witness carries a shortest one,
// re-verified against the order structure before being returned.
struct BoundaryCertificate {
  bool in_class;
  std::optional<Trace> witness;
  std::size_t states_explored;
};

inline BoundaryCertificate is_boundary_relation(GraphPtr g, const std::vector<Trace>& relation) {
  ProductAutomaton prod(g, relation);
  const int n = static_cast<int>(g->size());

  std::vector<char> seen;
  auto first_visit = [&seen](StateId s) {
    if (static_cast<std::size_t>(s) >= seen.size()) seen.resize(s + 1, 0);
    if (seen[s]) return false;
    seen[s] = 1;
    return true;
  };

  std::map<StateId, std::pair<StateId, Gen>> parent;
  std::optional<StateId> hit;
  std::deque<StateId> queue;
  first_visit(prod.start());
  if (prod.all_sink(prod.start())) {
    hit = prod.start();
  } else {
    queue.push_back(prod.start());
  }
  while (!queue.empty() && !hit) {
    StateId s = queue.front();
    queue.pop_front();
    for (Gen a = 0; a < n; ++a) {
      StateId t = prod.step(s, a);
      if (!first_visit(t)) continue;
      parent.emplace(t, std::make_pair(s, a));
      if (prod.all_sink(t)) {
        hit = t;
        break;
      }
      queue.push_back(t);
    }
  }

  if (!hit) return {true, std::nullopt, prod.explored()};

  std::vector<Gen> letters;
  for (StateId s = *hit; s != prod.start();) {
    auto [p, a] = parent.at(s);
    letters.push_back(a);
    s = p;
  }
  std::reverse(letters.begin(), letters.end());
  Trace z = Trace::from_letters(g, letters);
  for (const Trace& x : relation) {
    if (join(x, z)) throw internal_error("annihilator witness has a common bound with a member");
  }
  return {false, std::move(z), prod.explored()};
}

// ---------------------------------------------------------------------------

// Decides finiteness of the survivor set: the elements having no member of
// the relation set as a left divisor.  The product automaton is run along
// normal-form extensions only and restricted to states where no coordinate
// has accepted; the survivors are then exactly the path labels from the
// start, so the set is finite iff that subgraph is acyclic.  Finite verdicts
// list the survivors, infinite ones carry words (base, pump) with every
// base*pump^k a survivor.
struct EssentialCertificate {
  bool in_class;
  std::vector<Trace> survivors;
  std::optional<std::pair<Trace, Trace>> chain;
  std::size_t states_explored;
};

inline EssentialCertificate is_essential_relation(GraphPtr g, const std::vector<Trace>& relation) {
  ProductAutomaton prod(g, relation);
  NormalFormDFA nf(g);
  const int n = static_cast<int>(g->size());

  auto survives = [&](const Trace& t) {
    return std::none_of(relation.begin(), relation.end(),
                        [&](const Trace& x) { return left_divides(x, t); });
  };

  using Node = std::pair<StateId, NormalFormDFA::State>;
  std::map<Node, int> ids;
  std::vector<Node> nodes;
  std::vector<std::vector<std::pair<Gen, int>>> out;
  auto intern = [&](Node v) {
    auto [it, fresh] = ids.try_emplace(v, static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back(v);
      out.emplace_back();
    }
    return it->second;
  };

  auto finish = [&](EssentialCertificate cert) {
    cert.states_explored = nodes.size();
    return cert;
  };

  if (prod.any_accept(prod.start())) {
    // Some member is the identity: it divides everything, nothing survives.
    return finish({true, {}, std::nullopt, 0});
  }

  intern({prod.start(), nf.start()});
  for (int v = 0; v < static_cast<int>(nodes.size()); ++v) {
    auto [ps, mask] = nodes[v];
    for (Gen a = 0; a < n; ++a) {
      if (!nf.readable(mask, a)) continue;
      StateId pt = prod.step(ps, a);
      if (prod.any_accept(pt)) continue;  // divisible from here on: not a survivor
      int w = intern({pt, nf.step(mask, a)});  // may grow `out`, so two steps
      out[v].emplace_back(a, w);
    }
  }

  // Depth-first path enumeration from the root: an edge back onto the
  // current stack gives the pumping pair; otherwise nodes are re-expanded
  // once per path reaching them and every path label is collected.
  std::vector<char> on_stack(nodes.size(), 0);
  std::vector<std::size_t> edge_pos(nodes.size(), 0);
  std::vector<int> stack{0};
  std::vector<Gen> path;
  std::vector<Trace> survivors;
  on_stack[0] = 1;
  survivors.push_back(Trace::from_normal_word(g, {}));
  while (!stack.empty()) {
    int v = stack.back();
    if (edge_pos[v] == out[v].size()) {
      on_stack[v] = 0;
      edge_pos[v] = 0;
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    auto [a, w] = out[v][edge_pos[v]++];
    if (on_stack[w]) {
      // Cycle: path holds root -> v, the cycle is the stack segment at w.
      auto at = std::find(stack.begin(), stack.end(), w);
      std::size_t cut = static_cast<std::size_t>(at - stack.begin());
      std::vector<Gen> base(path.begin(), path.begin() + cut);
      std::vector<Gen> pump(path.begin() + cut, path.end());
      pump.push_back(a);
      Trace tb = Trace::from_normal_word(g, base);
      Trace tp = Trace::from_letters(g, pump);
      if (tp.length() == 0) throw internal_error("empty pumping word on a cycle");
      Trace probe = tb;
      for (int k = 0; k < 2; ++k) {
        probe = multiply(probe, tp);
        if (!survives(probe)) throw internal_error("pumped word lost survivor status");
      }
      return finish({false, {}, std::make_pair(std::move(tb), std::move(tp)), 0});
    }
    on_stack[w] = 1;
    stack.push_back(w);
    path.push_back(a);
    survivors.push_back(Trace::from_normal_word(g, path));
  }

  std::sort(survivors.begin(), survivors.end());
  for (const Trace& s : survivors) {
    if (!survives(s)) throw internal_error("collected survivor is divisible by a member");
  }
  return finish({true, std::move(survivors), std::nullopt, 0});
}

}  // namespace artin
