#pragma once

// Elements of the right-angled Artin monoid presented by a graph.  Each
// element is stored as its lexicographically least representative word, so
// word equality is element equality.  A word is in normal form when no pair
// of positions i < j has w[j] < w[i] with w[j] commuting with all of
// w[i..j-1]; equivalently, no letter can be commuted left past greater
// letters to produce a smaller word.
//
// Left divisibility x <= y (meaning y = x u for some positive u) makes the
// monoid quasi-lattice ordered: two elements with any common upper bound
// have a least one.  join() returns that least upper bound, or nullopt when
// none exists; residual(y, x) returns y^{-1}(y v x) under the same
// convention.  Callers that want the "defaults to the identity" flavour of
// the residual apply it at the call site.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "artin/errors.hpp"
#include "artin/graph.hpp"

namespace artin {

namespace detail {

// Insert t into the normal word w.  t may legally sit at any position whose
// whole suffix commutes with it; among those the lexicographically best spot
// is the leftmost one directly before a greater letter.  Note the scan must
// continue past smaller commuting letters: in the path graph a-b-c-d the
// word "ca" followed by b normalizes to "bca", with b passing both c and a.
inline void normal_insert(const PresentationGraph& g, std::vector<Gen>& w, Gen t) {
  std::size_t best = w.size();
  for (std::size_t p = w.size(); p-- > 0;) {
    if (!g.adjacent(t, w[p])) break;
    if (w[p] > t) best = p;
  }
  w.insert(w.begin() + static_cast<std::ptrdiff_t>(best), t);
}

inline std::vector<Gen> normalize(const PresentationGraph& g, std::span<const Gen> letters) {
  std::vector<Gen> w;
  w.reserve(letters.size());
  for (Gen t : letters) normal_insert(g, w, t);
  return w;
}

// A letter a divides the trace of w iff some occurrence of a is preceded
// only by letters commuting with a; only the first occurrence can qualify.
// Removing it from any representative yields a representative of a^{-1}w.
inline bool strip_first(const PresentationGraph& g, std::vector<Gen>& w, Gen a) {
  auto it = std::find(w.begin(), w.end(), a);
  if (it == w.end()) return false;
  for (auto j = w.begin(); j != it; ++j)
    if (!g.adjacent(*j, a)) return false;
  w.erase(it);
  return true;
}

// Residual word y\x (a representative, not normalized): feed the letters of
// y through x, stripping the ones that divide and skipping the ones that
// commute with everything left.  nullopt means y and x have no common upper
// bound.  The loop mirrors the recursion
//     a y' \ x  =  y' \ (a \ x),
// and a\x is x less one letter when a divides x, x itself when a commutes
// with all of x, and undefined otherwise.
inline std::optional<std::vector<Gen>> residual_word(const PresentationGraph& g,
                                                     std::span<const Gen> y,
                                                     std::vector<Gen> x) {
  for (Gen a : y) {
    if (strip_first(g, x, a)) continue;
    bool clear = true;
    for (Gen s : x)
      if (!g.adjacent(a, s)) {
        clear = false;
        break;
      }
    if (!clear) return std::nullopt;
  }
  return x;
}

}  // namespace detail

class Trace {
 public:
  explicit Trace(GraphPtr g) : g_(std::move(g)) {}

  static Trace from_letters(GraphPtr g, std::span<const Gen> letters) {
    Trace t(std::move(g));
    t.w_ = detail::normalize(*t.g_, letters);
    return t;
  }

  static Trace from_letters(GraphPtr g, std::initializer_list<Gen> letters) {
    return from_letters(std::move(g), std::span<const Gen>(letters.begin(), letters.size()));
  }

  // Internal fast path for words already known to be normal.
  static Trace from_normal_word(GraphPtr g, std::vector<Gen> w) {
    Trace t(std::move(g));
    t.w_ = std::move(w);
    return t;
  }

  // Word syntax: whitespace-separated generator names, "1" for the empty
  // word, name^k for a k-th power.  A token that is not a generator name
  // but whose characters all are is split letterwise, so "ab" reads as
  // "a b" when both are single-letter generators.
  static Trace parse(const GraphPtr& g, std::string_view text);

  const GraphPtr& graph() const { return g_; }
  const std::vector<Gen>& word() const { return w_; }
  std::size_t length() const { return w_.size(); }
  bool is_identity() const { return w_.empty(); }

  std::string str() const {
    if (w_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (i) out += ' ';
      out += g_->name(w_[i]);
    }
    return out;
  }

  friend bool operator==(const Trace& a, const Trace& b) {
    return a.w_ == b.w_ && same_graph(a.g_, b.g_);
  }

  // Shortlex on the normal word; a deterministic order for containers.
  friend bool operator<(const Trace& a, const Trace& b) {
    if (a.w_.size() != b.w_.size()) return a.w_.size() < b.w_.size();
    return a.w_ < b.w_;
  }

 private:
  GraphPtr g_;
  std::vector<Gen> w_;
};

inline Trace identity(GraphPtr g) { return Trace(std::move(g)); }

inline Trace generator(GraphPtr g, Gen v) {
  return Trace::from_normal_word(std::move(g), {v});
}

inline std::size_t length(const Trace& t) { return t.length(); }

inline Trace multiply(const Trace& x, const Trace& y) {
  require_same_graph(x.graph(), y.graph());
  std::vector<Gen> w = x.word();
  for (Gen t : y.word()) detail::normal_insert(*x.graph(), w, t);
  return Trace::from_normal_word(x.graph(), std::move(w));
}

inline bool left_divides(const Trace& x, const Trace& y) {
  require_same_graph(x.graph(), y.graph());
  if (x.length() > y.length()) return false;
  std::vector<Gen> rest = y.word();
  for (Gen a : x.word())
    if (!detail::strip_first(*x.graph(), rest, a)) return false;
  return true;
}

// x^{-1} y when x <= y.
inline std::optional<Trace> left_quotient(const Trace& x, const Trace& y) {
  require_same_graph(x.graph(), y.graph());
  if (x.length() > y.length()) return std::nullopt;
  std::vector<Gen> rest = y.word();
  for (Gen a : x.word())
    if (!detail::strip_first(*x.graph(), rest, a)) return std::nullopt;
  return Trace::from_letters(x.graph(), rest);
}

// y\x = y^{-1}(y v x); nullopt when y and x have no common upper bound.
inline std::optional<Trace> residual(const Trace& y, const Trace& x) {
  require_same_graph(x.graph(), y.graph());
  auto w = detail::residual_word(*y.graph(), y.word(), x.word());
  if (!w) return std::nullopt;
  return Trace::from_letters(y.graph(), *w);
}

// Least common upper bound x v y = x * (x\y), or nullopt when none exists.
inline std::optional<Trace> join(const Trace& x, const Trace& y) {
  require_same_graph(x.graph(), y.graph());
  auto w = detail::residual_word(*x.graph(), x.word(), y.word());
  if (!w) return std::nullopt;
  std::vector<Gen> out = x.word();
  for (Gen t : *w) detail::normal_insert(*x.graph(), out, t);
  return Trace::from_normal_word(x.graph(), std::move(out));
}

// Closure of a finite set under pairwise join; failed joins are dropped.
// Equals the set of joins of all nonempty subsets that admit one.
inline std::vector<Trace> join_closure(const std::vector<Trace>& xs) {
  std::set<Trace> seen(xs.begin(), xs.end());
  std::vector<Trace> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    Trace t = std::move(queue.back());
    queue.pop_back();
    for (const Trace& s : std::vector<Trace>(seen.begin(), seen.end())) {
      if (auto j = join(t, s); j && seen.insert(*j).second) queue.push_back(*j);
    }
  }
  return {seen.begin(), seen.end()};
}

inline std::vector<Trace> atoms(const GraphPtr& g) {
  std::vector<Trace> out;
  for (Gen v = 0; v < static_cast<Gen>(g->size()); ++v) out.push_back(generator(g, v));
  return out;
}

inline bool is_atom(const Trace& t) { return t.length() == 1; }

// ---------------------------------------------------------------------------
// Abelianization: letter multiplicities, the controlled map onto (Z^S, N^S).

struct AbelianVector {
  GraphPtr graph;
  std::vector<long long> counts;

  friend bool operator==(const AbelianVector& a, const AbelianVector& b) {
    return a.counts == b.counts && same_graph(a.graph, b.graph);
  }
  friend bool operator<(const AbelianVector& a, const AbelianVector& b) {
    return a.counts < b.counts;
  }
};

inline AbelianVector abelianize(const Trace& t) {
  AbelianVector v{t.graph(), std::vector<long long>(t.graph()->size(), 0)};
  for (Gen a : t.word()) ++v.counts[static_cast<std::size_t>(a)];
  return v;
}

inline bool leq(const AbelianVector& a, const AbelianVector& b) {
  require_same_graph(a.graph, b.graph);
  for (std::size_t i = 0; i < a.counts.size(); ++i)
    if (a.counts[i] > b.counts[i]) return false;
  return true;
}

inline AbelianVector componentwise_max(const AbelianVector& a, const AbelianVector& b) {
  require_same_graph(a.graph, b.graph);
  AbelianVector m = a;
  for (std::size_t i = 0; i < m.counts.size(); ++i)
    m.counts[i] = std::max(m.counts[i], b.counts[i]);
  return m;
}

inline AbelianVector add(const AbelianVector& a, const AbelianVector& b) {
  require_same_graph(a.graph, b.graph);
  AbelianVector m = a;
  for (std::size_t i = 0; i < m.counts.size(); ++i) m.counts[i] += b.counts[i];
  return m;
}

// ---------------------------------------------------------------------------
// Enumeration of normal forms.  A normal word w*t stays normal exactly when
// t is not "blocked": s is blocked after reading t iff t commutes with s
// and either s was already blocked or s < t.  Tracking one mask of blocked
// letters therefore enumerates every element exactly once.

constexpr std::uint64_t normal_start() { return 0; }

inline std::uint64_t normal_step(const PresentationGraph& g, std::uint64_t blocked, Gen t) {
  const std::uint64_t below_t = (std::uint64_t(1) << t) - 1;
  return g.neighbours(t) & (blocked | below_t);
}

inline std::uint64_t normal_choices(const PresentationGraph& g, std::uint64_t blocked) {
  return g.vertex_mask() & ~blocked;
}

// All elements of length <= max_len, in shortlex order.
inline std::vector<Trace> enumerate_traces(const GraphPtr& g, std::size_t max_len) {
  struct Node {
    std::vector<Gen> w;
    std::uint64_t blocked;
  };
  std::vector<Trace> out{identity(g)};
  std::vector<Node> level{{{}, normal_start()}};
  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<Node> next;
    for (const Node& n : level) {
      for (std::uint64_t m = normal_choices(*g, n.blocked); m;) {
        Gen t = std::countr_zero(m);
        m &= m - 1;
        Node ext{n.w, normal_step(*g, n.blocked, t)};
        ext.w.push_back(t);
        out.push_back(Trace::from_normal_word(g, ext.w));
        next.push_back(std::move(ext));
      }
    }
    level = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------

inline Trace Trace::parse(const GraphPtr& g, std::string_view text) {
  std::vector<Gen> letters;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    std::string base = tok;
    long long power = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      base = tok.substr(0, caret);
      std::string exp = tok.substr(caret + 1);
      try {
        std::size_t used = 0;
        power = std::stoll(exp, &used);
        if (used != exp.size()) throw std::invalid_argument(exp);
      } catch (const std::exception&) {
        throw input_error("bad exponent in token '" + tok + "'");
      }
      if (power < 0)
        throw input_error("negative power in '" + tok + "': not a positive word");
    }
    std::vector<Gen> unit;
    if (auto v = g->find_vertex(base)) {
      unit.push_back(*v);
    } else {
      for (char c : base) {
        auto u = g->find_vertex(std::string_view(&c, 1));
        if (!u) throw input_error("unknown generator in token '" + tok + "'");
        unit.push_back(*u);
      }
    }
    for (long long i = 0; i < power; ++i)
      letters.insert(letters.end(), unit.begin(), unit.end());
  }
  return from_letters(g, letters);
}

}  // namespace artin
