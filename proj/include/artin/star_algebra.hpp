#pragma once

// Exact symbolic arithmetic in the *-algebra spanned by monomials
// V_x V_y* over a fixed graph, with rational coefficients.  The product of
// two monomials collapses through the join: V_y* V_z = V_{y\z} V_{z\y}*
// when y and z have a common bound and 0 otherwise, which extends
// bilinearly.  Defect expansions, conditional expectations, and evaluation
// against spectrum points all stay in exact arithmetic.

#include <cstdlib>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "artin/errors.hpp"
#include "artin/graph.hpp"
#include "artin/group_word.hpp"
#include "artin/spectrum.hpp"
#include "artin/trace.hpp"

namespace artin {

using Rational = boost::rational<long long>;

struct Monomial {
  Trace left;   // V_left
  Trace right;  // V_right^*

  Monomial(Trace l, Trace r) : left(std::move(l)), right(std::move(r)) {
    require_same_graph(left.graph(), right.graph());
  }

  bool diagonal() const { return left == right; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.left == b.left && a.right == b.right;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  }
};

// (x,y)(z,w) = (x*(y\z), w*(z\y)) when y and z have a join, 0 otherwise.
inline std::optional<Monomial> multiply(const Monomial& a, const Monomial& b) {
  require_same_graph(a.left.graph(), b.left.graph());
  std::optional<Trace> yz = residual(a.right, b.left);
  std::optional<Trace> zy = residual(b.left, a.right);
  if (!yz || !zy) return std::nullopt;
  return Monomial(multiply(a.left, *yz), multiply(b.right, *zy));
}

inline Monomial adjoint(const Monomial& m) { return Monomial(m.right, m.left); }

class AlgebraElement {
 public:
  explicit AlgebraElement(GraphPtr g) : g_(std::move(g)) {}

  static AlgebraElement zero(GraphPtr g) { return AlgebraElement(std::move(g)); }

  static AlgebraElement monomial(Monomial m, Rational c = Rational(1)) {
    AlgebraElement out(m.left.graph());
    if (c != Rational(0)) out.terms_.emplace(std::move(m), c);
    return out;
  }

  static AlgebraElement one(GraphPtr g) {
    Trace e = Trace::from_normal_word(g, {});
    return monomial(Monomial(e, e));
  }

  // The range projection e_x = V_x V_x*.
  static AlgebraElement range_projection(Trace x) {
    Trace copy = x;
    return monomial(Monomial(std::move(copy), std::move(x)));
  }

  const GraphPtr& graph() const { return g_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  AlgebraElement& operator+=(const AlgebraElement& rhs) {
    require_same_graph(g_, rhs.g_);
    for (const auto& [m, c] : rhs.terms_) {
      auto [it, fresh] = terms_.try_emplace(m, c);
      if (!fresh) {
        it->second += c;
        if (it->second == Rational(0)) terms_.erase(it);
      }
    }
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }

  friend AlgebraElement operator*(const Rational& c, const AlgebraElement& a) {
    AlgebraElement out(a.g_);
    if (c == Rational(0)) return out;
    for (const auto& [m, coeff] : a.terms_) out.terms_.emplace(m, c * coeff);
    return out;
  }

  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return a + Rational(-1) * b;
  }

  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_graph(a.g_, b.g_);
    AlgebraElement out(a.g_);
    for (const auto& [m1, c1] : a.terms_) {
      for (const auto& [m2, c2] : b.terms_) {
        std::optional<Monomial> m = multiply(m1, m2);
        if (!m) continue;
        auto [it, fresh] = out.terms_.try_emplace(*m, c1 * c2);
        if (!fresh) it->second += c1 * c2;
      }
    }
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
      it = it->second == Rational(0) ? out.terms_.erase(it) : std::next(it);
    }
    return out;
  }

  friend AlgebraElement adjoint(const AlgebraElement& a) {
    AlgebraElement out(a.g_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(adjoint(m), c);
    return out;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return same_graph(a.g_, b.g_) && a.terms_ == b.terms_;
  }

 private:
  GraphPtr g_;
  std::map<Monomial, Rational> terms_;
};

// f_H = prod_{h in H} (1 - e_h), expanded by inclusion-exclusion over the
// subsets of H whose join exists.  A subset with join infinity contributes
// nothing and neither does any superset, so the walk prunes there; the
// node guard keeps pathological inputs from expanding forever.
inline AlgebraElement defect(const GraphPtr& g, const std::vector<Trace>& relation) {
  for (const Trace& h : relation) require_same_graph(g, h.graph());
  AlgebraElement out = AlgebraElement::zero(g);
  std::size_t nodes = 0;
  auto walk = [&](auto&& self, std::size_t next, const Trace& joined, int sign) -> void {
    if (++nodes > (1u << 22))
      throw input_error("defect expansion too large for this relation set");
    Trace copy = joined;
    out += Rational(sign) * AlgebraElement::range_projection(std::move(copy));
    for (std::size_t i = next; i < relation.size(); ++i) {
      std::optional<Trace> j = join(joined, relation[i]);
      if (!j) continue;
      self(self, i + 1, *j, -sign);
    }
  };
  walk(walk, 0, Trace::from_normal_word(g, {}), 1);
  return out;
}

// Same element computed the slow way, as an actual product of binomials.
inline AlgebraElement defect_by_product(const GraphPtr& g, const std::vector<Trace>& relation) {
  AlgebraElement out = AlgebraElement::one(g);
  for (const Trace& h : relation) {
    Trace copy = h;
    out = out * (AlgebraElement::one(g) - AlgebraElement::range_projection(std::move(copy)));
  }
  return out;
}

// Conditional expectation onto the diagonal: kills every monomial with
// left != right.
inline AlgebraElement expectation_phi(const AlgebraElement& a) {
  AlgebraElement out = AlgebraElement::zero(a.graph());
  for (const auto& [m, c] : a.terms()) {
    if (m.diagonal()) out += AlgebraElement::monomial(m, c);
  }
  return out;
}

// Expectation onto the kernel of the abelianization grading: keeps
// monomials whose sides have equal letter counts.
inline AlgebraElement expectation_grading(const AlgebraElement& a) {
  AlgebraElement out = AlgebraElement::zero(a.graph());
  for (const auto& [m, c] : a.terms()) {
    if (abelianize(m.left) == abelianize(m.right)) out += AlgebraElement::monomial(m, c);
  }
  return out;
}

// V_x V_y* acting on a point: defined when y is a member, shifting by
// x y^-1 (the x-side domain condition follows by heredity).
inline std::optional<SpectrumPoint> apply(const Monomial& m, const SpectrumPoint& p) {
  require_same_graph(m.left.graph(), p.graph());
  GroupWord y = GroupWord::from_trace(m.right);
  if (!member(p, y)) return std::nullopt;
  GroupWord t = group_multiply(GroupWord::from_trace(m.left), group_invert(y));
  return SpectrumPoint::translate(t, p);
}

struct EvalResult {
  bool decided;
  Rational value;  // meaningful only when decided
};

namespace detail {

// Deterministic family of group elements used to compare a point with its
// shift: all u v^-1 with u, v in the radius-2 ball.
inline std::vector<GroupWord> comparison_samples(const GraphPtr& g) {
  std::vector<GroupWord> out;
  std::vector<Trace> ball = enumerate_traces(g, 2);
  for (const Trace& u : ball) {
    for (const Trace& v : ball) {
      out.push_back(group_multiply(GroupWord::from_trace(u),
                                   group_invert(GroupWord::from_trace(v))));
    }
  }
  return out;
}

}  // namespace detail

// <eps_p, A eps_p> where eps_p is the basis vector at the point.  Diagonal
// monomials contribute [x in p]; an off-diagonal monomial contributes 0
// when V_y* kills the point or the shifted point provably differs on a
// sample, and otherwise the whole evaluation is reported undecided rather
// than guessing whether the shift fixes the point.
inline EvalResult evaluate(const AlgebraElement& a, const SpectrumPoint& p) {
  require_same_graph(a.graph(), p.graph());
  Rational total(0);
  std::vector<GroupWord> samples;
  for (const auto& [m, c] : a.terms()) {
    if (m.diagonal()) {
      if (member(p, GroupWord::from_trace(m.left))) total += c;
      continue;
    }
    GroupWord y = GroupWord::from_trace(m.right);
    if (!member(p, y)) continue;
    GroupWord shift = group_multiply(GroupWord::from_trace(m.left), group_invert(y));
    GroupWord unshift = group_invert(shift);
    if (samples.empty()) samples = detail::comparison_samples(a.graph());
    bool separated = false;
    for (const GroupWord& s : samples) {
      if (member(p, s) != member(p, group_multiply(unshift, s))) {
        separated = true;
        break;
      }
    }
    if (!separated) return {false, Rational(0)};
  }
  return {true, total};
}

}  // namespace artin
