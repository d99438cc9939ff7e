#pragma once

// Words in the ambient right-angled Artin group, over the generators and
// their formal inverses.  A word is shortened by cancelling a letter against
// an inverse occurrence separated only by letters that commute with it; a
// word admitting no such cancellation is geodesic, and geodesics of the same
// element differ only by commutations.  GroupWord values are kept reduced,
// so emptiness decides triviality and two elements are compared by reducing
// a quotient.

#include <cstdlib>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "artin/errors.hpp"
#include "artin/graph.hpp"
#include "artin/trace.hpp"

namespace artin {

struct GLetter {
  Gen gen;
  bool inv;
  friend bool operator==(const GLetter&, const GLetter&) = default;
};

namespace detail {

inline void group_reduce_in_place(const PresentationGraph& g, std::vector<GLetter>& w) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t j = 0; j < w.size() && !again; ++j) {
      for (std::size_t i = j; i-- > 0;) {
        if (w[i].gen == w[j].gen) {
          if (w[i].inv != w[j].inv) {
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
            again = true;
          }
          break;  // an occurrence of the same generator blocks movement either way
        }
        if (!g.adjacent(w[i].gen, w[j].gen)) break;
      }
    }
  }
}

}  // namespace detail

class GroupWord {
 public:
  explicit GroupWord(GraphPtr g) : g_(std::move(g)) {}

  static GroupWord from_letters(GraphPtr g, std::vector<GLetter> letters) {
    GroupWord w(std::move(g));
    detail::group_reduce_in_place(*w.g_, letters);
    w.w_ = std::move(letters);
    return w;
  }

  static GroupWord from_trace(const Trace& t) {
    std::vector<GLetter> letters;
    letters.reserve(t.length());
    for (Gen a : t.word()) letters.push_back({a, false});
    GroupWord w(t.graph());
    w.w_ = std::move(letters);  // positive words are already reduced
    return w;
  }

  // Same token syntax as Trace::parse, plus negative powers: "a^-1 b a^2".
  static GroupWord parse(const GraphPtr& g, std::string_view text);

  const GraphPtr& graph() const { return g_; }
  const std::vector<GLetter>& letters() const { return w_; }
  bool is_identity() const { return w_.empty(); }
  std::size_t length() const { return w_.size(); }

  std::size_t negative_count() const {
    std::size_t n = 0;
    for (const GLetter& l : w_) n += l.inv ? 1 : 0;
    return n;
  }

  bool is_positive() const { return negative_count() == 0; }

  // Defined only for positive words.
  Trace to_trace() const {
    if (!is_positive()) throw input_error("group word is not positive: " + str());
    std::vector<Gen> letters;
    letters.reserve(w_.size());
    for (const GLetter& l : w_) letters.push_back(l.gen);
    return Trace::from_letters(g_, letters);
  }

  std::string str() const {
    if (w_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (i) out += ' ';
      out += g_->name(w_[i].gen);
      if (w_[i].inv) out += "^-1";
    }
    return out;
  }

 private:
  GraphPtr g_;
  std::vector<GLetter> w_;
};

inline GroupWord group_identity(GraphPtr g) { return GroupWord(std::move(g)); }

inline GroupWord group_multiply(const GroupWord& a, const GroupWord& b) {
  require_same_graph(a.graph(), b.graph());
  std::vector<GLetter> w = a.letters();
  w.insert(w.end(), b.letters().begin(), b.letters().end());
  return GroupWord::from_letters(a.graph(), std::move(w));
}

inline GroupWord group_invert(const GroupWord& a) {
  std::vector<GLetter> w(a.letters().rbegin(), a.letters().rend());
  for (GLetter& l : w) l.inv = !l.inv;
  return GroupWord::from_letters(a.graph(), std::move(w));
}

inline bool same_element(const GroupWord& a, const GroupWord& b) {
  return group_multiply(a, group_invert(b)).is_identity();
}

inline bool is_positive(const GroupWord& w) { return w.is_positive(); }

inline GroupWord GroupWord::parse(const GraphPtr& g, std::string_view text) {
  std::vector<GLetter> letters;
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
    const bool inv = power < 0;
    const long long reps = inv ? -power : power;
    for (long long i = 0; i < reps; ++i) {
      if (!inv)
        for (Gen u : unit) letters.push_back({u, false});
      else
        for (auto it = unit.rbegin(); it != unit.rend(); ++it) letters.push_back({*it, true});
    }
  }
  return from_letters(g, std::move(letters));
}

}  // namespace artin
