#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "artin/automata.hpp"
#include "artin/errors.hpp"
#include "artin/graph.hpp"
#include "artin/group_word.hpp"
#include "artin/lattice.hpp"
#include "artin/spectrum.hpp"
#include "artin/star_algebra.hpp"
#include "artin/trace.hpp"

// Serialization layer.  Structured objects are the single source of truth;
// the text renderers below derive from the same data, so the two output
// modes of the command line tool cannot drift apart.

namespace artin::io {

using json = nlohmann::ordered_json;

inline json parse_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed JSON input");
  return j;
}

// --------------------------------------------------------------------------
// graphs

inline json graph_to_json(const PresentationGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.name(u), g.name(v)});
  return json{{"vertices", g.names()}, {"edges", std::move(edges)}};
}

inline PresentationGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.at("vertices").is_array())
    throw input_error("graph object needs a 'vertices' array");
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw input_error("vertex names must be strings");
    vertices.push_back(v.get<std::string>());
  }
  if (!j.contains("edges") || !j.at("edges").is_array())
    throw input_error("graph object needs an 'edges' array");
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e.at(0).is_string() || !e.at(1).is_string())
      throw input_error("each edge must be a two-element array of vertex names");
    edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return PresentationGraph(std::move(vertices), edges);
}

inline std::string export_graph_json(const PresentationGraph& g) {
  return graph_to_json(g).dump(2) + "\n";
}

// Text or structured object, decided by the first printable byte.
inline PresentationGraph parse_graph_any(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return graph_from_json(parse_json(text));
    break;
  }
  return parse_graph_text(text);
}

inline GraphPtr load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::make_shared<const PresentationGraph>(parse_graph_any(buf.str()));
}

// --------------------------------------------------------------------------
// monoid and group values

inline json trace_json(const Trace& t) { return t.str(); }

// Failed joins and residuals print as the INF token.
inline json extended_trace_json(const std::optional<Trace>& t) {
  return t ? json(t->str()) : json("INF");
}

inline json abelian_json(const AbelianVector& v) {
  json j = json::object();
  for (std::size_t i = 0; i < v.counts.size(); ++i)
    j[v.graph->name(static_cast<Gen>(i))] = v.counts[i];
  return j;
}

// --------------------------------------------------------------------------
// automaton certificates

inline json certificate_json(const BoundaryCertificate& c) {
  json j{{"answer", c.in_class}};
  if (c.witness) j["witness"] = c.witness->str();
  j["states_explored"] = c.states_explored;
  return j;
}

inline json certificate_json(const EssentialCertificate& c) {
  json j{{"answer", c.in_class}};
  json survivors = json::array();
  for (const Trace& t : c.survivors) survivors.push_back(t.str());
  j["survivors"] = std::move(survivors);
  if (c.chain)
    j["chain"] = json{{"base", c.chain->first.str()}, {"pump", c.chain->second.str()}};
  j["states_explored"] = c.states_explored;
  return j;
}

inline json classification_json(const Classification& c) {
  return json{{"tier", to_string(c.tier)},
              {"essential", certificate_json(c.essential)},
              {"boundary", certificate_json(c.boundary)}};
}

// --------------------------------------------------------------------------
// spectrum points

inline json point_json(const SpectrumPoint& p) {
  if (p.is_tail()) return json{{"type", "tail"}, {"w", p.tail_word().str()}};
  return json{{"type", "translate"},
              {"t", p.shift().str()},
              {"base", json{{"type", "tail"}, {"w", p.tail_word().str()}}}};
}

// --------------------------------------------------------------------------
// algebra elements

inline std::string rational_str(const Rational& r) {
  std::string out = std::to_string(r.numerator());
  if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
  return out;
}

inline json element_json(const AlgebraElement& a) {
  json out = json::array();
  for (const auto& [m, c] : a.terms())
    out.push_back(json{{"left", m.left.str()}, {"right", m.right.str()},
                       {"coeff", rational_str(c)}});
  return out;
}

inline std::string monomial_str(const Monomial& m) {
  if (m.left.length() == 0 && m.right.length() == 0) return "1";
  return "V(" + m.left.str() + ") V(" + m.right.str() + ")*";
}

inline std::string element_str(const AlgebraElement& a) {
  if (a.terms().empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Rational r = c;
    if (first) {
      if (r < Rational(0)) {
        out << "-";
        r = -r;
      }
    } else {
      out << (r < Rational(0) ? " - " : " + ");
      if (r < Rational(0)) r = -r;
    }
    const std::string ms = monomial_str(m);
    if (ms == "1")
      out << rational_str(r);
    else if (r == Rational(1))
      out << ms;
    else
      out << rational_str(r) << " " << ms;
    first = false;
  }
  return out.str();
}

// --------------------------------------------------------------------------
// lattice ideals and reports

inline json component_set_json(const ComponentDecomposition& d, ComponentSet b) {
  json out = json::array();
  for (std::size_t c = 0; c < d.count(); ++c)
    if ((b >> c) & 1) out.push_back(d.component_name(c));
  return out;
}

inline json ideal_json(const LatticeIdeal& ideal) {
  json out = json::array();
  for (ComponentSet b : ideal.generators())
    out.push_back(component_set_json(ideal.decomposition(), b));
  return out;
}

inline json lattice_json(const IdealLattice& lat) {
  json ideals = json::array();
  for (const LatticeIdeal& ideal : lat.ideals)
    ideals.push_back(json{{"name", ideal_name(ideal)}, {"generators", ideal_json(ideal)}});
  json hasse = json::array();
  for (auto [lo, hi] : lat.covers)
    hasse.push_back(json{{"lower", lo}, {"upper", hi}});
  return json{{"count", lat.ideals.size()},
              {"proper_nontrivial_quotients", lat.proper_nontrivial_quotients()},
              {"ideals", std::move(ideals)},
              {"hasse", std::move(hasse)}};
}

inline json witness_json(const SeparatingWitness& w, const ComponentDecomposition& d) {
  return json{{"point", point_json(w.point)},
              {"subset", component_set_json(d, w.subset)},
              {"under_first", w.under_first},
              {"explanation", w.explanation}};
}

inline std::string presentation_text(const QuotientPresentation& p) {
  std::ostringstream out;
  out << "generators:";
  for (const auto& n : p.graph->names()) out << ' ' << n;
  out << "\nrelations:\n";
  out << "  (1) V_s* V_s = 1 for every generator s\n";
  auto pairs = [&](const std::vector<std::pair<Gen, Gen>>& ps) {
    if (ps.empty()) return std::string("none");
    std::string s;
    for (auto [u, v] : ps) {
      if (!s.empty()) s += ' ';
      s += "{" + p.graph->name(u) + ", " + p.graph->name(v) + "}";
    }
    return s;
  };
  out << "  (2) V_s V_t = V_t V_s and V_s* V_t = V_t V_s* for adjacent pairs: "
      << pairs(p.commuting) << "\n";
  out << "  (3) V_s* V_t = 0 for distinct non-adjacent pairs: " << pairs(p.orthogonal)
      << "\n";
  if (p.extra.empty()) {
    out << "  (4) none: this is the full Toeplitz algebra\n";
  } else {
    out << "  (4) prod_{s in S_i} (1 - V_s V_s*) = 0 for:\n";
    for (std::size_t i = 0; i < p.extra.size(); ++i) {
      out << "      S_" << (i + 1) << " = {";
      for (std::size_t k = 0; k < p.extra[i].size(); ++k)
        out << (k ? ", " : "") << p.graph->name(p.extra[i][k]);
      out << "}, expanding to " << element_str(p.expansions[i]) << " = 0\n";
    }
  }
  return out.str();
}

inline json presentation_json(const QuotientPresentation& p) {
  json commuting = json::array();
  for (auto [u, v] : p.commuting) commuting.push_back({p.graph->name(u), p.graph->name(v)});
  json orthogonal = json::array();
  for (auto [u, v] : p.orthogonal)
    orthogonal.push_back({p.graph->name(u), p.graph->name(v)});
  json extra = json::array();
  for (std::size_t i = 0; i < p.extra.size(); ++i) {
    json set = json::array();
    for (Gen v : p.extra[i]) set.push_back(p.graph->name(v));
    extra.push_back(json{{"set", std::move(set)},
                         {"expansion", element_json(p.expansions[i])},
                         {"expansion_display", element_str(p.expansions[i])}});
  }
  return json{{"generators", p.graph->names()},
              {"commuting_pairs", std::move(commuting)},
              {"orthogonal_pairs", std::move(orthogonal)},
              {"extra_relations", std::move(extra)},
              {"display", presentation_text(p)}};
}

inline std::string boundary_report_text(const BoundaryReport& r) {
  std::ostringstream out;
  out << presentation_text(r.presentation);
  out << "boundary ideal: " << ideal_name(r.ideal) << "\n";
  if (r.flags_available) {
    out << "purely infinite: " << (r.purely_infinite ? "yes" : "no") << "\n";
    out << "simple: " << (r.simple ? "yes" : "no") << "\n";
  } else {
    out << "purely infinite, simple: withheld\n";
  }
  out << "note: " << r.justification << "\n";
  return out.str();
}

inline json boundary_report_json(const BoundaryReport& r) {
  json j{{"presentation", presentation_json(r.presentation)},
         {"ideal", ideal_json(r.ideal)}};
  if (r.flags_available) {
    j["purely_infinite"] = r.purely_infinite;
    j["simple"] = r.simple;
  } else {
    j["flags"] = "withheld";
    json iso = json::array();
    for (Gen v : r.isolated) iso.push_back(r.presentation.graph->name(v));
    j["central_generators"] = std::move(iso);
  }
  j["justification"] = r.justification;
  j["display"] = boundary_report_text(r);
  return j;
}

inline std::string minimal_report_text(const MinimalIdealReport& r) {
  std::ostringstream out;
  out << "minimal ideal: " << ideal_name(r.ideal) << "\n";
  out << "lower bounds:";
  for (Gen v : r.lower_bounds) out << ' ' << r.ideal.graph()->name(v);
  out << "\ndefect projection: " << element_str(r.defect) << "\n";
  out << "coincides with the boundary ideal: "
      << (r.coincides_with_boundary ? "yes" : "no") << "\n";
  out << "note: " << r.note << "\n";
  return out.str();
}

inline json minimal_report_json(const MinimalIdealReport& r) {
  json bounds = json::array();
  for (Gen v : r.lower_bounds) bounds.push_back(r.ideal.graph()->name(v));
  return json{{"ideal", ideal_json(r.ideal)},
              {"lower_bounds", std::move(bounds)},
              {"defect", element_json(r.defect)},
              {"defect_display", element_str(r.defect)},
              {"coincides_with_boundary", r.coincides_with_boundary},
              {"note", r.note},
              {"display", minimal_report_text(r)}};
}

// --------------------------------------------------------------------------
// euler characteristic report

inline json euler_report(const PresentationGraph& g) {
  const long long chi = clique_euler(g);
  const long long dist = chi >= 1 ? chi - 1 : 1 - chi;
  json result{{"chi", chi}, {"abs_chi_minus_1", dist}};
  if (g.edges().empty() && g.size() >= 2)
    result["note"] = "edgeless graph: |chi - 1| = " + std::to_string(dist) +
                     " equals the order of the identity class in K_0 of the Cuntz "
                     "algebra O_" + std::to_string(g.size());
  return result;
}

// --------------------------------------------------------------------------
// generic text rendering
//
// Text mode prints the same object the JSON mode emits.  A "display" key, when
// present, is a preformatted block and replaces the generic walk of its object.

inline bool is_scalar_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& v : j)
    if (v.is_object() || v.is_array()) return false;
  return true;
}

inline std::string scalar_str(const json& j) {
  return j.is_string() ? j.get<std::string>() : j.dump();
}

inline void render_text_into(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.contains("display") && j.at("display").is_string()) {
      std::istringstream block(j.at("display").get<std::string>());
      std::string line;
      while (std::getline(block, line)) out << pad << line << "\n";
      return;
    }
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !is_scalar_array(value))) {
        if (value.empty()) {
          out << pad << key << ": (none)\n";
          continue;
        }
        out << pad << key << ":\n";
        render_text_into(value, out, indent + 2);
      } else if (value.is_array()) {
        out << pad << key << ":";
        if (value.empty()) out << " (none)";
        for (const auto& v : value) out << ' ' << scalar_str(v);
        out << "\n";
      } else {
        out << pad << key << ": " << scalar_str(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        out << pad << "- [" << i << "]\n";
        render_text_into(v, out, indent + 2);
      } else {
        out << pad << "- " << scalar_str(v) << "\n";
      }
      ++i;
    }
    if (j.empty()) out << pad << "(none)\n";
  } else {
    out << pad << scalar_str(j) << "\n";
  }
}

inline std::string render_text(const json& j) {
  std::ostringstream out;
  render_text_into(j, out, 0);
  return out.str();
}

}  // namespace artin::io
