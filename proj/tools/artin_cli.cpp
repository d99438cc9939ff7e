#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <artin/check.hpp>
#include <artin/io.hpp>

using namespace artin;
using io::json;

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "h1,h2,..." with each element a trace word; an empty argument is the
// empty relation set
std::vector<Trace> parse_relation(const GraphPtr& g, const std::string& arg) {
  std::vector<Trace> out;
  if (trim(arg).empty()) return out;
  for (const std::string& part : split(arg, ',')) {
    const std::string word = trim(part);
    if (word.empty()) throw input_error("empty element in relation list");
    out.push_back(Trace::parse(g, word));
  }
  return out;
}

// Antichains are ';'-separated generator sets of component representatives,
// each set a comma list of vertex names; "{}" is the empty set and "0" the
// zero ideal.
LatticeIdeal parse_ideal(const ComponentDecomposition& d, const std::string& arg) {
  const std::string body = trim(arg);
  if (body == "0" || body.empty()) return zero_ideal(d);
  std::vector<std::vector<std::string>> named;
  for (const std::string& part : split(body, ';')) {
    const std::string set = trim(part);
    if (set == "{}") {
      named.emplace_back();
      continue;
    }
    if (set.empty()) throw input_error("empty generator set in antichain");
    std::vector<std::string> names;
    for (const std::string& n : split(set, ',')) {
      const std::string name = trim(n);
      if (name.empty()) throw input_error("empty vertex name in antichain");
      names.push_back(name);
    }
    named.push_back(std::move(names));
  }
  return antichain_reduce(d, named);
}

struct Invocation {
  std::string graph_path;
  bool json_mode = false;
  int depth = 3;
  int max_components = 5;
};

void emit(const json& envelope, bool json_mode) {
  if (json_mode)
    std::cout << envelope.dump(2) << "\n";
  else
    std::cout << io::render_text(envelope);
}

json envelope_for(const std::string& command, json input, json result,
                  json certificates = json::object()) {
  return json{{"command", command},
              {"input", std::move(input)},
              {"result", std::move(result)},
              {"certificates", std::move(certificates)}};
}

int run_verify(const GraphPtr& g, const Invocation& inv) {
  const auto outcomes = run_all_checks(g, inv.depth);
  json suites = json::array();
  bool passed = true;
  std::string first;
  for (const auto& o : outcomes) {
    json s{{"name", o.name}, {"cases", o.cases}, {"passed", o.passed}};
    if (!o.counterexample.empty()) s["note"] = o.counterexample;
    suites.push_back(std::move(s));
    if (!o.passed && passed) {
      passed = false;
      first = o.name + ": " + o.counterexample;
    }
  }
  json result{{"passed", passed}, {"depth", inv.depth}, {"suites", std::move(suites)}};
  if (!passed) result["first_counterexample"] = first;
  emit(envelope_for("verify", json{{"graph", inv.graph_path}, {"depth", inv.depth}},
                    std::move(result)),
       inv.json_mode);
  return passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation in graph trace monoids and their Toeplitz algebras"};
  app.require_subcommand(1);

  Invocation inv;
  app.add_option("--graph", inv.graph_path, "graph file (text or JSON)")->required();
  app.add_flag("--json", inv.json_mode, "structured output");
  app.add_option("--max-components", inv.max_components,
                 "enumeration bound on opposite-graph components");

  std::vector<std::string> words;
  std::string list_arg;

  auto* nf = app.add_subcommand("nf", "normal form of a word");
  nf->add_option("word", words)->required()->expected(-1);

  auto* join_cmd = app.add_subcommand("join", "least upper bound of two elements");
  join_cmd->add_option("elements", words)->required()->expected(2);

  auto* divides = app.add_subcommand("divides", "does the first element left divide the second");
  divides->add_option("elements", words)->required()->expected(2);

  auto* classify = app.add_subcommand("classify", "classify a finite relation set");
  classify->add_option("relation", list_arg, "comma-separated elements");

  auto* ideals = app.add_subcommand("ideals", "enumerate the gauge-invariant ideal lattice");

  auto* present = app.add_subcommand("present", "present the quotient by an ideal");
  present->add_option("antichain", list_arg,
                      "';'-separated sets of component representatives, {} for the empty set");

  auto* boundary = app.add_subcommand("boundary", "boundary quotient report");
  auto* minimal = app.add_subcommand("minimal", "minimal nonzero ideal report");
  auto* euler = app.add_subcommand("euler", "clique complex Euler characteristic");

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--depth", inv.depth, "trace length bound for the suites");

  auto* components = app.add_subcommand("components", "opposite-graph components");
  auto* core = app.add_subcommand("core", "central generators and irreducibility");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const GraphPtr g = io::load_graph_file(inv.graph_path);
    const json input_base{{"graph", inv.graph_path}};

    if (*nf) {
      std::string word;
      for (const auto& w : words) word += (word.empty() ? "" : " ") + w;
      const Trace t = Trace::parse(g, word);
      json input = input_base;
      input["word"] = word;
      emit(envelope_for("nf", std::move(input),
                        json{{"normal_form", t.str()},
                             {"length", t.length()},
                             {"abelianization", io::abelian_json(abelianize(t))}}),
           inv.json_mode);
    } else if (*join_cmd) {
      const Trace x = Trace::parse(g, words[0]), y = Trace::parse(g, words[1]);
      const auto j = join(x, y);
      json input = input_base;
      input["x"] = words[0];
      input["y"] = words[1];
      emit(envelope_for("join", std::move(input),
                        json{{"value", io::extended_trace_json(j)},
                             {"finite", j.has_value()}},
                        json{{"residual_x_y", io::extended_trace_json(residual(x, y))},
                             {"residual_y_x", io::extended_trace_json(residual(y, x))}}),
           inv.json_mode);
    } else if (*divides) {
      const Trace x = Trace::parse(g, words[0]), y = Trace::parse(g, words[1]);
      const auto q = left_quotient(x, y);
      json input = input_base;
      input["x"] = words[0];
      input["y"] = words[1];
      json result{{"divides", q.has_value()}};
      if (q) result["quotient"] = q->str();
      emit(envelope_for("divides", std::move(input), std::move(result)), inv.json_mode);
    } else if (*classify) {
      const std::vector<Trace> relation = parse_relation(g, list_arg);
      const Classification c = classify_relation(g, relation);
      json input = input_base;
      input["relation"] = list_arg;
      emit(envelope_for("classify", std::move(input), json{{"tier", to_string(c.tier)}},
                        json{{"essential", io::certificate_json(c.essential)},
                             {"boundary", io::certificate_json(c.boundary)}}),
           inv.json_mode);
    } else if (*ideals) {
      const IdealLattice lat = enumerate_ideals(opp_components(g), inv.max_components);
      emit(envelope_for("ideals", input_base, io::lattice_json(lat)), inv.json_mode);
    } else if (*present) {
      const ComponentDecomposition d = opp_components(g);
      const LatticeIdeal ideal = parse_ideal(d, list_arg);
      const QuotientPresentation p = quotient_presentation(ideal);
      json input = input_base;
      input["antichain"] = list_arg;
      emit(envelope_for("present", std::move(input),
                        json{{"ideal", io::ideal_json(ideal)},
                             {"ideal_name", ideal_name(ideal)},
                             {"presentation", io::presentation_json(p)}}),
           inv.json_mode);
    } else if (*boundary) {
      emit(envelope_for("boundary", input_base,
                        io::boundary_report_json(boundary_quotient_report(g))),
           inv.json_mode);
    } else if (*minimal) {
      emit(envelope_for("minimal", input_base,
                        io::minimal_report_json(minimal_ideal_report(g))),
           inv.json_mode);
    } else if (*euler) {
      emit(envelope_for("euler", input_base, io::euler_report(*g)), inv.json_mode);
    } else if (*verify) {
      return run_verify(g, inv);
    } else if (*components) {
      const ComponentDecomposition d = opp_components(g);
      json comps = json::array();
      for (std::size_t c = 0; c < d.count(); ++c) {
        json vertices = json::array();
        for (Gen v : d.components[c]) vertices.push_back(g->name(v));
        comps.push_back(json{{"name", d.component_name(c)}, {"vertices", std::move(vertices)}});
      }
      json isolated = json::array();
      for (Gen v : d.isolated) isolated.push_back(g->name(v));
      emit(envelope_for("components", input_base,
                        json{{"count", d.count()},
                             {"components", std::move(comps)},
                             {"isolated", std::move(isolated)}}),
           inv.json_mode);
    } else if (*core) {
      json names = json::array();
      for (Gen v : core_generators(*g)) names.push_back(g->name(v));
      emit(envelope_for("core", input_base,
                        json{{"core_generators", std::move(names)},
                             {"centre_rank", centre_rank(*g)},
                             {"centre_trivial", is_centre_trivial(*g)},
                             {"irreducible", is_graph_irreducible(g)}}),
           inv.json_mode);
    }
  } catch (const input_error& e) {
    if (inv.json_mode)
      std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump(2) << "\n";
    else
      std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    if (inv.json_mode)
      std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump(2) << "\n";
    else
      std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
