#pragma once

// Command-line front end: family construction, classification, normaliser
// summaries, census search and format export.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "bct/bicayley.hpp"
#include "bct/census.hpp"
#include "bct/errors.hpp"
#include "bct/families.hpp"
#include "bct/graph_auto.hpp"
#include "bct/io.hpp"
#include "bct/subgroup_search.hpp"
#include "bct/symmetry_classify.hpp"

namespace bct::cli {

enum ExitCode : int { ok = 0, validation_error = 2, bound_exceeded = 3 };

/// What an input document decoded to: a triple (with provenance) or a bare graph.
struct LoadedInput {
  nlohmann::json provenance;
  std::optional<BiCayleyTriple> triple;
  Graph graph;
  std::vector<std::string> labels;
};

inline std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_all(in);
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open input file: " + path);
  return read_all(f);
}

/// JSON when the first non-blank character is '{', graph6 otherwise.
inline LoadedInput load_input(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ValidationError("empty input");
  LoadedInput li;
  if (text[first] != '{') {
    const auto end = text.find_first_of("\r\n", first);
    const std::string line = text.substr(first, end == std::string::npos ? std::string::npos : end - first);
    li.graph = decode_graph6(line).graph;
    li.provenance = {{"kind", "graph6"}, {"graph6", line}};
    return li;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON input: ") + e.what());
  }
  try {
    if (j.contains("triple")) {
      li.triple = triple_from_json(j.at("triple"));
      li.provenance = {{"kind", "family"},
                       {"family", j.value("family", std::string("unnamed"))},
                       {"params", j.value("params", nlohmann::json::object())}};
    } else if (j.contains("group")) {
      li.triple = triple_from_json(j);
      li.provenance = {{"kind", "triple"}, {"triple", j}};
    } else if (j.contains("edges")) {
      li.graph = graph_from_json(j);
      li.provenance = {{"kind", "graph"}};
      return li;
    } else {
      throw ValidationError("JSON input is neither a family document, a triple nor a graph");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed JSON input: ") + e.what());
  }
  auto bg = build_graph(*li.triple);
  li.graph = std::move(bg.graph);
  li.labels = bg.labels();
  return li;
}

inline nlohmann::json family_document(const FamilyMember& f) {
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "family"},
          {"family", f.family},
          {"params", f.params},
          {"triple", triple_to_json(f.triple)}};
}

inline std::vector<std::size_t> parse_residues(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(static_cast<std::size_t>(std::stoull(item)));
    } catch (const std::exception&) {
      throw ValidationError("not a residue list: " + s);
    }
  }
  return out;
}

inline std::vector<std::uint64_t> derived_series(const PermGroup& g, std::uint64_t bound) {
  std::vector<std::uint64_t> out{g.order()};
  if (g.order() > bound) return out;
  PermGroup cur = g;
  while (cur.order() > 1) {
    PermGroup next = cur.derived_subgroup();
    if (next.order() == cur.order()) break;
    out.push_back(next.order());
    cur = std::move(next);
  }
  return out;
}

struct GlobalOptions {
  std::size_t max_vertices = 2000;
  std::uint64_t max_group_order = 10000;
  std::optional<std::uint64_t> seed;
};

inline AutOptions aut_options(const GlobalOptions& g) { return AutOptions{g.max_vertices}; }

inline nlohmann::json permutation_json(const Permutation& p) { return p.to_cycle_string(); }

inline int cmd_family(const std::string& name, const std::map<std::string, std::size_t>& num,
                      const std::map<std::string, std::string>& lists, const std::string& format, std::ostream& out) {
  auto need = [&num, &name](const char* k) {
    auto it = num.find(k);
    if (it == num.end()) throw ValidationError("family " + name + " needs --" + k);
    return it->second;
  };
  if (name == "tetracirculant") {
    auto get = [&lists](const char* k) {
      auto it = lists.find(k);
      if (it == lists.end() || it->second.empty()) throw ValidationError(std::string("tetracirculant needs --") + k);
      return parse_residues(it->second);
    };
    const auto g = tetracirculant(need("n"), get("s00"), get("s01"), get("s10"), get("s11"));
    if (format == "g6") out << encode_graph6(g) << "\n";
    else if (format == "dot") out << export_dot(g.graph);
    else out << graph_to_json(g.graph).dump(2) << "\n";
    return ok;
  }
  FamilyMember f;
  if (name == "gamma-abelian") f = gamma_abelian({need("m"), need("n"), need("lambda")});
  else if (name == "gamma-dihedral") f = gamma_dihedral({need("n"), need("lambda"), need("k")});
  else if (name == "g-p") f = g_p(need("p"));
  else if (name == "h-p") f = h_p(need("p"));
  else if (name == "c28-example") f = example_c28();
  else if (name == "counterexample-54") f = counterexample_54();
  else if (name == "petersen") f = petersen();
  else throw ValidationError("unknown family: " + name);
  if (format == "g6") {
    out << encode_graph6(build_graph(f.triple).graph) << "\n";
  } else if (format == "dot") {
    auto bg = build_graph(f.triple);
    out << export_dot(bg.graph, bg.labels());
  } else {
    out << family_document(f).dump(2) << "\n";
  }
  return ok;
}

struct ClassifyFlags {
  bool timing = false;
  bool cayley = false;
  bool metacirculant = false;
};

inline RunReport build_report(const LoadedInput& li, const GlobalOptions& g, const ClassifyFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rr;
  rr.input = li.provenance;
  if (g.seed) rr.input["seed"] = *g.seed;
  const PermGroup aut = automorphism_group(li.graph, aut_options(g));
  rr.report = classify(li.graph, aut);
  rr.derived_series = derived_series(aut, g.max_group_order);
  if (li.triple && is_connected(li.graph)) {
    const auto bg = build_graph(*li.triple);
    const auto auts = enumerate_automorphisms(li.triple->H());
    const auto x = normaliser_group(bg, auts);
    rr.normaliser = NormaliserSummary{to_string(x.shape), x.group.order(),
                                      orbits_on(x.group, li.graph, OrbitDomain::edges).count, x.F.size(), x.I.size()};
    rr.regular_normal = is_normal_in(right_regular_generators(*li.triple), aut);
  }
  const SearchOptions so{g.max_group_order};
  if (flags.cayley) {
    const auto res = regular_subgroup_search(aut, so);
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& p : res.generators) gens.push_back(permutation_json(p));
    rr.extras["regular_subgroup"] = {{"status", to_string(res.status)}, {"generators", gens}};
  }
  if (flags.metacirculant) {
    if (aut.order() > g.max_group_order) throw BoundExceeded("metacirculant search bound exceeded");
    nlohmann::json table = nlohmann::json::array();
    for (const auto& [mn, found] : metacirculant_table(aut, so))
      table.push_back({{"m", mn.first}, {"n", mn.second}, {"metacirculant", found}});
    nlohmann::json weak = nullptr;
    if (auto w = weak_metacirculant_witness(aut, so))
      weak = {{"a", permutation_json(w->a)}, {"b", permutation_json(w->b)}, {"order", w->order}};
    rr.extras["metacirculant"] = {{"table", table}, {"weak_witness", weak}};
  }
  if (flags.timing)
    rr.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rr;
}

inline nlohmann::json normaliser_document(const BiCayleyTriple& t) {
  const auto bg = build_graph(t);
  const auto auts = enumerate_automorphisms(t.H());
  const auto x = normaliser_group(bg, auts);
  nlohmann::json f = nlohmann::json::array(), i = nlohmann::json::array();
  for (const auto& p : x.F) f.push_back({{"alpha", p.alpha.image}, {"g", p.g}});
  for (const auto& p : x.I) i.push_back({{"alpha", p.alpha.image}, {"x", p.x}, {"y", p.y}});
  nlohmann::json conditions = nullptr;
  if (t.R.empty() && t.L.empty() && !t.S.empty() && t.S.front() == 0) {
    const auto c = normal_two_arc_conditions(t, auts);
    conditions = {{"a", c.a}, {"b", c.b}, {"c", c.c}, {"all", c.all()}};
  }
  return {{"schema_version", kReportSchemaVersion},
          {"F", f},
          {"I", i},
          {"shape", to_string(x.shape)},
          {"order", x.group.order()},
          {"edge_orbits", orbits_on(x.group, bg.graph, OrbitDomain::edges).count},
          {"normal_edge_transitive", normal_edge_transitive(bg, x).holds},
          {"normal_locally_arc_transitive", normal_locally_arc_transitive(bg, x)},
          {"normal_arc_transitive", normal_arc_transitive(bg, x, auts)},
          {"normal_half_arc_transitive", normal_half_arc_transitive(bg, x, auts)},
          {"two_arc_conditions", conditions}};
}

inline int cmd_search(const std::string& host, std::size_t max_n, std::size_t max_valency, const std::string& predicate,
                      bool bi_abelian, const GlobalOptions& g, std::ostream& out) {
  const Predicate p = predicate_from_string(predicate);
  EnumerationConstraints c;
  c.max_valency = max_valency;
  c.bi_abelian_only = bi_abelian;
  CensusSummary total;
  for (const auto& h : host_groups(host, max_n)) {
    const auto s = census(
        h, c, p,
        [&out](const CensusHit& hit) {
          nlohmann::json line{{"triple", triple_to_json(hit.triple)}, {"report", report_to_json(hit.report)}};
          out << line.dump() << "\n";
        },
        aut_options(g));
    total.triples += s.triples;
    total.classified += s.classified;
    total.hits += s.hits;
  }
  out << nlohmann::json{{"summary",
                         {{"host", host},
                          {"max_n", max_n},
                          {"max_valency", max_valency},
                          {"predicate", predicate},
                          {"triples", total.triples},
                          {"classified", total.classified},
                          {"hits", total.hits}}}}
             .dump()
      << "\n";
  return ok;
}

inline int cmd_export(const LoadedInput& li, const std::string& format, std::ostream& out) {
  if (format == "g6") out << encode_graph6(li.graph) << "\n";
  else if (format == "dot") out << export_dot(li.graph, li.labels);
  else if (format == "json") {
    auto j = graph_to_json(li.graph);
    if (!li.labels.empty()) j["labels"] = li.labels;
    out << j.dump(2) << "\n";
  } else throw ValidationError("unknown export format: " + format);
  return ok;
}

/// Worker cap from BCT_THREADS; the engines are sequential so any positive value is accepted.
inline std::size_t thread_cap() {
  const char* v = std::getenv("BCT_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (*end != '\0' || n == 0) throw ValidationError("BCT_THREADS must be a positive integer");
  return n;
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"bi-Cayley graph symmetry toolkit", "bct"};
  app.require_subcommand(1);
  GlobalOptions g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomised test harnesses");
  app.add_option("--max-vertices", g.max_vertices, "Largest graph order for automorphism computations");
  app.add_option("--max-group-order", g.max_group_order, "Largest group order for subgroup searches");
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* fam = app.add_subcommand("family", "Construct a named family member");
  std::string fam_name, fam_format = "json";
  std::map<std::string, std::size_t> num;
  std::map<std::string, std::string> lists;
  fam->add_option("name", fam_name, "Family name")->required();
  for (const char* k : {"m", "n", "lambda", "k", "p"}) {
    fam->add_option_function<std::size_t>(std::string("--") + k, [&num, k](const std::size_t& v) { num[k] = v; });
  }
  for (const char* k : {"s00", "s01", "s10", "s11"}) {
    fam->add_option_function<std::string>(std::string("--") + k, [&lists, k](const std::string& v) { lists[k] = v; },
                                           "Comma-separated residues");
  }
  fam->add_option("--format", fam_format)->check(CLI::IsMember({"json", "g6", "dot"}));

  auto* cls = app.add_subcommand("classify", "Classify a graph or triple");
  std::string cls_in = "-";
  ClassifyFlags flags;
  cls->add_option("--in", cls_in, "Input file (graph6 or JSON); '-' reads stdin");
  cls->add_flag("--timing", flags.timing, "Include wall-clock timing");
  cls->add_flag("--cayley", flags.cayley, "Search for a regular subgroup");
  cls->add_flag("--metacirculant", flags.metacirculant, "Metacirculant and weak metacirculant searches");

  auto* nor = app.add_subcommand("normaliser", "Normaliser of R(H) for a triple");
  std::string nor_in = "-";
  nor->add_option("--in", nor_in, "Triple JSON file; '-' reads stdin");

  auto* sea = app.add_subcommand("search", "Exhaustive census over a host family");
  std::string host, predicate = "semisymmetric";
  std::size_t max_n = 8, max_valency = 4;
  bool bi_abelian = false;
  sea->add_option("host", host, "cyclic | dihedral | abelian")->required();
  sea->add_option("--max-n", max_n, "Largest host parameter (group order, or n for D_n)");
  sea->add_option("--max-valency", max_valency, "Largest valency");
  sea->add_option("--predicate", predicate, "Report flag to search for");
  sea->add_flag("--bi-abelian", bi_abelian, "Only triples with R = L = empty");

  auto* exp = app.add_subcommand("export", "Convert a graph or triple");
  std::string exp_in = "-", exp_format = "g6";
  exp->add_option("--in", exp_in, "Input file; '-' reads stdin");
  exp->add_option("--format", exp_format)->check(CLI::IsMember({"g6", "dot", "json"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return validation_error;
  }
  if (*seed_opt) g.seed = seed;

  try {
    thread_cap();
    if (*fam) return cmd_family(fam_name, num, lists, fam_format, out);
    if (*cls) {
      const auto li = load_input(read_source(cls_in, in));
      out << run_report_to_json(build_report(li, g, flags)).dump(2) << "\n";
      return ok;
    }
    if (*nor) {
      const auto li = load_input(read_source(nor_in, in));
      if (!li.triple) throw ValidationError("normaliser needs a triple, not a bare graph");
      out << normaliser_document(*li.triple).dump(2) << "\n";
      return ok;
    }
    if (*sea) return cmd_search(host, max_n, max_valency, predicate, bi_abelian, g, out);
    if (*exp) return cmd_export(load_input(read_source(exp_in, in)), exp_format, out);
  } catch (const BoundExceeded& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return bound_exceeded;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << "\n";
    return validation_error;
  } catch (const std::domain_error& e) {
    err << "validation error: " << e.what() << "\n";
    return validation_error;
  } catch (const nlohmann::json::exception& e) {
    err << "validation error: " << e.what() << "\n";
    return validation_error;
  }
  return validation_error;
}

}  // namespace bct::cli
