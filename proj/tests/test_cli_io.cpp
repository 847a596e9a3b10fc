#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "bct/cli.hpp"
#include "support/oracles.hpp"

using namespace bct;

namespace {

// Reference encoder written from the bit layout: collect the upper triangle column by column,
// pad to a multiple of six, then emit each sextet plus 63.
std::string reference_graph6(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  if (n <= 62) {
    out += static_cast<char>(n + 63);
  } else {
    out += '~';
    out += static_cast<char>(((n >> 12) & 63) + 63);
    out += static_cast<char>(((n >> 6) & 63) + 63);
    out += static_cast<char>((n & 63) + 63);
  }
  std::vector<int> bits;
  for (Point j = 1; j < n; ++j)
    for (Point i = 0; i < j; ++i) bits.push_back(g.has_edge(i, j) ? 1 : 0);
  while (bits.size() % 6) bits.push_back(0);
  for (std::size_t k = 0; k < bits.size(); k += 6) {
    int v = 0;
    for (std::size_t b = 0; b < 6; ++b) v = 2 * v + bits[k + b];
    out += static_cast<char>(v + 63);
  }
  return out;
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, const std::string& input = "") {
  const auto r = run(std::move(args), input);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

// The 4-cycle 0-2-1-3, whose upper triangle reads 011110.
Graph four_cycle() {
  Graph g(4);
  g.add_edge(0, 2);
  g.add_edge(2, 1);
  g.add_edge(1, 3);
  g.add_edge(3, 0);
  return g;
}

}  // namespace

TEST(Graph6, HandEncodedExamples) {
  EXPECT_EQ(encode_graph6(four_cycle()), "C]");
  EXPECT_EQ(reference_graph6(four_cycle()), "C]");
  EXPECT_EQ(encode_graph6(Graph(1)), "@");
  EXPECT_EQ(encode_graph6(Graph(0)), "?");
  const auto d = decode_graph6("C]").graph;
  EXPECT_EQ(d.order(), 4u);
  EXPECT_EQ(d.edges(), four_cycle().edges());
  const auto g = build_graph(gamma_dihedral({21, 2, 3}).triple).graph;
  EXPECT_EQ(decode_graph6(encode_graph6(g)).graph.edges(), g.edges());
}

TEST(Graph6, RandomRoundTripAgainstReferenceEncoder) {
  std::mt19937 rng(314);
  for (std::size_t n = 5; n <= 40; ++n) {
    for (int i = 0; i < 1000; ++i) {
      const Graph g = oracle::random_graph(n, 0.1 + 0.8 * (i % 10) / 9.0, rng);
      const auto text = encode_graph6(g);
      ASSERT_EQ(text, reference_graph6(g));
      const Graph back = decode_graph6(text).graph;
      ASSERT_EQ(back.order(), n);
      ASSERT_EQ(back.edges(), g.edges());
    }
  }
}

TEST(Graph6, LongSizeField) {
  std::mt19937 rng(2);
  for (std::size_t n : {62u, 63u, 100u, 300u}) {
    const Graph g = oracle::random_graph(n, 0.05, rng);
    const auto text = encode_graph6(g);
    ASSERT_EQ(text, reference_graph6(g)) << n;
    EXPECT_EQ(text[0] == '~', n > 62);
    EXPECT_EQ(decode_graph6(text).graph.edges(), g.edges());
  }
  EXPECT_THROW(decode_graph6("~~?"), ValidationError);
}

TEST(Graph6, RejectsMalformedInput) {
  EXPECT_THROW(decode_graph6(""), ValidationError);
  EXPECT_THROW(decode_graph6("C\x01"), ValidationError);
  EXPECT_THROW(decode_graph6("C] x"), ValidationError);
  EXPECT_THROW(decode_graph6("C"), ValidationError);
  EXPECT_THROW(decode_graph6("C]]"), ValidationError);
  EXPECT_EQ(decode_graph6("D??").graph.order(), 5u);
  EXPECT_THROW(decode_graph6("D?@"), ValidationError);  // padding bits set
  EXPECT_THROW(decode_graph6("~?"), ValidationError);
  EXPECT_EQ(decode_graph6(">>graph6<<C]\n").graph.edges(), four_cycle().edges());
  EXPECT_EQ(decode_graph6("C] \r\n").graph.order(), 4u);
}

TEST(Dot, LabelsCarryPartAnnotation) {
  const auto bg = build_graph(validate_triple(make_cyclic(5), {1, 4}, {2, 3}, {0}));
  const auto dot = export_dot(bg.graph, bg.labels());
  EXPECT_NE(dot.find("0 [label=\"1_0\"]"), std::string::npos);
  EXPECT_NE(dot.find("7 [label=\"a^2_1\"]"), std::string::npos);
  EXPECT_NE(dot.find("0 -- 5;"), std::string::npos);
  EXPECT_EQ(dot.rfind("graph G {\n", 0), 0u);

  const auto dih = build_graph(petersen().triple);
  EXPECT_EQ(dih.labels().size(), 10u);
  EXPECT_THROW(export_dot(four_cycle(), {"x"}), ValidationError);
  EXPECT_EQ(export_dot(Graph(1)), "graph G {\n  0;\n}\n");
}

TEST(RunReport, JsonRoundTrip) {
  const cli::GlobalOptions g;
  for (const auto& doc : {cli::family_document(example_c28()), cli::family_document(g_p(3))}) {
    const auto li = cli::load_input(doc.dump());
    const auto rr = cli::build_report(li, g, cli::ClassifyFlags{true, true, false});
    const auto j = run_report_to_json(rr);
    EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
    EXPECT_EQ(run_report_to_json(run_report_from_json(j)), j);
    EXPECT_TRUE(j.contains("timing_ms"));
  }
  const auto bare = cli::build_report(cli::load_input("C]"), g, {});
  const auto j = run_report_to_json(bare);
  EXPECT_EQ(run_report_to_json(run_report_from_json(j)), j);
  EXPECT_FALSE(bare.normaliser.has_value());
  EXPECT_EQ(bare.report.aut_order, std::optional<std::uint64_t>(8));
  EXPECT_EQ(bare.report.girth, std::optional<std::size_t>(4));
}

TEST(Cli, DihedralFamilyClassify) {
  const auto fam = run({"family", "gamma-dihedral", "--n", "21", "--lambda", "2", "--k", "3"});
  ASSERT_EQ(fam.code, 0) << fam.err;
  const auto j = run_json({"classify"}, fam.out);
  const auto& r = j.at("report");
  EXPECT_TRUE(r.at("semisymmetric").get<bool>());
  EXPECT_TRUE(r.at("edge_regular").get<bool>());
  EXPECT_EQ(r.at("aut_order"), 252);
  EXPECT_EQ(j.at("input").at("family"), "gamma-dihedral");
}

TEST(Cli, MetacyclicFamilyClassify) {
  const auto fam = run({"family", "g-p", "--p", "3"});
  ASSERT_EQ(fam.code, 0) << fam.err;
  const auto r = run_json({"classify"}, fam.out).at("report");
  EXPECT_TRUE(r.at("half_arc_transitive").get<bool>());
  EXPECT_EQ(r.at("aut_order"), 108);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"classify", "--in"}).code, cli::validation_error);
  EXPECT_EQ(run({}).code, cli::validation_error);
  EXPECT_EQ(run({"classify"}, "").code, cli::validation_error);
  EXPECT_EQ(run({"classify"}, "{\"bogus\": 1}").code, cli::validation_error);
  EXPECT_EQ(run({"classify"}, "{not json").code, cli::validation_error);
  EXPECT_EQ(run({"classify", "--in", "/nonexistent/file.g6"}).code, cli::validation_error);
  EXPECT_EQ(run({"family", "gamma-dihedral", "--n", "9", "--lambda", "2", "--k", "3"}).code, cli::validation_error);
  EXPECT_EQ(run({"family", "gamma-abelian", "--m", "1"}).code, cli::validation_error);
  EXPECT_EQ(run({"family", "nonesuch"}).code, cli::validation_error);
  EXPECT_EQ(run({"export", "--format", "png"}, "C]").code, cli::validation_error);

  const auto pet = run({"family", "petersen"}).out;
  const auto small = run({"--max-vertices", "8", "classify"}, pet);
  EXPECT_EQ(small.code, cli::bound_exceeded);
  EXPECT_NE(small.err.find("bound exceeded"), std::string::npos);
  const auto c28 = run({"family", "c28-example"}).out;
  EXPECT_EQ(run({"--max-group-order", "50", "classify", "--metacirculant"}, c28).code, cli::bound_exceeded);
  EXPECT_EQ(run({"--version"}).code, cli::ok);
}

TEST(Cli, OutputIsByteStable) {
  const auto c28 = run({"family", "c28-example"}).out;
  const auto a = run({"--seed", "7", "classify", "--cayley"}, c28);
  const auto b = run({"--seed", "7", "classify", "--cayley"}, c28);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out).at("input").at("seed"), 7);
  const auto s1 = run({"search", "cyclic", "--max-n", "6", "--max-valency", "3", "--predicate", "arc_transitive"});
  const auto s2 = run({"search", "cyclic", "--max-n", "6", "--max-valency", "3", "--predicate", "arc_transitive"});
  EXPECT_EQ(s1.out, s2.out);
}

TEST(Cli, SearchStreamsHitsAndSummary) {
  const auto r = run({"search", "dihedral", "--max-n", "5", "--max-valency", "3", "--predicate", "semisymmetric"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line, last;
  std::size_t hits = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("summary")) last = line;
    else ++hits;
  }
  const auto summary = nlohmann::json::parse(last).at("summary");
  EXPECT_EQ(summary.at("hits"), hits);
  EXPECT_EQ(hits, 0u);
  EXPECT_GT(summary.at("triples").get<std::size_t>(), 0u);

  const auto et = run({"search", "abelian", "--max-n", "6", "--max-valency", "3", "--predicate", "edge_transitive",
                       "--bi-abelian"});
  ASSERT_EQ(et.code, 0) << et.err;
  EXPECT_NE(et.out.find("\"report\""), std::string::npos);
  EXPECT_EQ(run({"search", "cyclic", "--predicate", "nonsense"}).code, cli::validation_error);
}

TEST(Cli, ExportAndNormaliser) {
  const auto fam = run({"family", "gamma-abelian", "--m", "1", "--n", "7", "--lambda", "3"}).out;
  const auto g6 = run({"export", "--format", "g6"}, fam);
  ASSERT_EQ(g6.code, 0) << g6.err;
  const auto direct = run({"family", "gamma-abelian", "--m", "1", "--n", "7", "--lambda", "3", "--format", "g6"});
  EXPECT_EQ(g6.out, direct.out);
  const auto graph_json = run_json({"export", "--format", "json"}, fam);
  EXPECT_EQ(graph_json.at("order"), 14);
  EXPECT_EQ(graph_json.at("labels").size(), 14u);
  const auto again = run({"export", "--format", "g6"}, graph_json.dump());
  EXPECT_EQ(again.out, g6.out);
  EXPECT_NE(run({"export", "--format", "dot"}, fam).out.find("8 [label=\"x_1\"]"), std::string::npos);

  const auto nor = run_json({"normaliser"}, fam);
  EXPECT_EQ(nor.at("two_arc_conditions").at("all"), false);
  EXPECT_EQ(nor.at("normal_arc_transitive"), true);
  EXPECT_EQ(nor.at("edge_orbits"), 1);
  EXPECT_EQ(nor.at("order").get<std::uint64_t>() % 7, 0u);
  const auto k33 = run({"family", "gamma-abelian", "--m", "1", "--n", "3", "--lambda", "2"}).out;
  EXPECT_EQ(run_json({"normaliser"}, k33).at("two_arc_conditions").at("all"), true);
  EXPECT_EQ(run({"normaliser"}, g6.out).code, cli::validation_error);

  const auto tetra = run({"family", "tetracirculant", "--n", "3", "--s00", "0", "--s01", "0,1,2", "--s10", "0",
                          "--s11", "1", "--format", "g6"});
  ASSERT_EQ(tetra.code, 0) << tetra.err;
  EXPECT_EQ(decode_graph6(tetra.out).graph.order(), 12u);
}

TEST(Cli, ThreadCapValidated) {
  ::setenv("BCT_THREADS", "0", 1);
  EXPECT_EQ(run({"family", "petersen"}).code, cli::validation_error);
  ::setenv("BCT_THREADS", "3", 1);
  EXPECT_EQ(run({"family", "petersen"}).code, cli::ok);
  ::unsetenv("BCT_THREADS");
}

TEST(Cli, BinaryPipeline) {
  const std::string cmd = std::string(BCT_CLI_PATH) +
                          " family gamma-dihedral --n 21 --lambda 2 --k 3 | " + BCT_CLI_PATH + " classify";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  EXPECT_EQ(::pclose(pipe), 0);
  const auto r = nlohmann::json::parse(out).at("report");
  EXPECT_TRUE(r.at("semisymmetric").get<bool>());
  EXPECT_EQ(r.at("aut_order"), 252);

  const std::string bad = std::string(BCT_CLI_PATH) + " classify --in 2>/dev/null";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
