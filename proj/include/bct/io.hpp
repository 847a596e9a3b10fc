#pragma once

// graph6 encoding, DOT export and the JSON run report.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bct/errors.hpp"
#include "bct/graph.hpp"
#include "bct/symmetry_classify.hpp"

namespace bct {

inline constexpr const char* kToolVersion = "0.3.1";
inline constexpr int kReportSchemaVersion = 1;

// ---------------------------------------------------------------------------
// graph6

namespace detail {

inline void put_size(std::string& out, std::size_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else if (n <= 68719476735ULL) {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    throw ValidationError("graph too large for graph6");
  }
}

}  // namespace detail

inline std::string encode_graph6(const Graph& g) {
  std::string out;
  const std::size_t n = g.order();
  detail::put_size(out, n);
  unsigned acc = 0, bits = 0;
  for (Point j = 1; j < n; ++j) {
    for (Point i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1u : 0u);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

inline std::string encode_graph6(const ColoredGraph& g) { return encode_graph6(g.graph); }

/// Accepts an optional ">>graph6<<" header and trailing whitespace.
inline ColoredGraph decode_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  for (char ch : text)
    if (ch < 63 || ch > 126) throw ValidationError("graph6: non-printable byte");
  if (text.empty()) throw ValidationError("graph6: empty input");
  std::size_t pos = 0, n = 0;
  auto take = [&](int count) {
    std::size_t v = 0;
    for (int i = 0; i < count; ++i) {
      if (pos >= text.size()) throw ValidationError("graph6: truncated size field");
      v = (v << 6) | static_cast<std::size_t>(text[pos++] - 63);
    }
    return v;
  };
  if (text[0] != 126) {
    n = take(1);
  } else if (text.size() > 1 && text[1] == 126) {
    pos = 2;
    n = take(6);
  } else {
    pos = 1;
    n = take(3);
  }
  const std::size_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t nbytes = (nbits + 5) / 6;
  if (text.size() - pos != nbytes) throw ValidationError("graph6: wrong body length for the vertex count");
  Graph g(n);
  std::size_t k = 0;
  for (Point j = 1; j < n; ++j) {
    for (Point i = 0; i < j; ++i, ++k) {
      const unsigned byte = static_cast<unsigned>(text[pos + k / 6] - 63);
      if ((byte >> (5 - k % 6)) & 1u) g.add_edge(i, j);
    }
  }
  if (nbits % 6 != 0) {
    const unsigned last = static_cast<unsigned>(text.back() - 63);
    if (last & ((1u << (6 - nbits % 6)) - 1)) throw ValidationError("graph6: nonzero padding bits");
  }
  return ColoredGraph(std::move(g));
}

// ---------------------------------------------------------------------------
// DOT

inline std::string export_dot(const Graph& g, const std::vector<std::string>& labels = {}) {
  if (!labels.empty() && labels.size() != g.order()) throw ValidationError("label count differs from vertex count");
  std::ostringstream os;
  os << "graph G {\n";
  for (Point v = 0; v < g.order(); ++v) {
    os << "  " << v;
    if (!labels.empty()) os << " [label=\"" << labels[v] << "\"]";
    os << ";\n";
  }
  for (const auto& [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"order", g.order()}, {"edges", edges}};
}

inline Graph graph_from_json(const nlohmann::json& j) {
  Graph g(j.at("order").get<std::size_t>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ValidationError("edge must be a pair");
    const auto u = e[0].get<Point>(), v = e[1].get<Point>();
    if (u >= g.order() || v >= g.order() || u == v) throw ValidationError("edge endpoint out of range or loop");
    g.add_edge(u, v);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Run report

struct NormaliserSummary {
  std::string shape;
  std::uint64_t order = 0;
  std::size_t edge_orbits = 0;
  std::size_t f_size = 0;
  std::size_t i_size = 0;
};

struct RunReport {
  nlohmann::json input;  // {"kind": "family"|"graph6"|"graph"|"triple", ...}
  SymmetryReport report;
  std::optional<NormaliserSummary> normaliser;
  std::optional<bool> regular_normal;  // R(H) normal in Aut
  std::vector<std::uint64_t> derived_series;
  nlohmann::json extras = nlohmann::json::object();  // optional searches requested on the command line
  std::optional<double> timing_ms;
  std::string tool_version = kToolVersion;
};

inline nlohmann::json run_report_to_json(const RunReport& r) {
  nlohmann::json j{{"schema_version", kReportSchemaVersion},
                   {"tool_version", r.tool_version},
                   {"input", r.input},
                   {"report", report_to_json(r.report)},
                   {"derived_series", r.derived_series}};
  if (r.normaliser)
    j["normaliser"] = {{"shape", r.normaliser->shape},
                       {"order", r.normaliser->order},
                       {"edge_orbits", r.normaliser->edge_orbits},
                       {"F_size", r.normaliser->f_size},
                       {"I_size", r.normaliser->i_size}};
  else
    j["normaliser"] = nullptr;
  j["regular_subgroup_normal"] = r.regular_normal ? nlohmann::json(*r.regular_normal) : nlohmann::json(nullptr);
  j["extras"] = r.extras;
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  return j;
}

inline RunReport run_report_from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != kReportSchemaVersion) throw ValidationError("unsupported report schema version");
  RunReport r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.input = j.at("input");
  r.report = report_from_json(j.at("report"));
  r.derived_series = j.at("derived_series").get<std::vector<std::uint64_t>>();
  if (!j.at("normaliser").is_null()) {
    const auto& n = j["normaliser"];
    r.normaliser = NormaliserSummary{n.at("shape").get<std::string>(), n.at("order").get<std::uint64_t>(),
                                     n.at("edge_orbits").get<std::size_t>(), n.at("F_size").get<std::size_t>(),
                                     n.at("I_size").get<std::size_t>()};
  }
  if (!j.at("regular_subgroup_normal").is_null()) r.regular_normal = j["regular_subgroup_normal"].get<bool>();
  r.extras = j.at("extras");
  if (j.contains("timing_ms")) r.timing_ms = j["timing_ms"].get<double>();
  return r;
}

}  // namespace bct
