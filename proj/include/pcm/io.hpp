// Text input (CSV or JSON) and JSON/CSV/table output for the CLI.
//
// Cells are kept as text until the backend is chosen, so "8.5" can become
// either 17/2 or a double.

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcm/efficiency.hpp"
#include "pcm/matrix.hpp"
#include "pcm/perron.hpp"

namespace pcm {

using json = nlohmann::json;

enum class Backend { automatic, exact, floating };

inline const char* backend_name(Backend b) {
  switch (b) {
    case Backend::automatic: return "auto";
    case Backend::exact: return "exact";
    case Backend::floating: return "float";
  }
  return "?";
}

struct TextGrid {
  std::vector<std::vector<std::string>> cells;
  bool has_rational = false;  // some cell is a p/q literal
};

namespace detail {

inline std::string cell_text(const json& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number()) return c.dump();
  throw Error(Errc::parse_error, "cell is neither a number nor a string: " + c.dump());
}

inline std::vector<std::string> json_row(const json& row) {
  if (!row.is_array()) throw Error(Errc::parse_error, "expected an array of cells");
  std::vector<std::string> out;
  for (const auto& c : row) out.push_back(cell_text(c));
  return out;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  if (line.find_first_of(",;") != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const std::size_t end = line.find_first_of(",;", start);
      const auto cell = trim(line.substr(start, end == std::string_view::npos ? line.npos : end - start));
      if (cell.empty()) throw Error(Errc::parse_error, "empty CSV cell");
      out.emplace_back(cell);
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
    return out;
  }
  std::istringstream in{std::string(line)};
  std::string cell;
  while (in >> cell) out.push_back(cell);
  return out;
}

inline void mark_rationals(TextGrid& g) {
  for (const auto& row : g.cells) {
    for (const auto& c : row) {
      if (is_rational_literal(c)) g.has_rational = true;
    }
  }
}

}  // namespace detail

/// Parses a matrix from CSV (comma, semicolon or whitespace separated; '#'
/// starts a comment line) or JSON ({"n":..,"entries":[[..]]} or a bare
/// array of rows). Cells may be decimals or "p/q".
inline TextGrid parse_matrix_text(const std::string& text) {
  TextGrid g;
  const auto t = detail::trim(text);
  if (t.empty()) throw Error(Errc::parse_error, "empty matrix input");
  if (t.front() == '{' || t.front() == '[') {
    json doc;
    try {
      doc = json::parse(t);
    } catch (const json::exception& e) {
      throw Error(Errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    const json* rows = &doc;
    if (doc.is_object()) {
      if (!doc.contains("entries")) throw Error(Errc::parse_error, "JSON matrix needs an \"entries\" field");
      rows = &doc["entries"];
    }
    if (!rows->is_array()) throw Error(Errc::parse_error, "matrix entries must be an array of rows");
    for (const auto& r : *rows) g.cells.push_back(detail::json_row(r));
    if (doc.is_object() && doc.contains("n")) {
      if (!doc["n"].is_number_integer() || doc["n"].get<long>() != static_cast<long>(g.cells.size())) {
        throw Error(Errc::bad_shape, "\"n\" does not match the number of rows");
      }
    }
  } else {
    std::istringstream in{std::string(t)};
    std::string line;
    while (std::getline(in, line)) {
      const auto l = detail::trim(line);
      if (l.empty() || l.front() == '#') continue;
      g.cells.push_back(detail::split_csv_line(l));
    }
  }
  detail::mark_rationals(g);
  return g;
}

/// Parses a vector: one CSV row, one CSV column, a JSON array, or a JSON
/// object with a "w" or "vector" field.
inline TextGrid parse_vector_text(const std::string& text) {
  const auto t = detail::trim(text);
  if (t.empty()) throw Error(Errc::parse_error, "empty vector input");
  TextGrid g;
  if (t.front() == '{' || t.front() == '[') {
    json doc;
    try {
      doc = json::parse(t);
    } catch (const json::exception& e) {
      throw Error(Errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    if (doc.is_object()) {
      if (doc.contains("w")) {
        json inner = doc["w"];
        doc = std::move(inner);
      } else if (doc.contains("vector")) {
        json inner = doc["vector"];
        doc = std::move(inner);
      } else {
        throw Error(Errc::parse_error, "JSON vector needs a \"w\" or \"vector\" field");
      }
    }
    g.cells.push_back(detail::json_row(doc));
  } else {
    TextGrid rows = parse_matrix_text(std::string(t));
    std::vector<std::string> flat;
    const bool column = std::all_of(rows.cells.begin(), rows.cells.end(), [](const auto& r) { return r.size() == 1; });
    if (rows.cells.size() != 1 && !column) throw Error(Errc::bad_shape, "vector must be a single row or column");
    for (const auto& r : rows.cells) flat.insert(flat.end(), r.begin(), r.end());
    g.cells.push_back(std::move(flat));
  }
  detail::mark_rationals(g);
  return g;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// p/q literals force exact; otherwise the request wins, defaulting to float.
inline Backend resolve_backend(Backend requested, bool has_rational) {
  if (has_rational) return Backend::exact;
  return requested == Backend::exact ? Backend::exact : Backend::floating;
}

template <Scalar T>
ReciprocalMatrix<T> to_matrix(const TextGrid& g, const Tolerances& tol = {}) {
  Grid<T> grid;
  for (const auto& row : g.cells) {
    std::vector<T> r;
    for (const auto& c : row) r.push_back(parse_scalar<T>(c));
    grid.push_back(std::move(r));
  }
  return ReciprocalMatrix<T>::validate(grid, tol);
}

template <Scalar T>
WeightVector<T> to_vector(const TextGrid& g) {
  if (g.cells.size() != 1) throw Error(Errc::bad_shape, "expected a single vector");
  std::vector<T> v;
  for (const auto& c : g.cells.front()) v.push_back(parse_scalar<T>(c));
  return WeightVector<T>(std::move(v));
}

/// Exact values serialize as strings ("17/2"), floats as JSON numbers.
inline json scalar_json(const Rational& q) { return to_string(q); }
inline json scalar_json(double x) { return x; }

template <Scalar T>
json vector_json(const WeightVector<T>& w) {
  json a = json::array();
  for (const auto& x : w) a.push_back(scalar_json(x));
  return a;
}

inline json one_based(const IndexSet& s) {
  json a = json::array();
  for (Index i : s) a.push_back(i + 1);
  return a;
}

template <Scalar T>
json verdict_json(const EfficiencyVerdict<T>& v) {
  json out;
  out["status"] = v.efficient ? "efficient" : "inefficient";
  json parts = json::array();
  for (const auto& c : v.scc_partition) parts.push_back(one_based(c));
  out["scc_partition"] = parts;
  if (v.source_set) out["source_set"] = one_based(*v.source_set);
  if (v.dominator) out["dominator"] = vector_json(*v.dominator);
  json edges = json::array();
  for (auto [i, j] : v.edge_list) edges.push_back({i + 1, j + 1});
  out["edge_list"] = edges;
  return out;
}

inline json perron_json(const PerronReport& r) {
  json out;
  out["lambda"] = r.result.lambda;
  out["vector"] = vector_json(r.result.w);
  out["residual"] = r.result.residual;
  out["iterations"] = r.result.iterations;
  out["structure_ok"] = r.structure_ok;
  if (r.block_size) out["block_size"] = *r.block_size;
  if (r.sufficient_condition) {
    out["sufficient_condition"] = condition_name(*r.sufficient_condition);
    out["block_reversed"] = r.block_reversed;
  } else {
    out["sufficient_condition"] = nullptr;
  }
  out["cycles"] = r.cycles;
  out["verdict"] = r.efficient ? "efficient" : "inefficient";
  if (!r.efficient) out["certificate"] = verdict_json(r.verdict);
  return out;
}

}  // namespace pcm
