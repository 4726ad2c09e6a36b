#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwmix/complex_matrix.hpp"
#include "qwmix/error.hpp"
#include "qwmix/graphs.hpp"
#include "qwmix/measured.hpp"
#include "qwmix/mixing.hpp"
#include "qwmix/quotient.hpp"
#include "qwmix/version.hpp"

namespace qwmix {

using json = nlohmann::json;

// FNV-1a over the raw input text; reports carry it so a result can be tied
// back to the exact bytes it was computed from.
inline std::string fnv1a_digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

inline json matrix_to_json(const ComplexMatrix& m) {
  if (!m.square()) fail(ErrorCode::NotSquare, "only square matrices are serialized");
  json entries = json::array();
  for (const cplx& z : m.data()) entries.push_back(json::array({z.real(), z.imag()}));
  return json{{"n", m.rows()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    fail(ErrorCode::BadInput, "matrix JSON needs fields 'n' and 'entries'");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    fail(ErrorCode::BadInput, "field 'n' must be a positive integer");
  const std::size_t n = j["n"].get<std::size_t>();
  if (n > kOrderCap) fail(ErrorCode::SizeCap, "matrix order exceeds cap");
  const json& e = j["entries"];
  if (!e.is_array() || e.size() != n * n)
    fail(ErrorCode::BadInput, "field 'entries' must hold n*n pairs");
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const json& pair = e[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      fail(ErrorCode::BadInput, "entry " + std::to_string(k) + " must be [re, im]");
    m.at(k / n, k % n) = cplx(pair[0].get<double>(), pair[1].get<double>());
  }
  if (!m.all_finite()) fail(ErrorCode::BadInput, "matrix has non-finite entries");
  return m;
}

inline json graph_spec_to_json(const GraphSpec& g) {
  json j{{"kind", g.kind}};
  if (g.n > 0) j["n"] = g.n;
  if (g.d > 0) j["d"] = g.d;
  if (g.power != 1) j["power"] = g.power;
  if (!g.signing.empty() && g.signing != "none") j["signing"] = g.signing;
  if (!g.first_row.empty()) {
    json row = json::array();
    for (const cplx& z : g.first_row) row.push_back(json::array({z.real(), z.imag()}));
    j["first_row"] = std::move(row);
  }
  if (!g.edges.empty()) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
    j["edges"] = std::move(edges);
  }
  if (!g.table.empty()) j["table"] = g.table;
  if (!g.connection.empty()) j["connection"] = g.connection;
  if (g.cone) j["cone"] = true;
  if (g.scaled) j["scaled"] = true;
  return j;
}

inline GraphSpec graph_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(ErrorCode::BadInput, "graph spec needs a string field 'kind'");
  static const std::set<std::string> known{"kind", "n",     "d",          "power", "signing",
                                           "first_row", "edges", "table", "connection", "cone",  "scaled"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) fail(ErrorCode::BadInput, "unknown graph spec field '" + key + "'");
  GraphSpec g;
  g.kind = j["kind"].get<std::string>();
  auto read_size = [&](const char* field, std::size_t fallback) -> std::size_t {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number_integer() || j[field].get<long long>() < 0)
      fail(ErrorCode::BadInput, std::string("field '") + field + "' must be a nonnegative integer");
    return j[field].get<std::size_t>();
  };
  g.n = read_size("n", 0);
  g.d = read_size("d", 0);
  g.power = read_size("power", 1);
  if (j.contains("signing")) {
    if (!j["signing"].is_string()) fail(ErrorCode::BadInput, "field 'signing' must be a string");
    g.signing = j["signing"].get<std::string>();
  }
  if (j.contains("first_row")) {
    const json& row = j["first_row"];
    if (!row.is_array()) fail(ErrorCode::BadInput, "field 'first_row' must be an array");
    for (const json& pair : row) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
        fail(ErrorCode::BadInput, "first_row entries must be [re, im]");
      g.first_row.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  if (j.contains("edges")) {
    const json& edges = j["edges"];
    if (!edges.is_array()) fail(ErrorCode::BadInput, "field 'edges' must be an array");
    for (const json& e : edges) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          e[0].get<long long>() < 0 || e[1].get<long long>() < 0)
        fail(ErrorCode::BadInput, "edges must be pairs of vertex indices");
      g.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
  }
  if (j.contains("table")) {
    const json& table = j["table"];
    if (!table.is_array()) fail(ErrorCode::BadInput, "field 'table' must be an array of rows");
    for (const json& row : table) {
      if (!row.is_array()) fail(ErrorCode::BadInput, "table rows must be arrays");
      std::vector<std::size_t> r;
      for (const json& x : row) {
        if (!x.is_number_integer() || x.get<long long>() < 0)
          fail(ErrorCode::BadInput, "table entries must be nonnegative integers");
        r.push_back(x.get<std::size_t>());
      }
      g.table.push_back(std::move(r));
    }
  }
  if (j.contains("connection")) {
    const json& conn = j["connection"];
    if (!conn.is_array()) fail(ErrorCode::BadInput, "field 'connection' must be an array");
    for (const json& x : conn) {
      if (!x.is_number_integer() || x.get<long long>() < 0)
        fail(ErrorCode::BadInput, "connection entries must be nonnegative integers");
      g.connection.push_back(x.get<std::size_t>());
    }
  }
  auto read_flag = [&](const char* field) -> bool {
    if (!j.contains(field)) return false;
    if (!j[field].is_boolean()) fail(ErrorCode::BadInput, std::string("field '") + field + "' must be a boolean");
    return j[field].get<bool>();
  };
  g.cone = read_flag("cone");
  g.scaled = read_flag("scaled");
  if (g.scaled && !g.cone) fail(ErrorCode::BadInput, "'scaled' requires 'cone'");
  return g;
}

inline json mixing_to_json(const MixingMatrix& m) {
  return json{{"n", m.n}, {"time", m.time}, {"entries", m.p}};
}

inline json average_mixing_to_json(const AverageMixingMatrix& m) {
  return json{{"n", m.n}, {"exact", m.exact}, {"entries", m.p}, {"trace", m.trace()}};
}

inline json uniformity_to_json(const UniformityReport& r) {
  return json{{"uniform", r.uniform},
              {"epsilon", r.epsilon},
              {"max_deviation", r.max_deviation},
              {"worst", json::array({r.worst_u, r.worst_v})}};
}

inline json search_to_json(const SearchResult& r) {
  json j{{"found", r.time.has_value()},
         {"min_deviation", r.min_deviation},
         {"argmin", r.argmin}};
  if (r.time) j["time"] = *r.time;
  return j;
}

inline json run_stats_to_json(const RunStats& s) {
  return json{{"trials", s.trials},
              {"hits", s.hits},
              {"hit_rate", s.hit_rate},
              {"mean_rounds_to_hit", s.mean_rounds_to_hit},
              {"mean_time_to_hit", s.mean_time_to_hit},
              {"max_final_deviation", s.max_final_deviation},
              {"round_attempts", s.round_attempts},
              {"round_hits", s.round_hits}};
}

inline json certificate_to_json(const std::optional<SwitchingCertificate>& c) {
  if (!c) return json{{"equivalent", false}};
  json diag = json::array();
  for (const cplx& z : c->diag) diag.push_back(json::array({z.real(), z.imag()}));
  return json{{"equivalent", true}, {"diagonal", std::move(diag)}, {"residual", c->residual}};
}

// Stamps a payload with the tool version and the digest of the input bytes
// it was derived from.
inline json make_report(json payload, const std::string& input_text) {
  payload["version"] = kVersion;
  payload["input_digest"] = fnv1a_digest(input_text);
  return payload;
}

}  // namespace qwmix
