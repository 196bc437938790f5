#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccwl/coherent.hpp"
#include "ccwl/factorization.hpp"
#include "ccwl/graph6.hpp"
#include "ccwl/kwl.hpp"
#include "ccwl/tensor_checks.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

using json = nlohmann::json;

inline std::string digest_string(std::uint64_t lo, std::uint64_t hi) {
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << lo << std::setw(16) << hi;
  return out.str();
}

inline json to_json(const refine_trace_entry& entry) {
  return json{{"rank", entry.rank},
              {"freqs", entry.freqs},
              {"digest", digest_string(entry.digest_lo, entry.digest_hi)}};
}

inline json to_json(const coherent_configuration& cc) {
  json tags = json::object();
  for (const auto& [name, colors] : cc.tags) tags[name] = colors;
  json trace = json::array();
  for (const auto& entry : cc.trace) trace.push_back(to_json(entry));
  json out{{"n", cc.n()},
           {"rank", cc.rank()},
           {"color_matrix", cc.color_matrix()},
           {"transpose_map", cc.transpose_map()},
           {"reflexive_colors", cc.reflexive_colors()},
           {"tags", tags}};
  if (!cc.trace.empty()) out["trace"] = trace;
  return out;
}

inline json to_json(const intersection_tensor& tensor) {
  json out = json::array();
  for (const auto& [key, value] : tensor.entries)
    out.push_back(json::array({key[0], key[1], key[2], value}));
  return out;
}

inline json to_json(const ktuple_coloring& kt) {
  json trace = json::array();
  for (const auto& entry : kt.trace) trace.push_back(to_json(entry));
  return json{{"n", kt.n}, {"k", kt.k}, {"rank", kt.rank}, {"trace", trace}};
}

inline json to_json(const factorization_report& report) {
  json factor_graph6 = json::array();
  for (const graph& f : report.factors) factor_graph6.push_back(serialize_graph6(f));
  json edges = json::array();
  for (auto [u, v] : report.unordered_edges) edges.push_back(json::array({u, v}));
  return json{{"num_factors", report.num_factors},
              {"factor_orders", [&] {
                 std::vector<int> orders;
                 for (const graph& f : report.factors) orders.push_back(f.n());
                 return orders;
               }()},
              {"factor_graph6", factor_graph6},
              {"edges", edges},
              {"edge_classes", report.edge_class},
              {"certified", report.certified}};
}

inline json to_json(const product_decomposition_report& report) {
  json inclusions = json::array();
  for (const auto& inc : report.class_inclusions)
    inclusions.push_back(json{{"class", inc.class_index}, {"holds", inc.holds}, {"strict", inc.strict}});
  json hypothesis;
  if (report.hypothesis_2closed.has_value()) hypothesis = *report.hypothesis_2closed;
  return json{{"num_factors", report.num_factors},
              {"factor_orders", report.factor_orders},
              {"product_order", report.product_order},
              {"classes", report.classes},
              {"hypothesis_2closed", hypothesis},
              {"tensor_decomposition_holds", report.tensor_decomposition_holds},
              {"class_inclusions", inclusions}};
}

// row-major little-endian 32-bit color ids
inline void write_color_dump(const std::string& path, const std::vector<std::uint32_t>& color) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw domain_error("cannot open output file: " + path);
  for (std::uint32_t c : color) {
    unsigned char bytes[4] = {static_cast<unsigned char>(c & 0xFF),
                              static_cast<unsigned char>((c >> 8) & 0xFF),
                              static_cast<unsigned char>((c >> 16) & 0xFF),
                              static_cast<unsigned char>((c >> 24) & 0xFF)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
  }
  if (!out) throw domain_error("write failed: " + path);
}

}  // namespace ccwl
