#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ccwl/ccwl.hpp"

namespace ccwl {

// Everything a run depends on; two runs with equal configs produce identical
// payloads (the timing field aside).
struct run_config {
  std::string command;
  std::vector<std::string> named_specs;
  std::vector<std::string> file_paths;
  std::string file_format = "graph6";  // or "edges"
  int k = 3;
  int m = 2;
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::uint64_t budget_tuples = default_tuple_budget;
  int threads = 0;  // 0 keeps the hardware default
  int extension_cap = default_extension_cap;
  std::string out_path;
  std::string colors_out;
  std::string suite;
};

struct run_outcome {
  int exit_code = 0;
  json report;          // full report, already printed by the caller
  std::string error;    // set when exit_code != 0
  std::string summary;  // one human-readable line for standard error
};

namespace detail {

struct cli_usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct loaded_graph {
  std::string source;
  graph g;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("cannot read input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::vector<loaded_graph> load_inputs(const run_config& config) {
  std::vector<loaded_graph> inputs;
  for (std::string spec : config.named_specs) {
    if (config.seed_set && spec.find(',') == std::string::npos &&
        (spec.rfind("random:", 0) == 0 || spec.rfind("random_connected:", 0) == 0))
      spec += "," + std::to_string(config.seed);
    inputs.push_back({"named:" + spec, named_graph(spec)});
  }
  for (const std::string& path : config.file_paths) {
    std::string text = read_file(path);
    try {
      graph g = config.file_format == "edges" ? parse_edge_list(text) : parse_graph6(text);
      inputs.push_back({"file:" + path, std::move(g)});
    } catch (const parse_error& e) {
      throw domain_error(path + ": " + e.what());
    }
  }
  return inputs;
}

inline std::vector<graph> graphs_of(const std::vector<loaded_graph>& inputs) {
  std::vector<graph> out;
  out.reserve(inputs.size());
  for (const auto& in : inputs) out.push_back(in.g);
  return out;
}

inline void require_inputs(const std::vector<loaded_graph>& inputs, std::size_t low, std::size_t high,
                           const std::string& command) {
  if (inputs.size() >= low && inputs.size() <= high) return;
  std::string expected = low == high ? "exactly " + std::to_string(low)
                                     : "between " + std::to_string(low) + " and " + std::to_string(high);
  throw cli_usage_error(command + " expects " + expected + " graph input(s) (given " +
                        std::to_string(inputs.size()) + "); pass --named or --file");
}

inline json dispatch(const run_config& config, const std::vector<loaded_graph>& inputs,
                     std::string& summary) {
  const std::string& cmd = config.command;

  if (cmd == "wl-close") {
    require_inputs(inputs, 1, 1, cmd);
    coherent_configuration cc = coherent_closure(inputs[0].g);
    summary = "closure of " + inputs[0].source + ": rank " + std::to_string(cc.rank()) + " on " +
              std::to_string(cc.n()) + " points";
    return json{{"configuration", to_json(cc)}, {"intersection_numbers", to_json(intersection_numbers(cc))}};
  }

  if (cmd == "kwl") {
    require_inputs(inputs, 1, 1, cmd);
    ktuple_coloring kt = k_wl(inputs[0].g, config.k, config.budget_tuples);
    if (!config.colors_out.empty()) write_color_dump(config.colors_out, kt.color);
    summary = std::to_string(config.k) + "-tuple refinement of " + inputs[0].source + ": rank " +
              std::to_string(kt.rank) + " after " + std::to_string(kt.trace.size() - 1) + " round(s)";
    return to_json(kt);
  }

  if (cmd == "equiv") {
    require_inputs(inputs, 2, 2, cmd);
    kwl_comparison cmp = wl_m_equivalent(inputs[0].g, inputs[1].g, config.m, config.budget_tuples);
    summary = inputs[0].source + " and " + inputs[1].source + " are " +
              (cmp.equivalent ? "" : "not ") + std::to_string(config.m) + "-WL equivalent";
    return json{{"equivalent", cmp.equivalent},
                {"m", config.m},
                {"rank1", cmp.rank1},
                {"rank2", cmp.rank2},
                {"rounds1", cmp.rounds1},
                {"rounds2", cmp.rounds2}};
  }

  if (cmd == "closed") {
    require_inputs(inputs, 1, 1, cmd);
    bool closed = wl_m_closed(inputs[0].g, config.m, config.budget_tuples);
    summary = inputs[0].source + " is " + (closed ? "" : "not ") + std::to_string(config.m) + "-WL closed";
    return json{{"closed", closed}, {"m", config.m}};
  }

  if (cmd == "factorize") {
    require_inputs(inputs, 1, 1, cmd);
    factorization_report report = prime_factorize(inputs[0].g);
    summary = inputs[0].source + ": " + std::to_string(report.num_factors) + " prime factor(s)";
    return to_json(report);
  }

  if (cmd == "product") {
    require_inputs(inputs, 1, 64, cmd);
    graph product = cartesian_product(graphs_of(inputs)).product;
    summary = "product on " + std::to_string(product.n()) + " vertices, " +
              std::to_string(product.edge_count()) + " edges";
    return json{{"n", product.n()}, {"edge_count", product.edge_count()}, {"graph6", serialize_graph6(product)}};
  }

  if (cmd == "tensor-check") {
    require_inputs(inputs, 1, 64, cmd);
    product_decomposition_report report = product_decomposition_check(graphs_of(inputs));
    summary = "decomposition into " + std::to_string(report.classes.size()) + " class(es): " +
              (report.tensor_decomposition_holds ? "holds" : "FAILS");
    return to_json(report);
  }

  if (cmd == "exponentiate") {
    require_inputs(inputs, 1, 8, cmd);
    iso_family family = build_iso_family(graphs_of(inputs));
    coherent_configuration expo =
        exponentiate(family, symmetric_group(static_cast<int>(inputs.size())));
    graph product = cartesian_product(graphs_of(inputs)).product;
    coherent_configuration closure = coherent_closure(product);
    json hypothesis;
    if (product.n() <= default_two_closed_cap)
      hypothesis = is_two_closed(closure, default_two_closed_cap);
    bool holds = partition_leq(closure, expo);
    bool strict = holds && closure.rank() != expo.rank();
    std::vector<int> all_members(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) all_members[i] = static_cast<int>(i);
    summary = "exponentiation rank " + std::to_string(expo.rank()) + " vs closure rank " +
              std::to_string(closure.rank()) + (strict ? " (strict)" : " (equal)");
    return json{{"configuration", to_json(expo)},
                {"classes", json::array({all_members})},
                {"hypothesis_2closed", hypothesis},
                {"tensor_decomposition_holds", true},
                {"class_inclusions",
                 json::array({json{{"class", 0}, {"holds", holds}, {"strict", strict}}})}};
  }

  if (cmd == "two-closure") {
    require_inputs(inputs, 1, 1, cmd);
    coherent_configuration cc = coherent_closure(inputs[0].g);
    coherent_configuration closed = two_closure(cc, config.extension_cap);
    bool equal = partitions_equal(closed, cc);
    summary = inputs[0].source + " closure is " + (equal ? "" : "not ") + "2-closed";
    return json{{"configuration", to_json(closed)}, {"two_closed", equal}};
  }

  if (cmd == "named") {
    require_inputs(inputs, 1, 1, cmd);
    summary = inputs[0].source + ": " + std::to_string(inputs[0].g.n()) + " vertices, " +
              std::to_string(inputs[0].g.edge_count()) + " edges";
    return json{{"n", inputs[0].g.n()},
                {"edge_count", inputs[0].g.edge_count()},
                {"graph6", serialize_graph6(inputs[0].g)}};
  }

  throw cli_usage_error("unknown command: " + cmd);
}

}  // namespace detail

// Full run: load inputs, dispatch, wrap the payload in the report envelope.
// Exit codes: 0 success, 1 domain/budget refusals, 2 usage errors. The --out
// file is written only after the run succeeds.
inline run_outcome run(const run_config& config) {
  run_outcome outcome;
  if (config.threads > 0) detail::thread_count() = config.threads;

  auto started = std::chrono::steady_clock::now();
  try {
    json result;
    std::vector<detail::loaded_graph> inputs;

    if (config.command == "verify") {
      bool known = false;
      for (const std::string& name : suite_names()) known = known || name == config.suite;
      if (!known)
        throw detail::cli_usage_error("verify expects --suite with one of: axioms, chain, factorization, "
                                      "theorem2, extension (given \"" +
                                      config.suite + "\")");
      suite_report report = run_suite(config.suite);
      json checks = json::array();
      int failed = 0;
      for (const auto& c : report.checks) {
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        if (!c.pass) ++failed;
      }
      result = json{{"suite", report.suite}, {"checks", checks}, {"all_pass", report.all_pass()}};
      outcome.summary = "suite " + report.suite + ": " +
                        std::to_string(report.checks.size() - failed) + "/" +
                        std::to_string(report.checks.size()) + " checks pass";
      if (!report.all_pass()) {
        outcome.exit_code = 1;
        outcome.error = "suite " + report.suite + ": " + std::to_string(failed) + " check(s) failed";
      }
    } else {
      inputs = detail::load_inputs(config);
      result = detail::dispatch(config, inputs, outcome.summary);
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    json input_list = json::array();
    for (const auto& in : inputs)
      input_list.push_back(json{{"source", in.source}, {"graph6", serialize_graph6(in.g)}});
    outcome.report = json{{"command", config.command},
                          {"inputs", input_list},
                          {"result", result},
                          {"timing_ms", elapsed.count()},
                          {"version", version_string}};

    if (!config.out_path.empty() && outcome.exit_code == 0) {
      std::ofstream out(config.out_path, std::ios::binary);
      if (!out) throw domain_error("cannot open output file: " + config.out_path);
      out << outcome.report.dump(2) << "\n";
      if (!out) throw domain_error("write failed: " + config.out_path);
    }
    return outcome;
  } catch (const detail::cli_usage_error& e) {
    outcome.exit_code = 2;
    outcome.error = e.what();
  } catch (const budget_error& e) {
    outcome.exit_code = 1;
    outcome.error = e.what();
  } catch (const domain_error& e) {
    outcome.exit_code = 1;
    outcome.error = e.what();
  } catch (const internal_error& e) {
    outcome.exit_code = 1;
    outcome.error = std::string("internal error (bug): ") + e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.error = e.what();
  }
  return outcome;
}

}  // namespace ccwl
