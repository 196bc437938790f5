#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccwl/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"coherent configurations, higher-dimensional refinement and Cartesian factorization"};
  app.require_subcommand(1);

  ccwl::run_config config;
  std::vector<std::pair<std::string, std::string>> commands = {
      {"wl-close", "coherent closure of one graph with canonical colors"},
      {"kwl", "stable k-tuple coloring with per-round trace"},
      {"equiv", "compare two graphs under m-dimensional refinement"},
      {"closed", "test whether m-dimensional refinement moves the closure"},
      {"factorize", "certified Cartesian prime factorization"},
      {"product", "build the Cartesian product of the inputs"},
      {"tensor-check", "decomposition report for a list of prime factors"},
      {"exponentiate", "fuse a power of one closure under a permutation group"},
      {"two-closure", "pair extension and its induced refinement"},
      {"named", "emit a named graph as graph6"},
      {"verify", "run a built-in invariant suite over the corpus"}};

  for (const auto& [name, blurb] : commands) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    sub->add_option("--named", config.named_specs,
                    "named graph spec (complete:n, cycle:n, path:n, hamming:d,q, hypercube:d, "
                    "shrikhande, random:n,seed); repeatable, listed before --file inputs");
    sub->add_option("--file", config.file_paths, "graph file; repeatable, listed after --named inputs");
    sub->add_option("--format", config.file_format, "file format: graph6 or edges")
        ->check(CLI::IsMember({"graph6", "edges"}));
    sub->add_option("--out", config.out_path, "write the JSON report here on success");
    sub->add_option("--threads", config.threads, "worker thread count (deterministic output regardless)");
    sub->add_option("--seed", config.seed, "seed for random:n specs given without one");
    if (name == "kwl") {
      sub->add_option("--k", config.k, "refinement dimension")->check(CLI::Range(1, 16));
      sub->add_option("--budget-tuples", config.budget_tuples, "tuple budget before refusal");
      sub->add_option("--colors-out", config.colors_out,
                      "also dump the stable coloring as little-endian 32-bit ids");
    }
    if (name == "equiv" || name == "closed") {
      sub->add_option("--m", config.m, "refinement dimension")->check(CLI::Range(1, 16));
      sub->add_option("--budget-tuples", config.budget_tuples, "tuple budget before refusal");
    }
    if (name == "two-closure")
      sub->add_option("--cap", config.extension_cap, "largest point count whose extension is attempted");
    if (name == "verify")
      sub->add_option("--suite", config.suite, "axioms, chain, factorization, theorem2 or extension");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  config.seed_set = chosen->count("--seed") > 0;

  ccwl::run_outcome outcome = ccwl::run(config);
  if (!outcome.error.empty()) std::cerr << "error: " << outcome.error << "\n";
  if (!outcome.summary.empty()) std::cerr << outcome.summary << "\n";
  if (!outcome.report.is_null()) std::cout << outcome.report.dump(2) << "\n";
  return outcome.exit_code;
}
