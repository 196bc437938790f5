#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ccwl/graph.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

inline graph complete_graph(int n) {
  if (n < 1) throw domain_error("complete: n >= 1 required");
  graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline graph cycle_graph(int n) {
  if (n < 3) throw domain_error("cycle: n >= 3 required");
  graph g(n);
  for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

inline graph path_graph(int n) {
  if (n < 1) throw domain_error("path: n >= 1 required");
  graph g(n);
  for (int u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

// Hamming graph H(d,q): vertices are d-tuples over {0..q-1} in row-major
// order; edges join tuples differing in exactly one coordinate.
inline graph hamming_graph(int d, int q) {
  if (d < 1 || q < 1) throw domain_error("hamming: d >= 1 and q >= 1 required");
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) {
    total *= static_cast<std::uint64_t>(q);
    if (total > 100000) throw domain_error("hamming: q^d too large");
  }
  int n = static_cast<int>(total);
  graph g(n);
  std::uint64_t weight = 1;
  for (int pos = d - 1; pos >= 0; --pos) {
    for (int u = 0; u < n; ++u) {
      int digit = static_cast<int>((static_cast<std::uint64_t>(u) / weight) % static_cast<std::uint64_t>(q));
      for (int other = digit + 1; other < q; ++other)
        g.add_edge(u, static_cast<int>(u + (other - digit) * static_cast<long long>(weight)));
    }
    weight *= static_cast<std::uint64_t>(q);
  }
  return g;
}

inline graph hypercube_graph(int d) { return hamming_graph(d, 2); }

// Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)};
// vertex (a,b) has index 4a + b.
inline graph shrikhande_graph() {
  graph g(16);
  constexpr int conn[6][2] = {{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (const auto& s : conn) {
        int c = (a + s[0]) % 4;
        int d = (b + s[1]) % 4;
        if (4 * a + b != 4 * c + d) g.add_edge(4 * a + b, 4 * c + d);
      }
  return g;
}

// G(n, 1/2) sampled with a fixed engine, resampled until connected.
inline graph random_connected_graph(int n, std::uint64_t seed) {
  if (n < 1) throw domain_error("random_connected: n >= 1 required");
  detail::bit_source bits(seed);
  for (;;) {
    graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (bits.next_bit()) g.add_edge(u, v);
    if (is_connected(g)) return g;
  }
}

// Parses "name" or "name:p1,p2,..." and builds the graph.
inline graph named_graph(std::string_view spec) {
  std::string name;
  std::vector<std::uint64_t> params;
  std::size_t colon = spec.find(':');
  name = std::string(spec.substr(0, colon));
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view tok = rest.substr(0, comma);
      if (tok.empty()) throw domain_error("named_graph: empty parameter in '" + std::string(spec) + "'");
      std::uint64_t v = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9') throw domain_error("named_graph: bad parameter '" + std::string(tok) + "'");
        if (v > (~std::uint64_t{0} - 9) / 10) throw domain_error("named_graph: parameter too large");
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      }
      params.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto want = [&](std::size_t k) {
    if (params.size() != k)
      throw domain_error("named_graph: '" + name + "' takes " + std::to_string(k) + " parameter(s)");
  };
  auto small = [&](std::size_t i) {
    if (params[i] > 100000) throw domain_error("named_graph: parameter out of range");
    return static_cast<int>(params[i]);
  };
  if (name == "complete") {
    want(1);
    return complete_graph(small(0));
  }
  if (name == "cycle") {
    want(1);
    return cycle_graph(small(0));
  }
  if (name == "path") {
    want(1);
    return path_graph(small(0));
  }
  if (name == "hypercube") {
    want(1);
    return hypercube_graph(small(0));
  }
  if (name == "hamming") {
    want(2);
    return hamming_graph(small(0), small(1));
  }
  if (name == "shrikhande") {
    want(0);
    return shrikhande_graph();
  }
  if (name == "random" || name == "random_connected") {
    want(2);
    return random_connected_graph(small(0), params[1]);
  }
  throw domain_error("named_graph: unknown name '" + name + "'");
}

}  // namespace ccwl
