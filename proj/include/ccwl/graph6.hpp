#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ccwl/graph.hpp"
#include "ccwl/util.hpp"

namespace ccwl {

namespace detail {

inline void g6_check_byte(char c, std::size_t off) {
  if (c < 63 || c > 126) throw parse_error("graph6: byte out of range 63..126", off);
}

}  // namespace detail

// graph6 text format. Optional ">>graph6<<" header, then N(n), then the upper
// triangle x(0,1), x(0,2), x(1,2), x(0,3), ... packed big-endian in 6-bit
// groups offset by 63. Trailing bytes beyond the padded bit count are errors.
inline graph parse_graph6(std::string_view text) {
  std::size_t base = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) base = header.size();
  while (text.size() > base && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.size() <= base) throw parse_error("graph6: empty input", base);

  std::size_t pos = base;
  std::uint64_t n = 0;
  detail::g6_check_byte(text[pos], pos);
  if (text[pos] != '~') {
    n = static_cast<std::uint64_t>(text[pos]) - 63;
    ++pos;
  } else if (pos + 1 < text.size() && text[pos + 1] != '~') {
    if (pos + 4 > text.size()) throw parse_error("graph6: truncated 18-bit length", text.size());
    for (std::size_t i = pos + 1; i < pos + 4; ++i) {
      detail::g6_check_byte(text[i], i);
      n = (n << 6) | (static_cast<std::uint64_t>(text[i]) - 63);
    }
    if (n < 63) throw parse_error("graph6: non-canonical 18-bit length", pos);
    pos += 4;
  } else {
    if (pos + 8 > text.size()) throw parse_error("graph6: truncated 36-bit length", text.size());
    for (std::size_t i = pos + 2; i < pos + 8; ++i) {
      detail::g6_check_byte(text[i], i);
      n = (n << 6) | (static_cast<std::uint64_t>(text[i]) - 63);
    }
    if (n < 258048) throw parse_error("graph6: non-canonical 36-bit length", pos);
    pos += 8;
  }
  if (n > 100000) throw parse_error("graph6: vertex count exceeds supported size", base);

  graph g(static_cast<int>(n));
  std::uint64_t bits_needed = n * (n - 1) / 2;
  std::size_t bytes_needed = static_cast<std::size_t>((bits_needed + 5) / 6);
  if (text.size() - pos < bytes_needed) throw parse_error("graph6: truncated adjacency bits", text.size());
  if (text.size() - pos > bytes_needed) throw parse_error("graph6: trailing garbage", pos + bytes_needed);

  std::uint64_t bit = 0;
  for (int col = 1; col < static_cast<int>(n); ++col)
    for (int row = 0; row < col; ++row, ++bit) {
      std::size_t byte_index = pos + static_cast<std::size_t>(bit / 6);
      detail::g6_check_byte(text[byte_index], byte_index);
      int value = (text[byte_index] - 63) >> (5 - static_cast<int>(bit % 6));
      if (value & 1) g.add_edge(row, col);
    }
  // padding bits must be zero
  for (std::uint64_t b = bits_needed; b < 6 * static_cast<std::uint64_t>(bytes_needed); ++b) {
    std::size_t byte_index = pos + static_cast<std::size_t>(b / 6);
    detail::g6_check_byte(text[byte_index], byte_index);
    if ((text[byte_index] - 63) >> (5 - static_cast<int>(b % 6)) & 1)
      throw parse_error("graph6: nonzero padding bit", byte_index);
  }
  return g;
}

inline std::string serialize_graph6(const graph& g) {
  std::string out;
  std::uint64_t n = static_cast<std::uint64_t>(g.n());
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else {
    out.push_back('~');
    out.push_back('~');
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  int acc = 0, filled = 0;
  for (int col = 1; col < g.n(); ++col)
    for (int row = 0; row < col; ++row) {
      acc = (acc << 1) | (g.adjacent(row, col) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  if (filled) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

// Edge-list text format: first non-comment line "n <count>" gives the vertex
// count, every following non-comment line is one edge "u v"; '#' starts a
// comment, blank lines are ignored, duplicate edges collapse. Errors name the
// 1-based line they occur on.
inline graph parse_edge_list(std::string_view text) {
  auto fail = [](const std::string& what, std::size_t line, std::size_t off) -> void {
    throw parse_error("edge list: " + what + " at line " + std::to_string(line), off);
  };

  bool have_header = false;
  long long n = 0;
  graph g(0);
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    std::size_t line_start = pos;
    ++line_no;
    pos = eol + 1;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<long long> nums;
    bool keyword = false;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else if (c == 'n' && !have_header && !keyword && nums.empty()) {
        keyword = true;
        ++i;
      } else if (c >= '0' && c <= '9') {
        long long v = 0;
        while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
          v = v * 10 + (line[i] - '0');
          if (v > 1000000000LL) fail("number too large", line_no, line_start + i);
          ++i;
        }
        nums.push_back(v);
      } else {
        fail("unexpected character", line_no, line_start + i);
      }
    }
    if (!keyword && nums.empty()) continue;

    if (!have_header) {
      if (!keyword || nums.size() != 1)
        fail("expected header \"n <count>\"", line_no, line_start);
      if (nums[0] > 100000) fail("vertex count out of range", line_no, line_start);
      n = nums[0];
      g = graph(static_cast<int>(n));
      have_header = true;
      continue;
    }
    if (nums.size() != 2) fail("expected an edge \"u v\"", line_no, line_start);
    long long u = nums[0], v = nums[1];
    if (u >= n || v >= n) fail("vertex out of range", line_no, line_start);
    if (u == v) fail("loop", line_no, line_start);
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (!have_header) fail("expected header \"n <count>\"", line_no + 1, text.size());
  return g;
}

}  // namespace ccwl
