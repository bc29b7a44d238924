#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bookex/graph.hpp"

namespace bookex {

class Graph6Error : public std::runtime_error {
 public:
  Graph6Error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

inline constexpr std::string_view kGraph6Header = ">>graph6<<";
inline constexpr std::uint64_t kGraph6MaxOrder = 68719476735ULL;

namespace detail {

inline void append_graph6_order(std::string& out, std::uint64_t n) {
  auto put = [&](std::uint64_t value, int groups) {
    for (int g = groups - 1; g >= 0; --g) out.push_back(static_cast<char>(63 + ((value >> (6 * g)) & 63U)));
  };
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    put(n, 3);
  } else {
    out.push_back('~');
    out.push_back('~');
    put(n, 6);
  }
}

// Packs bits x(0,1), x(0,2), x(1,2), x(0,3), ... into 6-bit printable groups.
template <typename BitFn>
void append_graph6_bits(std::string& out, std::size_t n, BitFn&& bit) {
  int filled = 0;
  unsigned acc = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (bit(i, j) ? 1U : 0U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
}

}  // namespace detail

inline std::string encode_graph6(const Graph& g) {
  if (g.order() > kGraph6MaxOrder) throw std::invalid_argument("graph too large for graph6");
  std::string out;
  const std::size_t n = g.order();
  out.reserve(8 + (n * (n - (n > 0 ? 1 : 0)) / 2 + 5) / 6);
  detail::append_graph6_order(out, n);
  detail::append_graph6_bits(out, n, [&](std::size_t i, std::size_t j) { return g.adjacent(i, j); });
  return out;
}

/// Parses one graph6 line. A leading ">>graph6<<" header and a single
/// trailing "\n" or "\r\n" are tolerated.
inline Graph decode_graph6(std::string_view text) {
  std::size_t pos = 0;
  if (text.substr(0, kGraph6Header.size()) == kGraph6Header) pos = kGraph6Header.size();
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);

  auto value_at = [&](std::size_t at) -> unsigned {
    if (at >= text.size()) throw Graph6Error("graph6 text truncated", at);
    const auto c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw Graph6Error("graph6 byte out of printable range", at);
    return c - 63U;
  };

  if (pos >= text.size()) throw Graph6Error("graph6 text is empty", pos);
  std::uint64_t n = 0;
  if (static_cast<unsigned char>(text[pos]) != '~') {
    n = value_at(pos);
    pos += 1;
  } else if (pos + 1 < text.size() && text[pos + 1] == '~') {
    for (std::size_t i = 0; i < 6; ++i) n = (n << 6) | value_at(pos + 2 + i);
    pos += 8;
  } else {
    for (std::size_t i = 0; i < 3; ++i) n = (n << 6) | value_at(pos + 1 + i);
    pos += 4;
  }
  if (n > 100000) throw Graph6Error("graph6 order " + std::to_string(n) + " exceeds supported size", 0);

  const std::size_t order = static_cast<std::size_t>(n);
  const std::size_t nbits = order * (order == 0 ? 0 : order - 1) / 2;
  const std::size_t nbytes = (nbits + 5) / 6;
  if (text.size() < pos + nbytes) throw Graph6Error("graph6 adjacency data truncated", text.size());
  if (text.size() > pos + nbytes) throw Graph6Error("trailing bytes after graph6 adjacency data", pos + nbytes);

  Graph::Builder b(order);
  std::size_t k = 0;
  for (std::size_t j = 1; j < order; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const unsigned chunk = value_at(pos + k / 6);
      if ((chunk >> (5 - k % 6)) & 1U) b.add_edge(i, j);
    }
  }
  for (std::size_t i = 0; i < nbytes; ++i) value_at(pos + i);
  return std::move(b).build();
}

}  // namespace bookex
