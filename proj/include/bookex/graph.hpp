#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bookex {

using Vertex = std::size_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Calls fn(v) for every set bit v of a packed word range, ascending.
template <typename Fn>
void for_each_bit(std::span<const Word> words, Fn&& fn) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word x = words[w];
    while (x != 0) {
      const auto b = static_cast<std::size_t>(std::countr_zero(x));
      fn(w * kWordBits + b);
      x &= x - 1;
    }
  }
}

inline std::size_t popcount(std::span<const Word> words) {
  std::size_t c = 0;
  for (Word x : words) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

/// A subset of the vertex range {0..universe-1} of some graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_(words_for(universe), 0) {}

  VertexSet(std::size_t universe, std::initializer_list<Vertex> members)
      : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet all(std::size_t universe) {
    VertexSet s(universe);
    for (Vertex v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  template <typename Range>
  static VertexSet from(std::size_t universe, const Range& members) {
    VertexSet s(universe);
    for (auto v : members) s.insert(static_cast<Vertex>(v));
    return s;
  }

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return popcount(words_); }
  bool empty() const { return size() == 0; }

  bool contains(Vertex v) const {
    return v < universe_ && ((words_[v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }

  void insert(Vertex v) {
    if (v >= universe_) throw std::out_of_range("vertex " + std::to_string(v) + " outside set universe");
    words_[v / kWordBits] |= Word{1} << (v % kWordBits);
  }

  void erase(Vertex v) {
    if (v < universe_) words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    for_each_bit(words_, [&](std::size_t v) { out.push_back(v); });
    return out;
  }

  std::span<const Word> words() const { return words_; }
  std::span<Word> mutable_words() { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

/// Simple undirected graph on vertices 0..order-1, stored as packed
/// adjacency rows. Values are immutable; use Graph::Builder or the free
/// functions below to derive new graphs.
class Graph {
 public:
  class Builder;

  Graph() = default;
  explicit Graph(std::size_t order)
      : order_(order), words_(words_for(order)), bits_(order * words_for(order), 0) {}

  std::size_t order() const { return order_; }
  std::size_t words_per_row() const { return words_; }

  std::span<const Word> row(Vertex v) const {
    return {bits_.data() + v * words_, words_};
  }

  bool adjacent(Vertex u, Vertex v) const {
    return ((bits_[u * words_ + v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }

  std::size_t degree(Vertex v) const { return popcount(row(v)); }

  std::size_t edge_count() const { return popcount(bits_) / 2; }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(order_);
    for (Vertex v = 0; v < order_; ++v) d[v] = degree(v);
    return d;
  }

  VertexSet neighbors(Vertex v) const {
    check_vertex(v);
    VertexSet s(order_);
    std::copy(row(v).begin(), row(v).end(), s.mutable_words().begin());
    return s;
  }

  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < order_; ++u) {
      for_each_bit(row(u), [&](std::size_t v) {
        if (u < v) out.emplace_back(u, v);
      });
    }
    return out;
  }

  Graph with_edge(Vertex u, Vertex v) const;
  Graph without_edge(Vertex u, Vertex v) const;
  Graph without_vertex(Vertex v) const;
  /// Appends vertex `order()` adjacent to exactly `nbrs`.
  Graph with_vertex(const VertexSet& nbrs) const;
  Graph induced(const VertexSet& keep) const;

  /// The returned graph has edge {perm[u], perm[v]} for every edge {u, v}.
  Graph relabeled(std::span<const Vertex> perm) const;

  void check_vertex(Vertex v) const {
    if (v >= order_) {
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range for order " +
                              std::to_string(order_));
    }
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void set(Vertex u, Vertex v, bool on) {
    const Word m = Word{1} << (v % kWordBits);
    Word& w = bits_[u * words_ + v / kWordBits];
    w = on ? (w | m) : (w & ~m);
  }

  std::size_t order_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

/// Mutable staging area for building a Graph in one pass.
class Graph::Builder {
 public:
  explicit Builder(std::size_t order) : g_(order) {}
  explicit Builder(Graph start) : g_(std::move(start)) {}

  std::size_t order() const { return g_.order(); }

  Builder& add_edge(Vertex u, Vertex v) {
    validate(u, v);
    g_.set(u, v, true);
    g_.set(v, u, true);
    return *this;
  }

  Builder& remove_edge(Vertex u, Vertex v) {
    validate(u, v);
    g_.set(u, v, false);
    g_.set(v, u, false);
    return *this;
  }

  bool adjacent(Vertex u, Vertex v) const { return g_.adjacent(u, v); }

  Graph build() && { return std::move(g_); }
  Graph build() const& { return g_; }

 private:
  void validate(Vertex u, Vertex v) const {
    g_.check_vertex(u);
    g_.check_vertex(v);
    if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u) + " is not allowed");
  }

  Graph g_;
};

inline Graph Graph::with_edge(Vertex u, Vertex v) const {
  return Builder(*this).add_edge(u, v).build();
}

inline Graph Graph::without_edge(Vertex u, Vertex v) const {
  return Builder(*this).remove_edge(u, v).build();
}

inline Graph Graph::without_vertex(Vertex v) const {
  check_vertex(v);
  VertexSet keep = VertexSet::all(order_);
  keep.erase(v);
  return induced(keep);
}

inline Graph Graph::with_vertex(const VertexSet& nbrs) const {
  if (nbrs.universe() != order_) throw std::invalid_argument("neighbour set universe does not match graph order");
  Graph out(order_ + 1);
  for (Vertex u = 0; u < order_; ++u) {
    auto src = row(u);
    std::copy(src.begin(), src.end(), out.bits_.begin() + static_cast<std::ptrdiff_t>(u * out.words_));
  }
  for_each_bit(nbrs.words(), [&](std::size_t v) {
    out.set(order_, v, true);
    out.set(v, order_, true);
  });
  return out;
}

inline Graph Graph::induced(const VertexSet& keep) const {
  const std::vector<Vertex> kept = keep.members();
  Graph out(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    check_vertex(kept[i]);
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      if (adjacent(kept[i], kept[j])) {
        out.set(i, j, true);
        out.set(j, i, true);
      }
    }
  }
  return out;
}

inline Graph Graph::relabeled(std::span<const Vertex> perm) const {
  if (perm.size() != order_) throw std::invalid_argument("permutation size does not match graph order");
  Graph out(order_);
  for (Vertex u = 0; u < order_; ++u) {
    for_each_bit(row(u), [&](std::size_t v) { out.set(perm[u], perm[v], true); });
  }
  return out;
}

inline Graph empty_graph(std::size_t n) { return Graph(n); }

inline Graph complete_graph(std::size_t n) {
  Graph::Builder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

inline Graph add_edge(const Graph& g, Vertex u, Vertex v) { return g.with_edge(u, v); }

namespace detail {

inline void copy_into(Graph::Builder& b, const Graph& g, std::size_t offset) {
  for (auto [u, v] : g.edges()) b.add_edge(u + offset, v + offset);
}

}  // namespace detail

/// Disjoint union; g2's vertices are shifted up by g1.order().
inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
  Graph::Builder b(g1.order() + g2.order());
  detail::copy_into(b, g1, 0);
  detail::copy_into(b, g2, g1.order());
  return std::move(b).build();
}

/// Disjoint union plus every edge between the two sides.
inline Graph join(const Graph& g1, const Graph& g2) {
  Graph::Builder b(g1.order() + g2.order());
  detail::copy_into(b, g1, 0);
  detail::copy_into(b, g2, g1.order());
  for (Vertex u = 0; u < g1.order(); ++u)
    for (Vertex v = 0; v < g2.order(); ++v) b.add_edge(u, g1.order() + v);
  return std::move(b).build();
}

/// Vertices outside `s` adjacent to every member of `s`. All vertices for s = {}.
inline VertexSet common_neighbors(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.order()) throw std::invalid_argument("vertex set universe does not match graph order");
  VertexSet out = VertexSet::all(g.order());
  auto acc = out.mutable_words();
  for_each_bit(s.words(), [&](std::size_t v) {
    auto r = g.row(v);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= r[w];
  });
  for_each_bit(s.words(), [&](std::size_t v) { out.erase(v); });
  return out;
}

}  // namespace bookex
