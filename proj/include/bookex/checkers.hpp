#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bookex/graph.hpp"

namespace bookex {

/// An embedded B_{r,k}: an r-clique plus k vertices adjacent to all of it.
struct BookWitness {
  VertexSet clique;
  VertexSet pages;
};

/// Proper colouring with colours 1..c; colors[v] is the colour of v.
struct ColoringWitness {
  std::vector<std::size_t> colors;

  std::size_t color_count() const {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end());
  }
};

namespace detail {

// Enumerates the `size`-cliques inside `allowed` in lexicographic order of
// their sorted vertex lists. `fn(members)` returns true to stop.
template <typename Fn>
bool for_each_clique(const Graph& g, std::size_t size, const std::vector<Word>& allowed, Fn&& fn) {
  std::vector<Vertex> stack;
  const std::size_t W = g.words_per_row();
  std::vector<std::vector<Word>> cand(size + 1, std::vector<Word>(W));
  cand[0] = allowed;

  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == size) return fn(stack);
    if (popcount(cand[depth]) + depth < size) return false;
    bool stop = false;
    std::vector<Word> remaining = cand[depth];
    for (std::size_t w = 0; w < W && !stop; ++w) {
      while (remaining[w] != 0 && !stop) {
        const Vertex v = w * kWordBits + static_cast<std::size_t>(std::countr_zero(remaining[w]));
        remaining[w] &= remaining[w] - 1;
        auto row = g.row(v);
        for (std::size_t x = 0; x < W; ++x) cand[depth + 1][x] = remaining[x] & row[x];
        stack.push_back(v);
        stop = self(self, depth + 1);
        stack.pop_back();
        if (popcount(remaining) + depth + 1 < size) return stop;
      }
    }
    return stop;
  };
  return rec(rec, 0);
}

inline std::vector<Word> all_vertices_mask(const Graph& g) {
  const VertexSet all = VertexSet::all(g.order());
  return {all.words().begin(), all.words().end()};
}

inline std::vector<Word> common_neighbourhood(const Graph& g, const std::vector<Vertex>& clique) {
  std::vector<Word> acc = all_vertices_mask(g);
  for (Vertex v : clique) {
    auto r = g.row(v);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= r[w];
  }
  return acc;
}

inline std::optional<BookWitness> find_book(const Graph& g, std::size_t r, std::size_t k, const std::vector<Word>& allowed) {
  std::optional<BookWitness> found;
  for_each_clique(g, r, allowed, [&](const std::vector<Vertex>& clique) {
    const std::vector<Word> common = common_neighbourhood(g, clique);
    if (popcount(common) < k) return false;
    BookWitness w{VertexSet::from(g.order(), clique), VertexSet(g.order())};
    std::size_t taken = 0;
    for_each_bit(common, [&](std::size_t v) {
      if (taken < k) {
        w.pages.insert(v);
        ++taken;
      }
    });
    found = std::move(w);
    return true;
  });
  return found;
}

}  // namespace detail

/// Lexicographically least r-clique, if any.
inline std::optional<VertexSet> contains_clique(const Graph& g, std::size_t r) {
  if (r < 1) throw std::invalid_argument("clique size must be at least 1");
  std::optional<VertexSet> found;
  detail::for_each_clique(g, r, detail::all_vertices_mask(g), [&](const std::vector<Vertex>& clique) {
    found = VertexSet::from(g.order(), clique);
    return true;
  });
  return found;
}

/// B_{r,k} as a (not necessarily induced) subgraph: some r-clique with at
/// least k common neighbours outside it.
inline std::optional<BookWitness> contains_generalized_book(const Graph& g, std::size_t r, std::size_t k) {
  if (r < 2) throw std::invalid_argument("book spine size must be at least 2");
  if (k < 1) throw std::invalid_argument("book page count must be at least 1");
  return detail::find_book(g, r, k, detail::all_vertices_mask(g));
}

/// Book copies that can involve vertex v: r-cliques inside the closed
/// neighbourhood of v. If g - v is B_{r,k}-free, this decides whether g is.
inline std::optional<BookWitness> contains_generalized_book_at(const Graph& g, Vertex v, std::size_t r, std::size_t k) {
  g.check_vertex(v);
  std::vector<Word> allowed(g.row(v).begin(), g.row(v).end());
  allowed[v / kWordBits] |= Word{1} << (v % kWordBits);
  return detail::find_book(g, r, k, allowed);
}

inline bool is_valid_book_witness(const Graph& g, const BookWitness& w, std::size_t r, std::size_t k) {
  const auto clique = w.clique.members();
  const auto pages = w.pages.members();
  if (clique.size() != r || pages.size() != k) return false;
  for (Vertex u : clique) {
    if (u >= g.order()) return false;
    for (Vertex v : clique)
      if (u != v && !g.adjacent(u, v)) return false;
    for (Vertex p : pages)
      if (p >= g.order() || w.clique.contains(p) || !g.adjacent(u, p)) return false;
  }
  return true;
}

inline bool is_proper_coloring(const Graph& g, const ColoringWitness& w, std::size_t c) {
  if (w.colors.size() != g.order()) return false;
  for (std::size_t col : w.colors)
    if (col < 1 || col > c) return false;
  for (auto [u, v] : g.edges())
    if (w.colors[u] == w.colors[v]) return false;
  return true;
}

namespace detail {

// Merges vertices with identical open neighbourhoods until none remain.
// Such vertices are non-adjacent and can always share a colour.
struct TwinQuotient {
  Graph graph;
  std::vector<Vertex> image;  // original vertex -> quotient vertex
};

inline TwinQuotient merge_false_twins(const Graph& g) {
  TwinQuotient tq{g, std::vector<Vertex>(g.order())};
  std::iota(tq.image.begin(), tq.image.end(), Vertex{0});
  while (true) {
    const Graph& h = tq.graph;
    std::vector<Vertex> rep(h.order());
    VertexSet keep(h.order());
    bool merged = false;
    for (Vertex v = 0; v < h.order(); ++v) {
      rep[v] = v;
      for (Vertex u = 0; u < v; ++u) {
        if (rep[u] == u && std::equal(h.row(u).begin(), h.row(u).end(), h.row(v).begin())) {
          rep[v] = u;
          merged = true;
          break;
        }
      }
      if (rep[v] == v) keep.insert(v);
    }
    if (!merged) return tq;
    std::vector<Vertex> index(h.order(), 0);
    Vertex next = 0;
    for (Vertex v = 0; v < h.order(); ++v)
      if (rep[v] == v) index[v] = next++;
    for (auto& img : tq.image) img = index[rep[img]];
    tq.graph = h.induced(keep);
  }
}

// Exact backtracking colouring, most-saturated vertex first (ties: higher
// degree, then lower label); a new colour is opened only one at a time.
class ColoringSearch {
 public:
  ColoringSearch(const Graph& g, std::size_t c)
      : g_(g), c_(c), color_(g.order(), 0), seen_(g.order() * (c + 1), 0), deg_(g.degrees()) {}

  bool run() { return assign(0, 0); }
  const std::vector<std::size_t>& colors() const { return color_; }

 private:
  std::size_t saturation(Vertex v) const {
    std::size_t s = 0;
    for (std::size_t col = 1; col <= c_; ++col) s += seen_[v * (c_ + 1) + col] > 0 ? 1 : 0;
    return s;
  }

  void paint(Vertex v, std::size_t col, int delta) {
    color_[v] = delta > 0 ? col : 0;
    for_each_bit(g_.row(v), [&](std::size_t u) { seen_[u * (c_ + 1) + col] += delta; });
  }

  bool assign(std::size_t colored, std::size_t used) {
    if (colored == g_.order()) return true;
    Vertex pick = g_.order();
    std::size_t best_sat = 0;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (color_[v] != 0) continue;
      const std::size_t s = saturation(v);
      if (pick == g_.order() || s > best_sat || (s == best_sat && deg_[v] > deg_[pick])) {
        pick = v;
        best_sat = s;
      }
    }
    if (best_sat == c_) return false;
    const std::size_t limit = std::min(c_, used + 1);
    for (std::size_t col = 1; col <= limit; ++col) {
      if (seen_[pick * (c_ + 1) + col] != 0) continue;
      paint(pick, col, +1);
      if (assign(colored + 1, std::max(used, col))) return true;
      paint(pick, col, -1);
    }
    return false;
  }

  const Graph& g_;
  std::size_t c_;
  std::vector<std::size_t> color_;
  std::vector<int> seen_;
  std::vector<std::size_t> deg_;
};

}  // namespace detail

inline std::optional<ColoringWitness> is_r_colorable(const Graph& g, std::size_t c) {
  if (c < 1) throw std::invalid_argument("colour count must be at least 1");
  if (g.order() == 0) return ColoringWitness{};
  const detail::TwinQuotient tq = detail::merge_false_twins(g);
  if (c < tq.graph.order() && contains_clique(tq.graph, c + 1)) return std::nullopt;
  detail::ColoringSearch search(tq.graph, c);
  if (!search.run()) return std::nullopt;
  ColoringWitness w;
  w.colors.resize(g.order());
  for (Vertex v = 0; v < g.order(); ++v) w.colors[v] = search.colors()[tq.image[v]];
  return w;
}

inline std::size_t chromatic_number(const Graph& g) {
  if (g.order() == 0) return 0;
  std::size_t c = 1;
  while (!is_r_colorable(g, c)) ++c;
  return c;
}

/// Some single edge deletion lowers the chromatic number.
inline bool is_color_critical(const Graph& g) {
  const auto edges = g.edges();
  if (edges.empty()) throw std::invalid_argument("colour-criticality is undefined for edgeless graphs");
  const std::size_t chi = chromatic_number(g);
  for (auto [u, v] : edges) {
    if (is_r_colorable(g.without_edge(u, v), chi - 1)) return true;
  }
  return false;
}

/// Candidacy predicate: not r-colourable and B_{r,k}-free.
inline bool is_nonpartite_book_free(const Graph& g, std::size_t r, std::size_t k) {
  if (r < 3) throw std::invalid_argument("candidacy needs r >= 3");
  if (k < 1) throw std::invalid_argument("candidacy needs k >= 1");
  if (contains_generalized_book(g, r, k)) return false;
  return !is_r_colorable(g, r).has_value();
}

}  // namespace bookex
