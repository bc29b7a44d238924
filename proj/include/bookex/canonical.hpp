#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "bookex/graph.hpp"
#include "bookex/graph6.hpp"

namespace bookex {

/// Relabeling-invariant fingerprint of an isomorphism class: the graph6 text
/// of the canonically relabeled graph. Two forms are equal iff the graphs
/// are isomorphic.
class CanonicalForm {
 public:
  CanonicalForm() = default;
  explicit CanonicalForm(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }

  /// The canonical representative itself.
  Graph graph() const { return decode_graph6(bytes_); }

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;

 private:
  std::string bytes_;
};

struct CanonicalLabeling {
  // order[i] is the vertex placed at canonical position i.
  std::vector<Vertex> order;
  CanonicalForm form;
};

namespace detail {

struct OrderedPartition {
  std::vector<Vertex> lab;
  std::vector<std::size_t> starts;

  std::size_t cell_end(std::size_t cell) const {
    return cell + 1 < starts.size() ? starts[cell + 1] : lab.size();
  }
  bool discrete() const { return starts.size() == lab.size(); }
};

// Individualization-refinement over equitable partitions. Children of a
// search node are the vertices of the first smallest non-singleton cell in
// label order; vertices that are twins of an earlier candidate are skipped,
// since swapping two twins is an automorphism that fixes everything else.
// The best leaf is the one with the lexicographically smallest graph6 bit
// string.
class Canonizer {
 public:
  explicit Canonizer(const Graph& g)
      : g_(g), n_(g.order()), mask_(g.words_per_row(), 0), count_(g.order(), 0), twin_(g.order()) {
    compute_twins();
  }

  CanonicalLabeling run() {
    OrderedPartition p;
    p.lab.resize(n_);
    std::iota(p.lab.begin(), p.lab.end(), Vertex{0});
    if (n_ > 0) p.starts.push_back(0);
    search(std::move(p));
    return {std::move(best_lab_), CanonicalForm(std::move(best_))};
  }

 private:
  void compute_twins() {
    std::vector<Word> a(g_.words_per_row()), b(g_.words_per_row());
    for (Vertex v = 0; v < n_; ++v) {
      twin_[v] = v;
      for (Vertex u = 0; u < v; ++u) {
        if (twin_[u] != u) continue;
        auto ru = g_.row(u);
        auto rv = g_.row(v);
        std::copy(ru.begin(), ru.end(), a.begin());
        std::copy(rv.begin(), rv.end(), b.begin());
        a[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
        b[u / kWordBits] &= ~(Word{1} << (u % kWordBits));
        if (a == b) {
          twin_[v] = u;
          break;
        }
      }
    }
  }

  void refine(OrderedPartition& p) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t si = 0; si < p.starts.size() && !changed; ++si) {
        std::fill(mask_.begin(), mask_.end(), 0);
        for (std::size_t pos = p.starts[si]; pos < p.cell_end(si); ++pos) {
          const Vertex v = p.lab[pos];
          mask_[v / kWordBits] |= Word{1} << (v % kWordBits);
        }
        for (std::size_t ci = 0; ci < p.starts.size(); ++ci) {
          const std::size_t b = p.starts[ci];
          const std::size_t e = p.cell_end(ci);
          if (e - b < 2) continue;
          bool uniform = true;
          for (std::size_t pos = b; pos < e; ++pos) {
            const Vertex v = p.lab[pos];
            auto r = g_.row(v);
            std::size_t c = 0;
            for (std::size_t w = 0; w < r.size(); ++w) c += static_cast<std::size_t>(std::popcount(r[w] & mask_[w]));
            count_[v] = c;
            if (c != count_[p.lab[b]]) uniform = false;
          }
          if (uniform) continue;
          std::stable_sort(p.lab.begin() + static_cast<std::ptrdiff_t>(b), p.lab.begin() + static_cast<std::ptrdiff_t>(e),
                           [&](Vertex x, Vertex y) { return count_[x] < count_[y]; });
          std::vector<std::size_t> fresh;
          for (std::size_t pos = b + 1; pos < e; ++pos) {
            if (count_[p.lab[pos]] != count_[p.lab[pos - 1]]) fresh.push_back(pos);
          }
          p.starts.insert(p.starts.begin() + static_cast<std::ptrdiff_t>(ci) + 1, fresh.begin(), fresh.end());
          changed = true;
          break;
        }
      }
    }
  }

  void leaf(const OrderedPartition& p) {
    std::string cert;
    detail::append_graph6_order(cert, n_);
    detail::append_graph6_bits(cert, n_, [&](std::size_t i, std::size_t j) { return g_.adjacent(p.lab[i], p.lab[j]); });
    if (best_lab_.empty() || cert < best_) {
      best_ = std::move(cert);
      best_lab_ = p.lab;
    }
  }

  void search(OrderedPartition p) {
    refine(p);
    if (p.discrete()) {
      leaf(p);
      return;
    }
    std::size_t target = 0;
    std::size_t target_size = n_ + 1;
    for (std::size_t ci = 0; ci < p.starts.size(); ++ci) {
      const std::size_t size = p.cell_end(ci) - p.starts[ci];
      if (size > 1 && size < target_size) {
        target = ci;
        target_size = size;
      }
    }
    const std::size_t b = p.starts[target];
    const std::size_t e = p.cell_end(target);
    std::vector<Vertex> candidates(p.lab.begin() + static_cast<std::ptrdiff_t>(b), p.lab.begin() + static_cast<std::ptrdiff_t>(e));
    std::sort(candidates.begin(), candidates.end());
    std::vector<Vertex> seen_twins;
    for (Vertex v : candidates) {
      if (std::find(seen_twins.begin(), seen_twins.end(), twin_[v]) != seen_twins.end()) continue;
      seen_twins.push_back(twin_[v]);
      OrderedPartition child = p;
      auto it = std::find(child.lab.begin() + static_cast<std::ptrdiff_t>(b), child.lab.begin() + static_cast<std::ptrdiff_t>(e), v);
      std::iter_swap(child.lab.begin() + static_cast<std::ptrdiff_t>(b), it);
      child.starts.insert(child.starts.begin() + static_cast<std::ptrdiff_t>(target) + 1, b + 1);
      search(std::move(child));
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Word> mask_;
  std::vector<std::size_t> count_;
  std::vector<Vertex> twin_;
  std::string best_;
  std::vector<Vertex> best_lab_;
};

}  // namespace detail

inline CanonicalLabeling canonical_labeling(const Graph& g) { return detail::Canonizer(g).run(); }

inline CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

inline bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

/// Sorted, duplicate-free canonical forms of `graphs`.
template <typename Range>
std::vector<CanonicalForm> canonical_set(const Range& graphs) {
  std::vector<CanonicalForm> out;
  for (const Graph& g : graphs) out.push_back(canonical_form(g));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace bookex

template <>
struct std::hash<bookex::CanonicalForm> {
  std::size_t operator()(const bookex::CanonicalForm& f) const noexcept { return std::hash<std::string>{}(f.bytes()); }
};
