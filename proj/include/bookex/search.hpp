#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bookex/canonical.hpp"
#include "bookex/checkers.hpp"
#include "bookex/constructions.hpp"
#include "bookex/formulas.hpp"
#include "bookex/graph.hpp"

namespace bookex {

enum class SearchMethod { enumeration, branch_bound, family_optimizer };

inline const char* to_string(SearchMethod m) {
  switch (m) {
    case SearchMethod::enumeration: return "enumerate";
    case SearchMethod::branch_bound: return "bb";
    case SearchMethod::family_optimizer: return "family_optimizer";
  }
  return "?";
}

struct SearchBudget {
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  std::chrono::milliseconds time_limit = std::chrono::hours(24 * 365);
  std::size_t workers = 1;

  void validate() const {
    if (node_limit == 0) throw std::invalid_argument("node limit must be positive");
    if (time_limit.count() <= 0) throw std::invalid_argument("time limit must be positive");
    if (workers == 0) throw std::invalid_argument("worker count must be positive");
  }
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::chrono::milliseconds wall{0};
};

/// Outcome of one search or optimisation run for ex_{r+1}(n, B_{r,k}).
struct ExtremalReport {
  std::size_t n = 0, r = 0, k = 0, q = 0, p = 0;
  std::optional<Count> optimum;
  std::vector<CanonicalForm> extremal;  // sorted
  SearchMethod method = SearchMethod::enumeration;
  bool exhaustive = false;
  SearchStats stats;
  // Generation-tree nodes accepted at each order 1..n (index 0 unused).
  std::vector<std::uint64_t> class_counts;
  // Family optimizer only: maximizers equal the predicted case-table set.
  std::optional<bool> matches_case_table;
};

/// Deterministic one-line summary; stats are deliberately excluded.
inline std::string format_report(const ExtremalReport& rep) {
  std::ostringstream os;
  os << "n=" << rep.n << " r=" << rep.r << " k=" << rep.k << " q=" << rep.q << " p=" << rep.p
     << " method=" << to_string(rep.method) << " optimum=";
  if (rep.optimum) {
    os << *rep.optimum;
  } else {
    os << "NA";
  }
  os << " classes=" << rep.extremal.size() << " exhaustive=" << (rep.exhaustive ? "true" : "false");
  return os.str();
}

inline std::string format_stats(const ExtremalReport& rep) {
  std::ostringstream os;
  os << "nodes=" << rep.stats.nodes << " wall_ms=" << rep.stats.wall.count();
  return os.str();
}

/// Graphs of the predicted extremal set, as canonical forms.
inline std::vector<CanonicalForm> predicted_extremal_forms(const CaseParams& params, TheoremMode mode) {
  std::vector<Graph> graphs;
  for (FamilyTag tag : extremal_case(params, mode).families) {
    std::vector<Graph> part;
    switch (tag) {
      case FamilyTag::G1: part = family_g1(params); break;
      case FamilyTag::G2: part = family_g2(params); break;
      case FamilyTag::G3: part = family_g3(params); break;
      case FamilyTag::C5_JOIN: part = {c5_join_turan(params.n(), params.r())}; break;
    }
    graphs.insert(graphs.end(), part.begin(), part.end());
  }
  return canonical_set(graphs);
}

namespace detail {

inline void check_search_size(std::size_t n, std::size_t r, std::size_t k) {
  if (n < 1) throw std::invalid_argument("search order must be at least 1");
  if (n > 20) throw std::invalid_argument("search order " + std::to_string(n) + " is beyond exhaustive reach (max 20)");
  if (r < 3) throw std::invalid_argument("search needs r >= 3");
  if (k < 1) throw std::invalid_argument("search needs k >= 1");
}

/// Largest final edge count reachable from an order-i ancestor with e edges.
/// Every generation step deletes a minimum-degree vertex, so going from
/// order j to j+1 adds at most j edges and at most 2 e_{j+1}/(j+1), i.e.
/// e_{j+1} <= e_j (j+1)/(j-1).
inline Count edge_upper_bound(Count edges, std::size_t order, std::size_t n) {
  Count u = edges;
  for (std::size_t j = order; j < n; ++j) {
    Count next = u + static_cast<Count>(j);
    if (j >= 2) next = std::min(next, u * static_cast<Count>(j + 1) / static_cast<Count>(j - 1));
    u = next;
  }
  return u;
}

struct GenNode {
  Graph graph;
  CanonicalForm form;
};

struct GenConfig {
  std::size_t n = 0, r = 3, k = 1;
  bool book_free_only = false;  // prune children containing B_{r,k} (hereditary)
  bool bound_prune = false;     // prune when edge_upper_bound < incumbent
  bool evaluate_leaves = true;  // test candidacy at order n
};

struct LocalBest {
  std::optional<Count> optimum;
  std::set<CanonicalForm> forms;

  void offer(Count e, const CanonicalForm& f) {
    if (!optimum || e > *optimum) {
      optimum = e;
      forms.clear();
    }
    if (e == *optimum) forms.insert(f);
  }
};

// Isomorphism-free generation by canonical augmentation. A child is the
// parent plus one new vertex; it is kept iff the new vertex lies in the
// orbit of the canonical deletion vertex (the minimum-degree vertex with
// the largest canonical position), checked by comparing the parent with
// the child minus that vertex. Siblings are deduplicated by canonical form.
class Generator {
 public:
  Generator(GenConfig cfg, SearchBudget budget, Count incumbent)
      : cfg_(cfg), budget_(budget), incumbent_(incumbent), counts_(cfg.n + 1) {
    for (auto& c : counts_) c.store(0);
    start_ = std::chrono::steady_clock::now();
  }

  std::vector<GenNode> children(const GenNode& parent) {
    const Graph& g = parent.graph;
    const std::size_t i = g.order();
    const auto deg = g.degrees();
    const auto e = static_cast<Count>(g.edge_count());
    const Count bound = incumbent_.load(std::memory_order_relaxed);
    std::vector<GenNode> out;
    std::set<CanonicalForm> seen;
    const std::uint64_t subsets = std::uint64_t{1} << i;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      const auto d = static_cast<std::size_t>(std::popcount(mask));
      bool min_degree = true;
      for (std::size_t u = 0; u < i && min_degree; ++u) {
        const std::size_t child_deg = deg[u] + ((mask >> u) & 1U);
        if (child_deg < d) min_degree = false;
      }
      if (!min_degree) continue;
      if (cfg_.bound_prune && edge_upper_bound(e + static_cast<Count>(d), i + 1, cfg_.n) < bound) continue;
      VertexSet nbrs(i);
      for (std::size_t u = 0; u < i; ++u)
        if ((mask >> u) & 1U) nbrs.insert(u);
      Graph child = g.with_vertex(nbrs);
      if (cfg_.book_free_only && i + 1 >= cfg_.r + cfg_.k && contains_generalized_book_at(child, i, cfg_.r, cfg_.k)) continue;
      CanonicalLabeling lab = canonical_labeling(child);
      const Vertex del = deletion_vertex(child, lab);
      if (del != i && canonical_form(child.without_vertex(del)) != parent.form) continue;
      if (!seen.insert(lab.form).second) continue;
      out.push_back({std::move(child), std::move(lab.form)});
    }
    return out;
  }

  void dfs(const GenNode& node, LocalBest& best) {
    if (!tick(node.graph.order())) return;
    if (node.graph.order() == cfg_.n) {
      leaf(node, best);
      return;
    }
    for (const GenNode& child : children(node)) {
      dfs(child, best);
      if (aborted_.load(std::memory_order_relaxed)) return;
    }
  }

  // Nodes at order `depth` (or leaves, if n is smaller), in generation order.
  void collect(const GenNode& node, std::size_t depth, std::vector<GenNode>& frontier) {
    if (node.graph.order() == depth || node.graph.order() == cfg_.n) {
      frontier.push_back(node);
      return;
    }
    if (!tick(node.graph.order())) return;
    for (const GenNode& child : children(node)) collect(child, depth, frontier);
  }

  GenNode root() const {
    Graph g(1);
    return {g, canonical_form(g)};
  }

  bool aborted() const { return aborted_.load(); }
  std::uint64_t nodes() const { return nodes_.load(); }
  std::vector<std::uint64_t> counts() const {
    std::vector<std::uint64_t> out;
    for (const auto& c : counts_) out.push_back(c.load());
    return out;
  }
  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
  }

 private:
  static Vertex deletion_vertex(const Graph& g, const CanonicalLabeling& lab) {
    std::size_t min_deg = g.order();
    for (Vertex v = 0; v < g.order(); ++v) min_deg = std::min(min_deg, g.degree(v));
    for (std::size_t pos = g.order(); pos-- > 0;) {
      if (g.degree(lab.order[pos]) == min_deg) return lab.order[pos];
    }
    return g.order() - 1;
  }

  bool tick(std::size_t order) {
    if (aborted_.load(std::memory_order_relaxed)) return false;
    const std::uint64_t seen = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    counts_[order].fetch_add(1, std::memory_order_relaxed);
    if (seen > budget_.node_limit || elapsed() > budget_.time_limit) {
      aborted_.store(true);
      return false;
    }
    return true;
  }

  void leaf(const GenNode& node, LocalBest& best) {
    if (!cfg_.evaluate_leaves) return;
    const Graph& g = node.graph;
    if (!cfg_.book_free_only && contains_generalized_book(g, cfg_.r, cfg_.k)) return;
    if (is_r_colorable(g, cfg_.r)) return;
    const auto e = static_cast<Count>(g.edge_count());
    best.offer(e, node.form);
    Count cur = incumbent_.load();
    while (e > cur && !incumbent_.compare_exchange_weak(cur, e)) {
    }
  }

  GenConfig cfg_;
  SearchBudget budget_;
  std::atomic<Count> incumbent_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> aborted_{false};
  std::vector<std::atomic<std::uint64_t>> counts_;
  std::chrono::steady_clock::time_point start_;
};

// Splits the generation tree at a fixed depth and hands the frontier nodes
// to workers through a shared index. Results merge by maximum optimum and
// union of canonical forms, so the outcome does not depend on scheduling.
inline ExtremalReport run_generation(const GenConfig& cfg, const SearchBudget& budget, Count incumbent, SearchMethod method) {
  budget.validate();
  Generator gen(cfg, budget, incumbent);
  LocalBest merged;
  std::vector<GenNode> frontier;
  const std::size_t split = std::min<std::size_t>(cfg.n, 6);
  gen.collect(gen.root(), split, frontier);

  std::atomic<std::size_t> next{0};
  std::mutex merge_mu;
  auto worker = [&] {
    LocalBest local;
    for (std::size_t idx = next++; idx < frontier.size(); idx = next++) {
      gen.dfs(frontier[idx], local);
      if (gen.aborted()) break;
    }
    std::lock_guard lock(merge_mu);
    if (local.optimum) {
      for (const auto& f : local.forms) merged.offer(*local.optimum, f);
    }
  };
  const std::size_t workers = std::min(budget.workers, std::max<std::size_t>(frontier.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  ExtremalReport rep;
  rep.n = cfg.n;
  rep.r = cfg.r;
  rep.k = cfg.k;
  rep.q = cfg.n / cfg.r;
  rep.p = cfg.n % cfg.r;
  rep.method = method;
  rep.optimum = merged.optimum;
  rep.extremal.assign(merged.forms.begin(), merged.forms.end());
  rep.exhaustive = !gen.aborted();
  rep.stats = {gen.nodes(), gen.elapsed()};
  rep.class_counts = gen.counts();
  return rep;
}

}  // namespace detail

/// Number of isomorphism classes of graphs at each order 1..n, produced by
/// the same canonical-augmentation generator the searches use.
inline std::vector<std::uint64_t> count_graph_classes(std::size_t n, const SearchBudget& budget = {}) {
  if (n < 1 || n > 10) throw std::invalid_argument("class counting supports orders 1..10");
  detail::GenConfig cfg;
  cfg.n = n;
  cfg.evaluate_leaves = false;
  return detail::run_generation(cfg, budget, 0, SearchMethod::enumeration).class_counts;
}

/// Every isomorphism class of order n is generated and filtered by the
/// candidacy predicate; no pruning.
inline ExtremalReport enumerate_extremal(std::size_t n, std::size_t r, std::size_t k, const SearchBudget& budget = {}) {
  detail::check_search_size(n, r, k);
  detail::GenConfig cfg;
  cfg.n = n;
  cfg.r = r;
  cfg.k = k;
  return detail::run_generation(cfg, budget, 0, SearchMethod::enumeration);
}

struct BranchBoundOptions {
  bool bound_prune = true;
  bool seed_incumbent = true;
};

ExtremalReport family_optimizer(std::size_t n, std::size_t r);

/// Generation restricted to B_{r,k}-free graphs with edge-count pruning
/// against an incumbent seeded from the best C5-blow-up join.
inline ExtremalReport branch_bound_extremal(std::size_t n, std::size_t r, std::size_t k, const SearchBudget& budget = {},
                                            BranchBoundOptions opts = {}) {
  detail::check_search_size(n, r, k);
  Count incumbent = 0;
  std::optional<ExtremalReport> seed;
  if (opts.seed_incumbent && n >= r + 3) {
    seed = family_optimizer(n, r);
    for (const CanonicalForm& f : seed->extremal) {
      if (!is_nonpartite_book_free(f.graph(), r, k)) throw std::logic_error("seed construction is not a valid candidate");
    }
    incumbent = *seed->optimum;
  }
  detail::GenConfig cfg;
  cfg.n = n;
  cfg.r = r;
  cfg.k = k;
  cfg.book_free_only = true;
  cfg.bound_prune = opts.bound_prune;
  ExtremalReport rep = detail::run_generation(cfg, budget, incumbent, SearchMethod::branch_bound);
  // An interrupted run still reports the certified construction. A completed
  // run has already found every seed graph, so the merge changes nothing.
  if (seed && (!rep.optimum || *rep.optimum <= *seed->optimum)) {
    std::set<CanonicalForm> forms(seed->extremal.begin(), seed->extremal.end());
    if (rep.optimum == seed->optimum) forms.insert(rep.extremal.begin(), rep.extremal.end());
    rep.optimum = seed->optimum;
    rep.extremal.assign(forms.begin(), forms.end());
  }
  return rep;
}

namespace detail {

struct BlowupMax {
  std::size_t edges = 0;
  std::vector<BlowupProfile> profiles;  // dihedral representatives
};

// Maximum-size C5 blow-ups with all parts positive and total m.
inline BlowupMax best_blowups(std::size_t m) {
  BlowupMax best;
  for (std::size_t a = 1; a + 4 <= m; ++a)
    for (std::size_t b = 1; a + b + 3 <= m; ++b)
      for (std::size_t c = 1; a + b + c + 2 <= m; ++c)
        for (std::size_t d = 1; a + b + c + d + 1 <= m; ++d) {
          const std::size_t e = m - a - b - c - d;
          const std::size_t edges = a * b + b * c + c * d + d * e + e * a;
          if (edges < best.edges) continue;
          const BlowupProfile prof{{a, b, c, d, e}};
          if (prof.dihedral_min() != prof) continue;
          if (edges > best.edges) {
            best.edges = edges;
            best.profiles.clear();
          }
          best.profiles.push_back(prof);
        }
  return best;
}

struct MultipartiteMax {
  std::size_t edges = 0;
  std::vector<std::vector<std::size_t>> partitions;  // non-increasing parts
};

// Maximum-size complete `parts`-partite graphs on s vertices, all parts positive.
inline MultipartiteMax best_multipartite(std::size_t s, std::size_t parts) {
  MultipartiteMax best;
  bool first = true;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t remaining, std::size_t slots, std::size_t cap) -> void {
    if (slots == 0) {
      if (remaining != 0) return;
      std::size_t sq = 0;
      for (std::size_t t : cur) sq += t * t;
      const std::size_t edges = (s * s - sq) / 2;
      if (first || edges > best.edges) {
        best.edges = edges;
        best.partitions.clear();
        first = false;
      }
      if (edges == best.edges) best.partitions.push_back(cur);
      return;
    }
    for (std::size_t t = std::min(cap, remaining - (slots - 1)); t >= 1; --t) {
      if (t * slots < remaining) break;
      cur.push_back(t);
      self(self, remaining - t, slots - 1, t);
      cur.pop_back();
    }
  };
  if (s >= parts) rec(rec, s, parts, s);
  return best;
}

}  // namespace detail

/// Maximises e(G1 v G2) over C5 blow-ups G1 (all five parts non-empty) and
/// complete (r-2)-partite G2 (all parts non-empty) with |G1| + |G2| = n.
/// The objective separates as e(G1) + e(G2) + |G1||G2| for each split, so
/// each side is maximised over all its profiles independently.
inline ExtremalReport family_optimizer(std::size_t n, std::size_t r) {
  const CaseParams params(n, r, 1);
  const auto start = std::chrono::steady_clock::now();
  std::size_t best_total = 0;
  std::vector<Graph> maximizers;
  std::uint64_t evaluated = 0;
  for (std::size_t m = 5; m + (r - 2) <= n; ++m) {
    const detail::BlowupMax left = detail::best_blowups(m);
    const detail::MultipartiteMax right = detail::best_multipartite(n - m, r - 2);
    ++evaluated;
    const std::size_t total = left.edges + right.edges + m * (n - m);
    if (total < best_total) continue;
    if (total > best_total) {
      best_total = total;
      maximizers.clear();
    }
    for (const auto& prof : left.profiles)
      for (const auto& parts : right.partitions)
        maximizers.push_back(join(c5_blowup(prof), complete_multipartite(PartitionSpec(parts))));
  }
  ExtremalReport rep;
  rep.n = n;
  rep.r = r;
  rep.k = 1;
  rep.q = params.q();
  rep.p = params.p();
  rep.method = SearchMethod::family_optimizer;
  rep.optimum = static_cast<Count>(best_total);
  rep.extremal = canonical_set(maximizers);
  rep.exhaustive = false;
  rep.matches_case_table = rep.extremal == predicted_extremal_forms(params, TheoremMode::theorem14);
  rep.stats = {evaluated, std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)};
  return rep;
}

// ---------------------------------------------------------------------------
// Verification harness

enum class Verdict { AGREE, LOWER_BOUND_ONLY, DISAGREE };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::AGREE: return "AGREE";
    case Verdict::LOWER_BOUND_ONLY: return "LOWER_BOUND_ONLY";
    case Verdict::DISAGREE: return "DISAGREE";
  }
  return "?";
}

struct VerifyOptions {
  TheoremMode mode = TheoremMode::theorem1;
  SearchBudget budget;
  // Orders up to this use full enumeration as the oracle.
  std::size_t max_enumeration_order = 8;
  // Orders up to this (and above the enumeration cap) use branch-and-bound;
  // larger orders skip the oracle.
  std::size_t max_search_order = 11;
};

struct VerifyRecord {
  std::size_t n = 0, r = 0, k = 0, q = 0, p = 0;
  std::optional<Count> formula;
  std::optional<Count> family_opt;
  std::optional<Count> oracle;
  bool oracle_run = false;
  bool exhaustive = false;
  std::optional<bool> family_set_match;  // optimizer maximizers vs predicted set
  std::optional<bool> oracle_set_match;  // oracle extremal set vs predicted set
  Verdict verdict = Verdict::AGREE;
  std::optional<ExtremalReport> oracle_report;
};

inline std::string format_record(const VerifyRecord& rec) {
  auto opt = [](const std::optional<Count>& v) { return v ? std::to_string(*v) : std::string("NA"); };
  std::ostringstream os;
  os << "n=" << rec.n << " r=" << rec.r << " k=" << rec.k << " q=" << rec.q << " p=" << rec.p << " formula=" << opt(rec.formula)
     << " family_opt=" << opt(rec.family_opt) << " oracle=" << opt(rec.oracle)
     << " exhaustive=" << (rec.exhaustive ? "true" : "false") << " verdict=" << to_string(rec.verdict);
  return os.str();
}

inline VerifyRecord verify_order(std::size_t n, std::size_t r, std::size_t k, const VerifyOptions& opts) {
  VerifyRecord rec;
  rec.n = n;
  rec.r = r;
  rec.k = k;
  rec.q = n / r;
  rec.p = n % r;

  std::optional<std::vector<CanonicalForm>> predicted;
  if (n >= r + 3) {
    const CaseParams params(n, r, k);
    const bool in_regime = opts.mode == TheoremMode::theorem14 || params.q() >= 3;
    if (in_regime) {
      rec.formula = ex_nonpartite_value(params);
      predicted = predicted_extremal_forms(params, opts.mode);
    }
    const ExtremalReport fam = family_optimizer(n, r);
    rec.family_opt = fam.optimum;
    if (predicted) rec.family_set_match = fam.extremal == *predicted;
  }

  if (n <= opts.max_enumeration_order) {
    rec.oracle_report = enumerate_extremal(n, r, k, opts.budget);
  } else if (n <= opts.max_search_order) {
    rec.oracle_report = branch_bound_extremal(n, r, k, opts.budget);
  }
  if (rec.oracle_report) {
    rec.oracle_run = true;
    rec.oracle = rec.oracle_report->optimum;
    rec.exhaustive = rec.oracle_report->exhaustive;
    if (predicted && rec.exhaustive) rec.oracle_set_match = rec.oracle_report->extremal == *predicted;
  }

  bool conflict = false;
  if (rec.formula && rec.family_opt && *rec.formula != *rec.family_opt) conflict = true;
  if (rec.family_set_match == false) conflict = true;
  if (rec.formula && rec.oracle && *rec.oracle > *rec.formula) conflict = true;
  if (rec.exhaustive && rec.formula && rec.oracle != rec.formula) conflict = true;
  if (rec.oracle_set_match == false) conflict = true;

  if (conflict) {
    rec.verdict = Verdict::DISAGREE;
  } else if (!rec.formula || (rec.oracle_run && !rec.exhaustive)) {
    rec.verdict = Verdict::LOWER_BOUND_ONLY;
  } else {
    rec.verdict = Verdict::AGREE;
  }
  return rec;
}

/// One record per order in [n_from, n_to]. Disagreements are recorded, not thrown.
inline std::vector<VerifyRecord> verify_theorem(std::size_t r, std::size_t k, std::size_t n_from, std::size_t n_to,
                                                const VerifyOptions& opts = {}) {
  if (r < 3 || k < 1) throw std::invalid_argument("verification needs r >= 3 and k >= 1");
  if (n_from > n_to || n_from < 1) throw std::invalid_argument("order range is empty");
  std::vector<VerifyRecord> out;
  for (std::size_t n = n_from; n <= n_to; ++n) out.push_back(verify_order(n, r, k, opts));
  return out;
}

}  // namespace bookex
