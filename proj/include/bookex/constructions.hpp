#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bookex/canonical.hpp"
#include "bookex/graph.hpp"

namespace bookex {

/// Ordered part sizes t1..tr of a complete multipartite graph.
class PartitionSpec {
 public:
  explicit PartitionSpec(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] == 0) throw std::invalid_argument("partition part " + std::to_string(i) + " is empty");
    }
  }

  const std::vector<std::size_t>& parts() const { return parts_; }
  std::size_t part_count() const { return parts_.size(); }
  std::size_t order() const { return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0}); }

  // First label of part i.
  std::size_t offset(std::size_t i) const {
    return std::accumulate(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(i), std::size_t{0});
  }

 private:
  std::vector<std::size_t> parts_;
};

/// Part sizes (n1..n5) of a blow-up of the 5-cycle v1 v2 v3 v4 v5 v1.
struct BlowupProfile {
  std::array<std::size_t, 5> sizes{};

  std::size_t order() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < 5; ++i) e += sizes[i] * sizes[(i + 1) % 5];
    return e;
  }

  bool all_positive() const {
    return std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; });
  }

  /// Lexicographically least rotation/reflection; equal for family-equivalent profiles.
  BlowupProfile dihedral_min() const {
    BlowupProfile best = *this;
    for (std::size_t shift = 0; shift < 5; ++shift) {
      for (int dir : {1, -1}) {
        BlowupProfile cand;
        for (std::size_t i = 0; i < 5; ++i) {
          const std::size_t src = dir == 1 ? (shift + i) % 5 : (shift + 5 - i) % 5;
          cand.sizes[i] = sizes[src];
        }
        if (cand.sizes < best.sizes) best = cand;
      }
    }
    return best;
  }

  bool equivalent_to(const BlowupProfile& other) const { return dihedral_min() == other.dihedral_min(); }

  friend bool operator==(const BlowupProfile&, const BlowupProfile&) = default;
  friend auto operator<=>(const BlowupProfile&, const BlowupProfile&) = default;
};

/// The arithmetic frame n = q*r + p, 0 <= p < r, with r >= 3, k >= 1, n >= r + 3.
class CaseParams {
 public:
  CaseParams(std::size_t n, std::size_t r, std::size_t k) : n_(n), r_(r), k_(k) {
    if (r < 3) throw std::invalid_argument("r must be at least 3 (got " + std::to_string(r) + ")");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (n < r + 3) {
      throw std::invalid_argument("n must be at least r + 3 = " + std::to_string(r + 3) + " (got " + std::to_string(n) + ")");
    }
    q_ = n / r;
    p_ = n % r;
  }

  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  std::size_t k() const { return k_; }
  std::size_t q() const { return q_; }
  std::size_t p() const { return p_; }

  friend bool operator==(const CaseParams&, const CaseParams&) = default;

 private:
  std::size_t n_, r_, k_, q_ = 0, p_ = 0;
};

/// Whether family enumerators collapse isomorphic members.
enum class FamilyOutput { isomorphism_classes, raw };

inline Graph complete_multipartite(const PartitionSpec& spec) {
  Graph::Builder b(spec.order());
  std::vector<std::size_t> part_of;
  for (std::size_t i = 0; i < spec.part_count(); ++i) part_of.insert(part_of.end(), spec.parts()[i], i);
  for (Vertex u = 0; u < part_of.size(); ++u)
    for (Vertex v = u + 1; v < part_of.size(); ++v)
      if (part_of[u] != part_of[v]) b.add_edge(u, v);
  return std::move(b).build();
}

/// Part sizes of T_r(n): ceil(n/r) repeated n mod r times, then floor(n/r).
inline std::vector<std::size_t> turan_parts(std::size_t n, std::size_t r) {
  if (r < 1 || r > n) {
    throw std::invalid_argument("Turan graph needs 1 <= r <= n (got n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
  }
  std::vector<std::size_t> parts(r, n / r);
  for (std::size_t i = 0; i < n % r; ++i) ++parts[i];
  return parts;
}

inline Graph turan_graph(std::size_t n, std::size_t r) { return complete_multipartite(PartitionSpec(turan_parts(n, r))); }

/// Independent sets I1..I5 in consecutive label ranges, complete bipartite
/// links between cyclically consecutive sets. Zero-size parts are allowed.
inline Graph c5_blowup(const BlowupProfile& profile) {
  std::array<std::size_t, 6> offset{};
  for (std::size_t i = 0; i < 5; ++i) offset[i + 1] = offset[i] + profile.sizes[i];
  Graph::Builder b(offset[5]);
  for (std::size_t i = 0; i < 5; ++i) {
    const std::size_t j = (i + 1) % 5;
    for (std::size_t u = offset[i]; u < offset[i + 1]; ++u)
      for (std::size_t v = offset[j]; v < offset[j + 1]; ++v) b.add_edge(u, v);
  }
  return std::move(b).build();
}

inline std::vector<BlowupProfile> c5_1_profiles(std::size_t n) {
  if (n % 2 != 0 || n < 6) throw std::invalid_argument("C5^1[n] needs even n >= 6 (got " + std::to_string(n) + ")");
  std::vector<BlowupProfile> out;
  const std::size_t h = n / 2;
  for (std::size_t t = 1; t <= h - 1; ++t) out.push_back({{h - 2, t, 1, 1, h - t}});
  return out;
}

inline std::vector<BlowupProfile> c5_2_profiles(std::size_t n) {
  if (n % 2 != 0 || n < 6) throw std::invalid_argument("C5^2[n] needs even n >= 6 (got " + std::to_string(n) + ")");
  std::vector<BlowupProfile> out;
  const std::size_t h = n / 2;
  for (std::size_t t = 1; t <= h - 2; ++t) out.push_back({{h - 1, t, 1, 1, h - t - 1}});
  return out;
}

inline std::vector<BlowupProfile> c5_3_profiles(std::size_t n) {
  if (n % 2 != 1 || n < 5) throw std::invalid_argument("C5^3[n] needs odd n >= 5 (got " + std::to_string(n) + ")");
  std::vector<BlowupProfile> out;
  const std::size_t h = (n - 1) / 2;
  for (std::size_t t = 1; t <= h - 1; ++t) out.push_back({{h - 1, t, 1, 1, h - t}});
  return out;
}

namespace detail {

// Sorts by canonical form and drops isomorphic duplicates, or passes through.
inline std::vector<Graph> finish_family(std::vector<Graph> graphs, FamilyOutput mode) {
  if (mode == FamilyOutput::raw) return graphs;
  std::vector<std::pair<CanonicalForm, Graph>> keyed;
  for (auto& g : graphs) keyed.emplace_back(canonical_form(g), std::move(g));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Graph> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first) out.push_back(std::move(keyed[i].second));
  }
  return out;
}

inline std::vector<Graph> blowups_of(const std::vector<BlowupProfile>& profiles) {
  std::vector<Graph> out;
  for (const auto& p : profiles) out.push_back(c5_blowup(p));
  return out;
}

inline std::vector<Graph> join_each(const std::vector<BlowupProfile>& profiles, const Graph& right) {
  std::vector<Graph> out;
  for (const auto& p : profiles) out.push_back(join(c5_blowup(p), right));
  return out;
}

}  // namespace detail

inline std::vector<Graph> family_c5_1(std::size_t n, FamilyOutput mode = FamilyOutput::isomorphism_classes) {
  return detail::finish_family(detail::blowups_of(c5_1_profiles(n)), mode);
}

inline std::vector<Graph> family_c5_2(std::size_t n, FamilyOutput mode = FamilyOutput::isomorphism_classes) {
  return detail::finish_family(detail::blowups_of(c5_2_profiles(n)), mode);
}

inline std::vector<Graph> family_c5_3(std::size_t n, FamilyOutput mode = FamilyOutput::isomorphism_classes) {
  return detail::finish_family(detail::blowups_of(c5_3_profiles(n)), mode);
}

namespace detail {

inline void require_large_q(const CaseParams& params, const char* family, const char* c5_family) {
  if (params.q() < 3) {
    throw std::invalid_argument(std::string(family) + " needs F in " + c5_family + " of order >= 5, i.e. q >= 3 (got q=" +
                                std::to_string(params.q()) + ")");
  }
}

}  // namespace detail

/// G1[n] = { F v T_{r-2}(q(r-2)+p+1) : F in C5^3[2q-1] }.
inline std::vector<Graph> family_g1(const CaseParams& params, FamilyOutput mode = FamilyOutput::isomorphism_classes) {
  detail::require_large_q(params, "G1", "C5^3[2q-1]");
  const std::size_t q = params.q(), r = params.r(), p = params.p();
  const Graph right = turan_graph(q * (r - 2) + p + 1, r - 2);
  return detail::finish_family(detail::join_each(c5_3_profiles(2 * q - 1), right), mode);
}

/// G2[n] = { F v T_{r-2}(q(r-2)+p) : F in C5^1[2q] u C5^2[2q] }.
inline std::vector<Graph> family_g2(const CaseParams& params, FamilyOutput mode = FamilyOutput::isomorphism_classes) {
  detail::require_large_q(params, "G2", "C5^1[2q] u C5^2[2q]");
  const std::size_t q = params.q(), r = params.r(), p = params.p();
  const Graph right = turan_graph(q * (r - 2) + p, r - 2);
  auto profiles = c5_1_profiles(2 * q);
  auto second = c5_2_profiles(2 * q);
  profiles.insert(profiles.end(), second.begin(), second.end());
  return detail::finish_family(detail::join_each(profiles, right), mode);
}

/// G3[n] = { F v T_{r-2}(q(r-2)+p-1) : F in C5^3[2q+1] }.
inline std::vector<Graph> family_g3(const CaseParams& params, FamilyOutput mode = FamilyOutput::isomorphism_classes) {
  detail::require_large_q(params, "G3", "C5^3[2q+1]");
  const std::size_t q = params.q(), r = params.r(), p = params.p();
  const Graph right = turan_graph(q * (r - 2) + p - 1, r - 2);
  return detail::finish_family(detail::join_each(c5_3_profiles(2 * q + 1), right), mode);
}

/// C5 v T_{r-2}(n-5), the extremal graph for q in {1, 2}.
inline Graph c5_join_turan(std::size_t n, std::size_t r) {
  if (r < 3 || n < r + 3) throw std::invalid_argument("C5 v T_{r-2}(n-5) needs r >= 3 and n >= r + 3");
  return join(c5_blowup({{1, 1, 1, 1, 1}}), turan_graph(n - 5, r - 2));
}

/// B_{r,k} = K_r v kK_1.
inline Graph generalized_book(std::size_t r, std::size_t k) {
  if (r < 2) throw std::invalid_argument("generalized book needs r >= 2");
  if (k < 1) throw std::invalid_argument("generalized book needs k >= 1");
  return join(complete_graph(r), empty_graph(k));
}

/// Complete multipartite graph on `spec` plus the edge uv inside V1 (u, v
/// the two lowest labels of V1), with u keeping only the lowest s vertices
/// of V2 and v keeping only the remaining |V2| - s, so that u and v have no
/// common neighbour in V2.
inline Graph near_complete_ks(const PartitionSpec& spec, std::size_t s) {
  if (spec.part_count() < 3) throw std::invalid_argument("near-complete construction needs at least 3 parts");
  const auto& parts = spec.parts();
  if (parts[0] < 2) throw std::invalid_argument("near-complete construction needs |V1| >= 2");
  if (s > parts[1]) {
    throw std::invalid_argument("split s=" + std::to_string(s) + " outside [0, |V2|=" + std::to_string(parts[1]) + "]");
  }
  Graph::Builder b(complete_multipartite(spec));
  const Vertex u = 0;
  const Vertex v = 1;
  const std::size_t v2 = spec.offset(1);
  b.add_edge(u, v);
  for (std::size_t i = s; i < parts[1]; ++i) b.remove_edge(u, v2 + i);
  for (std::size_t i = 0; i < s; ++i) b.remove_edge(v, v2 + i);
  return std::move(b).build();
}

}  // namespace bookex
