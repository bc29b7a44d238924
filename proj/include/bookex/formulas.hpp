#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bookex/constructions.hpp"

namespace bookex {

// All arithmetic here is exact integer arithmetic.
using Count = std::int64_t;

inline Count turan_edge_count(std::size_t n, std::size_t r) {
  if (r < 1 || r > n) {
    throw std::invalid_argument("Turan edge count needs 1 <= r <= n (got n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
  }
  const auto nn = static_cast<Count>(n);
  const auto rr = static_cast<Count>(r);
  const Count lo = nn / rr;
  const Count hi = lo + (nn % rr == 0 ? 0 : 1);
  const Count rem = nn % rr;
  return (nn * nn - (rr - rem) * lo * lo - rem * hi * hi) / 2;
}

/// (1 - 1/r) n^2/2 - n/r + p(p+2)/(2r) - p/2 + 1, evaluated over the common
/// denominator 2r. Independent of k.
inline Count ex_nonpartite_value(const CaseParams& params) {
  const auto n = static_cast<Count>(params.n());
  const auto r = static_cast<Count>(params.r());
  const auto p = static_cast<Count>(params.p());
  const Count numerator = (r - 1) * n * n - 2 * n + p * (p + 2) - r * p + 2 * r;
  if (numerator % (2 * r) != 0) {
    throw std::logic_error("non-integral closed-form value for n=" + std::to_string(n) + ", r=" + std::to_string(r));
  }
  return numerator / (2 * r);
}

enum class TheoremMode { theorem1, theorem14 };

enum class CaseLabel { G1_G2, G1_G2_G3, G2_G3, G3_only, SMALL_Q_C5_JOIN };

enum class FamilyTag { G1, G2, G3, C5_JOIN };

struct ExtremalCase {
  CaseLabel label;
  std::vector<FamilyTag> families;

  friend bool operator==(const ExtremalCase&, const ExtremalCase&) = default;
};

inline const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::G1_G2: return "G1_G2";
    case CaseLabel::G1_G2_G3: return "G1_G2_G3";
    case CaseLabel::G2_G3: return "G2_G3";
    case CaseLabel::G3_only: return "G3_only";
    case CaseLabel::SMALL_Q_C5_JOIN: return "SMALL_Q_C5_JOIN";
  }
  return "?";
}

inline const char* to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::G1: return "G1";
    case FamilyTag::G2: return "G2";
    case FamilyTag::G3: return "G3";
    case FamilyTag::C5_JOIN: return "C5vT";
  }
  return "?";
}

inline const char* to_string(TheoremMode mode) { return mode == TheoremMode::theorem1 ? "theorem1" : "theorem14"; }

class BelowRegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Which families make up the extremal set for (q, p, r). The theorem1
/// table covers q >= 3 only; theorem14 adds the q in {1, 2} branch.
inline ExtremalCase extremal_case(const CaseParams& params, TheoremMode mode = TheoremMode::theorem1) {
  const std::size_t q = params.q(), p = params.p(), r = params.r();
  if (q <= 2) {
    if (mode == TheoremMode::theorem1) {
      throw BelowRegimeError("q=" + std::to_string(q) + " is below the large-n regime of the book-graph case table; use theorem14 mode");
    }
    return {CaseLabel::SMALL_Q_C5_JOIN, {FamilyTag::C5_JOIN}};
  }
  if (p == 0) return {CaseLabel::G1_G2, {FamilyTag::G1, FamilyTag::G2}};
  if (p <= r - 3) return {CaseLabel::G1_G2_G3, {FamilyTag::G1, FamilyTag::G2, FamilyTag::G3}};
  if (p == r - 2) return {CaseLabel::G2_G3, {FamilyTag::G2, FamilyTag::G3}};
  return {CaseLabel::G3_only, {FamilyTag::G3}};
}

/// (1-1/r) n^2/2 - r/8 <= e(T_r(n)) <= (1-1/r) n^2/2, compared after scaling by 8r.
inline bool turan_sandwich_holds(std::size_t n, std::size_t r) {
  if (r < 2 || r > n) throw std::invalid_argument("sandwich bound needs 2 <= r <= n");
  const auto nn = static_cast<Count>(n);
  const auto rr = static_cast<Count>(r);
  const Count scaled = 8 * rr * turan_edge_count(n, r);
  const Count upper = 4 * (rr - 1) * nn * nn;
  const Count lower = upper - rr * rr;
  return lower <= scaled && scaled <= upper;
}

/// sum |V_i| - (t-1) |union V_i|; a lower bound on |intersection V_i|.
inline Count intersection_lower_bound(std::span<const Count> sizes, Count union_size) {
  if (sizes.empty()) throw std::invalid_argument("intersection bound needs at least one set");
  Count sum = 0;
  for (Count s : sizes) {
    if (s < 0) throw std::invalid_argument("set sizes must be non-negative");
    sum += s;
  }
  return sum - static_cast<Count>(sizes.size() - 1) * union_size;
}

}  // namespace bookex
