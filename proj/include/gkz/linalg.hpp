#pragma once

// Sparse row echelon forms over Z/p, and exact-rank computations for rational
// matrices by reduction modulo two large primes.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gkz/rational.hpp"

namespace gkz {

using SparseRowQ = std::vector<std::pair<int, Rational>>;
using SparseRowP = std::vector<std::pair<int, std::uint64_t>>;

inline constexpr std::uint64_t kPrimeA = 2305843009213693951ULL;  // 2^61 - 1
inline constexpr std::uint64_t kPrimeB = 4611686018427387847ULL;  // 2^62 - 57

// Incremental row echelon form over Z/p. Column indices order the pivots:
// a row's leading entry is its smallest column index.
class SparseEchelon {
public:
  explicit SparseEchelon(std::uint64_t p) : F_(p) {}

  const ModField& field() const noexcept { return F_; }

  // Reduces the row against stored pivots; stores it if it survives.
  // Returns the new pivot column, or -1 when the row is dependent.
  int insert(SparseRowP row) {
    normalize(row);
    SparseRowP scratch;
    while (!row.empty()) {
      int c = row.front().first;
      auto it = pivots_.find(c);
      if (it == pivots_.end()) {
        std::uint64_t inv = F_.inv(row.front().second);
        for (auto& [k, v] : row) v = F_.mul(v, inv);
        pivots_.emplace(c, std::move(row));
        return c;
      }
      // row -= row[c] * pivot
      std::uint64_t f = row.front().second;
      const SparseRowP& piv = it->second;
      scratch.clear();
      scratch.reserve(row.size() + piv.size());
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < piv.size()) {
        if (b == piv.size() || (a < row.size() && row[a].first < piv[b].first)) {
          scratch.push_back(row[a++]);
        } else if (a == row.size() || piv[b].first < row[a].first) {
          scratch.emplace_back(piv[b].first, F_.neg(F_.mul(f, piv[b].second)));
          ++b;
        } else {
          std::uint64_t v = F_.sub(row[a].second, F_.mul(f, piv[b].second));
          if (v != 0) scratch.emplace_back(row[a].first, v);
          ++a;
          ++b;
        }
      }
      row.swap(scratch);
    }
    return -1;
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  // Number of pivots whose column index is < split.
  std::size_t rank_below(int split) const {
    std::size_t r = 0;
    for (const auto& [c, row] : pivots_) r += c < split;
    return r;
  }

  bool has_pivot(int col) const { return pivots_.count(col) > 0; }

private:
  void normalize(SparseRowP& row) const {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseRowP out;
    for (const auto& [c, v] : row) {
      if (!out.empty() && out.back().first == c)
        out.back().second = F_.add(out.back().second, v);
      else
        out.emplace_back(c, v);
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    row.swap(out);
  }

  ModField F_;
  std::unordered_map<int, SparseRowP> pivots_;
};

inline SparseRowP reduce_row(const SparseRowQ& row, const ModField& F) {
  SparseRowP out;
  out.reserve(row.size());
  for (const auto& [c, q] : row) {
    auto v = F.from_rational(q);
    if (v) out.emplace_back(c, v);
  }
  return out;
}

// For rows spanning a subspace of Q^cols, with columns [0, split) "outside"
// and [split, cols) "inside": returns (rank, dim(span intersect inside-coordinate subspace)).
struct SplitRank {
  std::size_t rank = 0;
  std::size_t inside = 0;
  bool operator==(const SplitRank&) const = default;
};

inline SplitRank split_rank_mod(const std::vector<SparseRowQ>& rows, int split, std::uint64_t p) {
  SparseEchelon E(p);
  for (const auto& r : rows) E.insert(reduce_row(r, E.field()));
  return {E.rank(), E.rank() - E.rank_below(split)};
}

// Rank data over Q computed modulo two independent large primes. The modular
// rank never exceeds the rational rank; agreement of the two primes is
// recorded and, on disagreement, the result with the larger total rank is kept.
struct ExactSplitRank {
  SplitRank value;
  bool primes_agree = true;
};

inline ExactSplitRank split_rank(const std::vector<SparseRowQ>& rows, int split) {
  auto a = split_rank_mod(rows, split, kPrimeA);
  auto b = split_rank_mod(rows, split, kPrimeB);
  if (a == b) return {a, true};
  return {a.rank >= b.rank ? a : b, false};
}

inline std::size_t rank_q(const std::vector<SparseRowQ>& rows) {
  return split_rank(rows, 0).value.rank;
}

}  // namespace gkz
