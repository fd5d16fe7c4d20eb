#include <catch_amalgamated.hpp>

#include <random>

#include "gkz/linalg.hpp"
#include "oracles.hpp"

using namespace gkz;

namespace {

struct Sample {
  std::vector<SparseRowQ> sparse;
  std::vector<std::vector<Rational>> dense;
};

// Random low-rank-ish sparse matrix: a few random rows plus combinations of them.
Sample random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Sample s;
  std::size_t base = 1 + rng() % rows;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Rational> d(cols);
    if (r < base) {
      for (std::size_t c = 0; c < cols; ++c)
        if (rng() % 3 == 0) {
          Rational q(static_cast<long>(rng() % 9) - 4, static_cast<long>(1 + rng() % 3));
          q.canonicalize();
          d[c] = q;
        }
    } else {
      for (int k = 0; k < 2; ++k) {
        const auto& src = s.dense[rng() % base];
        Rational f(static_cast<long>(rng() % 5) - 2);
        for (std::size_t c = 0; c < cols; ++c) d[c] += f * src[c];
      }
    }
    SparseRowQ sr;
    // Shuffled column order exercises normalization.
    for (std::size_t c = cols; c-- > 0;)
      if (d[c] != 0) sr.emplace_back(static_cast<int>(c), d[c]);
    s.dense.push_back(d);
    s.sparse.push_back(sr);
  }
  return s;
}

}  // namespace

TEST_CASE("modular field arithmetic") {
  ModField F(7);
  CHECK(F.from_rational(Rational(1, 2)) == 4);
  CHECK(F.from_rational(Rational(-1, 3)) == 2);
  CHECK(F.mul(F.inv(5), 5) == 1);
  CHECK_THROWS(F.inv(0));
  ModField G(kPrimeA);
  for (std::uint64_t a : std::vector<std::uint64_t>{2, 12345, kPrimeA - 1}) CHECK(G.mul(a, G.inv(a)) == 1);
}

TEST_CASE("rank modulo large primes matches dense rational rank") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    auto s = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 8);
    CHECK(rank_q(s.sparse) == oracle::rank_dense(s.dense));
  }
}

TEST_CASE("split rank counts the intersection with the inside coordinates") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    std::size_t cols = 2 + rng() % 7;
    auto s = random_matrix(rng, 1 + rng() % 8, cols);
    int split = static_cast<int>(rng() % (cols + 1));
    // dim(span intersect inside) = rank - rank of the projection to outside columns.
    std::vector<std::vector<Rational>> outside;
    for (const auto& row : s.dense) outside.emplace_back(row.begin(), row.begin() + split);
    std::size_t rank = oracle::rank_dense(s.dense);
    std::size_t expect = rank - (split ? oracle::rank_dense(outside) : 0);
    auto got = split_rank(s.sparse, split);
    CHECK(got.primes_agree);
    CHECK(got.value.rank == rank);
    CHECK(got.value.inside == expect);
  }
}

TEST_CASE("small-prime echelon matches dense elimination mod p") {
  std::mt19937_64 rng(23);
  for (long long p : {2LL, 3LL, 5LL, 7LL}) {
    for (int t = 0; t < 50; ++t) {
      std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
      std::vector<std::vector<long long>> dense(rows, std::vector<long long>(cols));
      std::vector<SparseRowQ> sparse(rows);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          dense[r][c] = static_cast<long long>(rng() % 7) - 3;
          if (dense[r][c]) sparse[r].emplace_back(static_cast<int>(c), qi(dense[r][c]));
        }
      CHECK(split_rank_mod(sparse, 0, static_cast<std::uint64_t>(p)).rank == oracle::rank_dense_mod(dense, p));
    }
  }
}

TEST_CASE("echelon reports dependent rows") {
  SparseEchelon E(kPrimeB);
  CHECK(E.insert({{1, 1}, {3, 2}}) == 1);
  CHECK(E.insert({{3, 4}, {1, 2}}) == -1);
  CHECK(E.insert({{0, 5}}) == 0);
  CHECK(E.insert({}) == -1);
  CHECK(E.rank() == 2);
  CHECK(E.rank_below(1) == 1);
  CHECK(E.has_pivot(1));
}
