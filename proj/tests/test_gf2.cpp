#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rwidth/bitmatrix.hpp"
#include "rwidth/errors.hpp"
#include "rwidth/prng.hpp"
#include "test_util.hpp"

using rwidth::BitMatrix;
using rwidth::Gf2Basis;

namespace {

BitMatrix identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

std::vector<std::uint64_t> packed(std::initializer_list<int> bits) {
  std::uint64_t w = 0;
  std::size_t j = 0;
  for (int b : bits) {
    if (b) w |= std::uint64_t(1) << j;
    ++j;
  }
  return {w};
}

}  // namespace

TEST_CASE("rank on fixed matrices") {
  CHECK(rwidth::rank(identity(3)) == 3);
  CHECK(rwidth::rank(BitMatrix(2, 5)) == 0);

  BitMatrix ones(4, 6);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 6; ++j) ones.set(i, j, true);
  CHECK(rwidth::rank(ones) == 1);

  // third row is the xor of the first two
  const BitMatrix dep = BitMatrix::from_strings({"1100", "0110", "1010"});
  CHECK(rwidth::rank(dep) == 2);
  CHECK(testutil::span_rank(dep) == 2);

  CHECK(rwidth::rank(BitMatrix(0, 7)) == 0);
  CHECK(rwidth::rank(BitMatrix(7, 0)) == 0);
}

TEST_CASE("rank equals the span-size oracle on every tiny matrix") {
  // every shape with n_rows * n_cols <= 16, every bit pattern
  for (std::size_t r = 1; r <= 16; ++r) {
    for (std::size_t c = 1; r * c <= 16; ++c) {
      const std::uint64_t patterns = std::uint64_t(1) << (r * c);
      for (std::uint64_t bits = 0; bits < patterns; ++bits) {
        BitMatrix m(r, c);
        for (std::size_t i = 0; i < r * c; ++i)
          if ((bits >> i) & 1) m.set(i / c, i % c, true);
        CAPTURE(r);
        CAPTURE(c);
        CAPTURE(bits);
        REQUIRE(rwidth::rank(m) == testutil::span_rank(m));
      }
    }
  }
}

TEST_CASE("rank is invariant under transposition") {
  rwidth::SplitMix64 gen(0xA11CE);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + gen.next_below(12);
    const std::size_t c = 1 + gen.next_below(12);
    const BitMatrix m = testutil::random_matrix(r, c, 0.4, gen);
    CHECK(rwidth::rank(m) == rwidth::rank(m.transposed()));
  }
}

TEST_CASE("echelonize basics") {
  CHECK(rwidth::echelonize(BitMatrix(3, 4)).dimension() == 0);

  const Gf2Basis id3 = rwidth::echelonize(identity(3));
  CHECK(id3.dimension() == 3);
  CHECK(id3.pivots == std::vector<std::size_t>{0, 1, 2});

  const Gf2Basis b = rwidth::echelonize(BitMatrix::from_strings({"11", "01"}));
  CHECK(b.dimension() == 2);
  CHECK(b.pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("echelonize spans exactly the row space") {
  rwidth::SplitMix64 gen(0xBEE5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + gen.next_below(10);
    const std::size_t c = 1 + gen.next_below(16);
    const BitMatrix m = testutil::random_matrix(r, c, 0.5, gen);
    const Gf2Basis basis = rwidth::echelonize(m);
    CHECK(basis.dimension() == rwidth::rank(m));
    // pivots strictly increasing, each vector leads at its pivot
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
      if (i) CHECK(basis.pivots[i - 1] < basis.pivots[i]);
      const std::uint64_t word = basis.vectors[i][basis.pivots[i] / 64];
      CHECK(((word >> (basis.pivots[i] % 64)) & 1) == 1);
      for (std::size_t j = 0; j < basis.pivots[i]; ++j)
        CHECK(!((basis.vectors[i][j / 64] >> (j % 64)) & 1));
    }
    // every row of m is contained
    for (std::size_t i = 0; i < r; ++i) {
      const auto row = m.row(i);
      CHECK(rwidth::basis_contains(
          basis, std::vector<std::uint64_t>(row.begin(), row.end())));
    }
  }
}

TEST_CASE("basis_contains") {
  const Gf2Basis empty = rwidth::echelonize(BitMatrix(0, 4));
  CHECK(rwidth::basis_contains(empty, packed({0, 0, 0, 0})));
  CHECK(!rwidth::basis_contains(empty, packed({0, 1, 0, 0})));

  const Gf2Basis b =
      rwidth::echelonize(BitMatrix::from_strings({"1100", "0011"}));
  CHECK(rwidth::basis_contains(b, packed({1, 1, 1, 1})));
  CHECK(rwidth::basis_contains(b, packed({1, 1, 0, 0})));
  CHECK(!rwidth::basis_contains(b, packed({1, 0, 0, 0})));

  CHECK_THROWS_AS(rwidth::basis_contains(b, std::vector<std::uint64_t>{0, 0}),
                  std::invalid_argument);
}

TEST_CASE("sparse rank lower bound on fixed matrices") {
  SUBCASE("identity is recovered in full") {
    const auto res = rwidth::sparse_rank_lower_bound(identity(6));
    CHECK(res.bound == 6);
    CHECK(res.witness_rows.size() == 6);
  }
  SUBCASE("all-ones collapses to one witness") {
    BitMatrix ones(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) ones.set(i, j, true);
    const auto res = rwidth::sparse_rank_lower_bound(ones);
    CHECK(res.bound == 1);  // nnz=16, M=4, ceil(16/16)=1
    CHECK(res.witness_rows == std::vector<std::size_t>{0});
  }
  SUBCASE("block diagonal of 2x2 all-ones blocks is tight") {
    BitMatrix m(6, 6);
    for (int blk = 0; blk < 3; ++blk)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.set(2 * blk + i, 2 * blk + j, true);
    const auto res = rwidth::sparse_rank_lower_bound(m);
    CHECK(res.bound == 3);  // nnz=12, M=2, ceil(12/4)=3
    CHECK(res.witness_rows == std::vector<std::size_t>{0, 2, 4});
    // witness rows independent
    BitMatrix sub(res.witness_rows.size(), 6);
    for (std::size_t i = 0; i < res.witness_rows.size(); ++i)
      for (std::size_t j = 0; j < 6; ++j)
        sub.set(i, j, m.get(res.witness_rows[i], j));
    CHECK(rwidth::rank(sub) == res.bound);
  }
  SUBCASE("all-zero matrix") {
    const auto res = rwidth::sparse_rank_lower_bound(BitMatrix(3, 3));
    CHECK(res.bound == 0);
    CHECK(res.witness_rows.empty());
  }
}

TEST_CASE("sparse rank lower bound properties on random sparse matrices") {
  rwidth::SplitMix64 gen(0x5EED);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t r = 1 + gen.next_below(24);
    const std::size_t c = 1 + gen.next_below(24);
    const double p = 0.02 + 0.2 * gen.next_unit();
    const BitMatrix m = testutil::random_matrix(r, c, p, gen);
    const auto res = rwidth::sparse_rank_lower_bound(m);
    const std::size_t nnz = m.nnz();
    const std::size_t line = m.max_line_nnz();
    if (nnz >= 1) {
      const std::size_t guaranteed = (nnz + line * line - 1) / (line * line);
      CHECK(res.bound >= guaranteed);
    } else {
      CHECK(res.bound == 0);
    }
    // independence: the witness rows span a space of full dimension
    BitMatrix sub(res.witness_rows.size(), c);
    for (std::size_t i = 0; i < res.witness_rows.size(); ++i)
      for (std::size_t j = 0; j < c; ++j)
        sub.set(i, j, m.get(res.witness_rows[i], j));
    CHECK(rwidth::rank(sub) == res.bound);
    CHECK(res.bound <= rwidth::rank(m));
  }
}

TEST_CASE("column cap is enforced") {
  CHECK_THROWS_AS(BitMatrix(1, rwidth::kMaxBitMatrixCols + 1),
                  rwidth::capacity_error);
  CHECK_NOTHROW(BitMatrix(1, rwidth::kMaxBitMatrixCols));
}
