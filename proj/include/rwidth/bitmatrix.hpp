#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rwidth {

inline constexpr std::size_t kMaxBitMatrixCols = 4096;

// Dense 0-1 matrix over GF(2).  Rows are packed into 64-bit words, bit j of
// row i is entry (i,j); padding bits past n_cols are kept zero.  A 0 x k or
// k x 0 matrix is valid and has rank 0.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t n_rows, std::size_t n_cols);

  // Rows given as strings of '0'/'1', e.g. {"1100", "0110"}.
  static BitMatrix from_strings(const std::vector<std::string>& rows);

  std::size_t n_rows() const { return rows_; }
  std::size_t n_cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& w = bits_[r * words_ + c / 64];
    const std::uint64_t m = std::uint64_t(1) << (c % 64);
    w = v ? (w | m) : (w & ~m);
  }

  std::span<const std::uint64_t> row(std::size_t r) const {
    return {bits_.data() + r * words_, words_};
  }
  std::span<std::uint64_t> row(std::size_t r) {
    return {bits_.data() + r * words_, words_};
  }

  std::size_t nnz() const;
  std::size_t row_nnz(std::size_t r) const;
  // Largest number of nonzeros in any single row or column (the M of the
  // sparse rank bound); 0 for an all-zero matrix.
  std::size_t max_line_nnz() const;

  BitMatrix transposed() const;

  bool operator==(const BitMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Row-space basis in echelon form: vector i has its lowest set bit at column
// pivots[i], and pivots are strictly increasing.
struct Gf2Basis {
  std::size_t n_cols = 0;
  std::vector<std::vector<std::uint64_t>> vectors;  // packed rows
  std::vector<std::size_t> pivots;

  std::size_t dimension() const { return vectors.size(); }
};

// GF(2) rank by Gaussian elimination on a working copy.
std::size_t rank(const BitMatrix& m);

// Echelonized basis of the row space of m.
Gf2Basis echelonize(const BitMatrix& m);

// True iff v lies in the span of the basis.  v must have n_cols logical bits.
bool basis_contains(const Gf2Basis& basis, std::span<const std::uint64_t> v);
bool basis_contains(const Gf2Basis& basis, const std::vector<std::uint64_t>& v);

struct SparseRankBound {
  std::size_t bound = 0;                  // == witness_rows.size()
  std::vector<std::size_t> witness_rows;  // ascending, linearly independent
};

// Constructive rank lower bound for sparse matrices: repeatedly take the
// lowest-index nonzero row, discard every row sharing its leading nonzero
// column, and keep it as a witness.  The witnesses are linearly independent,
// and with M = max_line_nnz() their count is at least ceil(nnz / M^2).
SparseRankBound sparse_rank_lower_bound(const BitMatrix& m);

}  // namespace rwidth
