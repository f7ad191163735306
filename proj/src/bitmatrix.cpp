#include "rwidth/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rwidth/errors.hpp"

namespace rwidth {

BitMatrix::BitMatrix(std::size_t n_rows, std::size_t n_cols)
    : rows_(n_rows), cols_(n_cols), words_((n_cols + 63) / 64) {
  if (n_cols > kMaxBitMatrixCols)
    throw capacity_error("BitMatrix: " + std::to_string(n_cols) +
                         " columns exceeds cap " +
                         std::to_string(kMaxBitMatrixCols));
  bits_.assign(rows_ * words_, 0);
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("BitMatrix::from_strings: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] == '1')
        m.set(i, j, true);
      else if (rows[i][j] != '0')
        throw std::invalid_argument("BitMatrix::from_strings: bad character");
    }
  }
  return m;
}

std::size_t BitMatrix::nnz() const {
  std::size_t s = 0;
  for (std::uint64_t w : bits_) s += std::popcount(w);
  return s;
}

std::size_t BitMatrix::row_nnz(std::size_t r) const {
  std::size_t s = 0;
  for (std::uint64_t w : row(r)) s += std::popcount(w);
  return s;
}

std::size_t BitMatrix::max_line_nnz() const {
  std::size_t best = 0;
  for (std::size_t r = 0; r < rows_; ++r) best = std::max(best, row_nnz(r));
  std::vector<std::size_t> col_cnt(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = bits_[r * words_ + w];
      while (bits) {
        col_cnt[w * 64 + std::countr_zero(bits)]++;
        bits &= bits - 1;
      }
    }
  for (std::size_t c = 0; c < cols_; ++c) best = std::max(best, col_cnt[c]);
  return best;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = bits_[r * words_ + w];
      while (bits) {
        t.set(w * 64 + std::countr_zero(bits), r, true);
        bits &= bits - 1;
      }
    }
  return t;
}

namespace {

// Index of the lowest set bit, or npos if the vector is zero.
std::size_t leading_bit(std::span<const std::uint64_t> v) {
  for (std::size_t w = 0; w < v.size(); ++w)
    if (v[w]) return w * 64 + std::countr_zero(v[w]);
  return static_cast<std::size_t>(-1);
}

void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

}  // namespace

Gf2Basis echelonize(const BitMatrix& m) {
  Gf2Basis basis;
  basis.n_cols = m.n_cols();
  // slot[c] = index into basis.vectors of the vector with pivot c, or -1.
  std::vector<int> slot(m.n_cols(), -1);
  std::vector<std::uint64_t> v;
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    const auto row = m.row(r);
    v.assign(row.begin(), row.end());
    for (;;) {
      const std::size_t lead = leading_bit(v);
      if (lead == static_cast<std::size_t>(-1)) break;
      if (slot[lead] < 0) {
        slot[lead] = static_cast<int>(basis.vectors.size());
        basis.vectors.push_back(v);
        basis.pivots.push_back(lead);
        break;
      }
      xor_into(v, basis.vectors[slot[lead]]);
    }
  }
  // Order by pivot column.
  std::vector<std::size_t> order(basis.vectors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return basis.pivots[a] < basis.pivots[b];
  });
  Gf2Basis sorted;
  sorted.n_cols = basis.n_cols;
  for (std::size_t i : order) {
    sorted.vectors.push_back(std::move(basis.vectors[i]));
    sorted.pivots.push_back(basis.pivots[i]);
  }
  return sorted;
}

std::size_t rank(const BitMatrix& m) { return echelonize(m).dimension(); }

bool basis_contains(const Gf2Basis& basis, std::span<const std::uint64_t> v) {
  if (v.size() != (basis.n_cols + 63) / 64)
    throw std::invalid_argument("basis_contains: vector length mismatch");
  std::vector<std::uint64_t> work(v.begin(), v.end());
  for (;;) {
    const std::size_t lead = leading_bit(work);
    if (lead == static_cast<std::size_t>(-1)) return true;
    const auto it =
        std::lower_bound(basis.pivots.begin(), basis.pivots.end(), lead);
    if (it == basis.pivots.end() || *it != lead) return false;
    xor_into(work, basis.vectors[it - basis.pivots.begin()]);
  }
}

bool basis_contains(const Gf2Basis& basis, const std::vector<std::uint64_t>& v) {
  return basis_contains(basis, std::span<const std::uint64_t>(v));
}

SparseRankBound sparse_rank_lower_bound(const BitMatrix& m) {
  SparseRankBound out;
  std::vector<char> alive(m.n_rows(), 1);
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    if (!alive[r]) continue;
    const std::size_t lead = leading_bit(m.row(r));
    if (lead == static_cast<std::size_t>(-1)) continue;  // zero row
    out.witness_rows.push_back(r);
    // Discard every remaining row with a 1 in the pivot column (r included).
    for (std::size_t k = r; k < m.n_rows(); ++k)
      if (alive[k] && m.get(k, lead)) alive[k] = 0;
  }
  out.bound = out.witness_rows.size();
  return out;
}

}  // namespace rwidth
