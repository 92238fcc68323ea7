#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gic/core/types.hpp"

namespace gic {

// Matrix over the two-element field, stored as sparse columns of sorted row
// indices. Boundary operators and chain-map matrices are column-oriented,
// so this is the natural layout for them.
class Z2Matrix {
 public:
  using Index = std::uint32_t;
  using Column = std::vector<Index>;

  Z2Matrix() = default;
  Z2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static Z2Matrix identity(std::size_t n) {
    Z2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i] = {static_cast<Index>(i)};
    return m;
  }

  // Row-major 0/1 literal; entries are taken mod 2.
  static Z2Matrix from_dense(const std::vector<std::vector<int>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    Z2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw PreconditionError("ragged dense matrix literal");
      for (std::size_t j = 0; j < c; ++j) {
        if (rows[i][j] & 1) m.columns_[j].push_back(static_cast<Index>(i));
      }
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }

  bool get(std::size_t r, std::size_t c) const {
    const auto& col = columns_.at(c);
    return std::binary_search(col.begin(), col.end(), static_cast<Index>(r));
  }

  void set(std::size_t r, std::size_t c, bool value) {
    if (r >= rows_) throw PreconditionError("row index out of range");
    auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), static_cast<Index>(r));
    const bool present = it != col.end() && *it == r;
    if (value && !present) col.insert(it, static_cast<Index>(r));
    if (!value && present) col.erase(it);
  }

  const Column& column(std::size_t c) const { return columns_.at(c); }

  // Entries appearing an even number of times cancel.
  void set_column(std::size_t c, Column entries) { columns_.at(c) = normalize(std::move(entries)); }

  void append_column(Column entries) { columns_.push_back(normalize(std::move(entries))); }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.empty(); });
  }

  Z2Matrix transpose() const {
    Z2Matrix t(cols(), rows_);
    for (std::size_t j = 0; j < cols(); ++j) {
      for (Index i : columns_[j]) t.columns_[i].push_back(static_cast<Index>(j));
    }
    return t;
  }

  friend Z2Matrix operator+(const Z2Matrix& a, const Z2Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols() != b.cols()) throw PreconditionError("matrix shape mismatch in sum");
    Z2Matrix s = a;
    for (std::size_t j = 0; j < a.cols(); ++j) add_into(s.columns_[j], b.columns_[j]);
    return s;
  }

  friend Z2Matrix operator*(const Z2Matrix& a, const Z2Matrix& b) {
    if (a.cols() != b.rows_) {
      throw PreconditionError("matrix shape mismatch in product: " + std::to_string(a.cols()) + " vs " +
                              std::to_string(b.rows_));
    }
    Z2Matrix p(a.rows_, b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Column acc;
      for (Index k : b.columns_[j]) add_into(acc, a.columns_[k]);
      p.columns_[j] = std::move(acc);
    }
    return p;
  }

  friend bool operator==(const Z2Matrix& a, const Z2Matrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

  // target <- target + source (symmetric difference of sorted index sets).
  static void add_into(Column& target, const Column& source) {
    Column out;
    out.reserve(target.size() + source.size());
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(out));
    target.swap(out);
  }

 private:
  static Column normalize(Column entries) {
    std::sort(entries.begin(), entries.end());
    Column out;
    for (std::size_t i = 0; i < entries.size();) {
      std::size_t j = i;
      while (j < entries.size() && entries[j] == entries[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(entries[i]);
      i = j;
    }
    return out;
  }

  std::size_t rows_ = 0;
  std::vector<Z2Matrix::Column> columns_;
};

// Incremental column echelon form keyed by the lowest (largest-index) entry.
// reduce() brings a column to normal form against the stored pivots; add()
// also stores it when it is independent.
class ColumnReducer {
 public:
  using Column = Z2Matrix::Column;

  // Returns true when the column is independent of everything added so far.
  bool reduce(Column& col) const {
    while (!col.empty()) {
      auto it = pivot_.find(col.back());
      if (it == pivot_.end()) return true;
      Z2Matrix::add_into(col, basis_[it->second]);
    }
    return false;
  }

  bool add(Column col) {
    if (!reduce(col)) return false;
    pivot_.emplace(col.back(), basis_.size());
    basis_.push_back(std::move(col));
    return true;
  }

  std::size_t rank() const { return basis_.size(); }

 private:
  std::unordered_map<Z2Matrix::Index, std::size_t> pivot_;
  std::vector<Column> basis_;
};

inline std::size_t z2_rank(const Z2Matrix& m) {
  ColumnReducer reducer;
  for (std::size_t j = 0; j < m.cols(); ++j) reducer.add(m.column(j));
  return reducer.rank();
}

}  // namespace gic
