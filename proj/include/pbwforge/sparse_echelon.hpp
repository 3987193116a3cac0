#pragma once

// Incremental sparse row echelon basis. Used where the ambient spaces get
// large (ideal components, the filtered-ideal oracle). Columns are plain
// indices; the caller chooses the index order, and the leading (smallest)
// index of a vector is its pivot.

#include "scalar.hpp"

#include <cstddef>
#include <algorithm>
#include <utility>
#include <vector>

namespace pbwforge {

struct SparseEntry {
  std::size_t index;
  Scalar value;
};

/// Entries sorted by strictly increasing index, no explicit zeros.
using SparseVector = std::vector<SparseEntry>;

class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambient_dim)
      : ambient_(ambient_dim), row_of_pivot_(ambient_dim, npos), work_(ambient_dim) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::size_t col) const { return row_of_pivot_[col] != npos; }
  const std::vector<SparseVector>& rows() const { return rows_; }

  /// Adds a row that is known to have a fresh pivot (its leading index is not
  /// yet a pivot). Skips the reduction; the caller guarantees the claim.
  void insert_unreduced(SparseVector v) {
    if (v.empty()) return;
    const std::size_t p = v.front().index;
    if (is_pivot(p)) throw input_error("insert_unreduced: pivot already taken");
    normalize(v);
    row_of_pivot_[p] = rows_.size();
    rows_.push_back(std::move(v));
  }

  /// Reduces v against the basis and keeps it if independent. Returns true
  /// when the rank grew.
  bool insert(const SparseVector& v) {
    SparseVector r = reduce_impl(v, /*full=*/false);
    if (r.empty()) return false;
    insert_unreduced(std::move(r));
    return true;
  }

  /// Canonical normal form: v minus a combination of basis rows such that no
  /// entry sits on a pivot column. Zero iff v is in the span.
  SparseVector normal_form(const SparseVector& v) { return reduce_impl(v, /*full=*/true); }

  bool contains(const SparseVector& v) { return reduce_impl(v, /*full=*/false).empty(); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static void normalize(SparseVector& v) {
    const Scalar inv = 1 / v.front().value;
    for (auto& e : v) e.value *= inv;
  }

  // Dense scratch row: entries are scattered in, eliminated in increasing
  // column order and gathered back. With full=false we stop at the first
  // surviving entry (enough to decide rank) and gather the remainder as is.
  SparseVector reduce_impl(const SparseVector& v, bool full) {
    if (v.empty()) return {};
    std::size_t lo = ambient_, hi = 0;
    for (const auto& e : v) {
      work_[e.index] = e.value;
      lo = std::min(lo, e.index);
      hi = std::max(hi, e.index);
    }
    SparseVector out;
    bool stopped = false;
    for (std::size_t c = lo; c <= hi; ++c) {
      if (sgn(work_[c]) == 0) continue;
      const std::size_t r = row_of_pivot_[c];
      if (r == npos || stopped) {
        if (!full) stopped = true;
        out.push_back({c, work_[c]});
        work_[c] = 0;
        continue;
      }
      const Scalar f = work_[c];
      for (const auto& e : rows_[r]) {
        work_[e.index] -= f * e.value;
        hi = std::max(hi, e.index);
      }
      work_[c] = 0;
    }
    return out;
  }

  std::size_t ambient_;
  std::vector<SparseVector> rows_;
  std::vector<std::size_t> row_of_pivot_;
  std::vector<Scalar> work_;
};

}  // namespace pbwforge
