#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qp/scalar.hpp"

namespace qp {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Rank by sparse row reduction against a table of pivot rows keyed by
/// leading column. Inputs here are mostly 0/1 with few nonzeros per row, where
/// dense elimination drowns in fill-in.
template <typename Scalar>
Eigen::Index rank(const Matrix<Scalar>& m) {
  using Row = std::map<Eigen::Index, Scalar>;
  const Scalar zero(0);
  std::map<Eigen::Index, Row> pivots;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Row row;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != zero) row.emplace(j, m(i, j));
    }
    while (!row.empty()) {
      const auto [lead, value] = *row.begin();
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const Scalar inv = Scalar(1) / value;
        for (auto& [j, x] : row) x = x * inv;
        pivots.emplace(lead, std::move(row));
        break;
      }
      const Scalar factor = value;
      for (const auto& [j, x] : it->second) {
        auto [slot, fresh] = row.try_emplace(j, zero);
        slot->second = slot->second - factor * x;
        if (slot->second == zero) row.erase(slot);
      }
    }
  }
  return static_cast<Eigen::Index>(pivots.size());
}

/// Basis of { x : m x = 0 } as the columns of the returned matrix (reduced row echelon form).
template <typename Scalar>
Matrix<Scalar> nullspace(Matrix<Scalar> m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  const Scalar zero(0);
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = r;
    while (pivot < rows && m(pivot, c) == zero) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == zero) continue;
      const Scalar factor = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) = m(i, j) - factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix<Scalar> basis(cols, cols - static_cast<Eigen::Index>(pivots.size()));
  basis.setConstant(zero);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      basis(pivots[i], k) = -m(static_cast<Eigen::Index>(i), free);
    }
    ++k;
  }
  return basis;
}

template <typename Scalar>
Matrix<Scalar> zeros(Eigen::Index rows, Eigen::Index cols) {
  Matrix<Scalar> m(rows, cols);
  m.setConstant(Scalar(0));
  return m;
}

}  // namespace qp
