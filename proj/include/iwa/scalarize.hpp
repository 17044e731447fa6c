#pragma once

// Reduction of F-linear systems (F = Q(theta), rational unknowns) to Q-linear
// systems by expanding every equation in the power basis 1, theta, ...,
// theta^(e-1). The rational solution sets coincide.

#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "realalg.hpp"

namespace iwa {

// Homogeneous system: one row of coefficients per equation. Returns the e
// stacked Q-systems (component 0 block first); identically-zero rows dropped.
inline MatQ scalarize_system(const std::vector<std::vector<RealAlgElem>>& eqs) {
  if (eqs.empty()) return MatQ(0, 0);
  const RealAlgField f = eqs.front().empty() ? RealAlgField::rationals() : eqs.front().front().field();
  const std::size_t n = eqs.front().size();
  for (const auto& row : eqs) {
    if (row.size() != n) throw DimensionError("ragged linear system");
    for (const auto& x : row)
      if (x.field() != f) throw FieldMismatchError("mixed fields in linear system");
  }
  const std::size_t e = static_cast<std::size_t>(f.degree());
  std::vector<VecQ> rows;
  for (std::size_t k = 0; k < e; ++k)
    for (const auto& eq : eqs) {
      VecQ row(n);
      bool nonzero = false;
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = eq[j].coeffs()[k];
        nonzero = nonzero || row[j] != 0;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  return MatQ::from_rows(rows, n);
}

// Kernel of an F-linear system over rational unknowns.
inline std::vector<VecQ> rational_kernel(const std::vector<std::vector<RealAlgElem>>& eqs) {
  return kernel_basis(scalarize_system(eqs));
}

} // namespace iwa
