#pragma once

// Exact row elimination over the coefficient fields. Columns are kept in the
// order given by the caller; pivots are always taken from the first eligible
// row, so results are reproducible.

#include <optional>
#include <vector>

#include "mns/scalars.hpp"

namespace mns {

using Matrix = std::vector<std::vector<Scalar>>;

/// Rank over Q by fraction-free (Bareiss) elimination on the row-scaled
/// integer matrix. Every entry must be rational.
std::size_t rank_fraction_free(const Matrix& rows);

struct EliminationResult {
  std::size_t rank = 0;
  /// c != 0 with sum_i c_i row_i = 0; the support ends at the first row that
  /// reduces to zero against its predecessors, whose coefficient is 1.
  std::optional<std::vector<Scalar>> dependency;
};

/// Incremental Gauss elimination with an augmented identity, over the field
/// of the entries.
EliminationResult eliminate(const Matrix& rows, const Field& field);

/// Rank by the method suited to the field: Bareiss over Q, Gauss otherwise.
std::size_t matrix_rank(const Matrix& rows, const Field& field);

}  // namespace mns
