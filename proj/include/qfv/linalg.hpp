#ifndef QFV_LINALG_HPP
#define QFV_LINALG_HPP

#include <vector>

#include "qfv/field.hpp"

namespace qfv {

using CoeffMatrix = std::vector<std::vector<Coeff>>;

/// In-place reduced row echelon form; returns the pivot columns in order.
/// Columns are eliminated left to right unless a priority order is given.
std::vector<unsigned> row_reduce(CoeffMatrix& M);
std::vector<unsigned> row_reduce(CoeffMatrix& M, const std::vector<unsigned>& column_order);

unsigned matrix_rank(CoeffMatrix M);

} // namespace qfv

#endif
