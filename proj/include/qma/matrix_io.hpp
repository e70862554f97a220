#pragma once

#include <iosfwd>
#include <string>

#include "qma/qrat.hpp"
#include "qma/sparse_op.hpp"

namespace qma {

// Text format for custom arity-2 operators:
//
//   dim N arity 2
//   a b c d <coeff-expr>
//
// One entry per line: row word (a,b), column word (c,d), 0-based indices,
// coefficient in the expression grammar. Omitted entries are zero; '#'
// starts a comment. The flattening convention is the engine-wide one
// (first tensor slot most significant).
SparseOp<QRat> read_matrix_file(const std::string& path);
SparseOp<QRat> read_matrix(std::istream& in, const std::string& name);

void write_matrix(std::ostream& out, const SparseOp<QRat>& op);

} // namespace qma
