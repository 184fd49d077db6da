#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace omorse {

using Rational = boost::multiprecision::mpq_rational;
using RVector = std::vector<Rational>;
using RMatrix = std::vector<RVector>;

// Parses "p/q", "-p/q" or an integer. Throws InputError.
Rational parse_rational(const std::string& token);
std::string format_rational(const Rational& q);

int sign(const Rational& q);
Rational dot(const RVector& a, const RVector& b);

// Rank of the row set (rows may have any count, all of equal length).
std::size_t rank(const RMatrix& rows);

// Rows of an RREF basis of the row space; zero rows dropped.
RMatrix row_echelon_basis(const RMatrix& rows);

// Basis (as column vectors, returned one per entry) of {x : row.x = 0 for all rows}.
// `dim` is the ambient dimension; needed when `rows` is empty.
RMatrix kernel_basis(const RMatrix& rows, std::size_t dim);

bool same_row_space(const RMatrix& a, const RMatrix& b);
bool in_row_space(const RMatrix& rows, const RVector& v);

// Scale so the first nonzero entry is +-1 (sign kept); zero vector unchanged.
RVector normalize_leading(const RVector& v);

}  // namespace omorse
