#pragma once

#include <gmpxx.h>

#include <vector>

namespace coulombkit::linalg {

using IntMatrix = std::vector<std::vector<int>>;
using RatMatrix = std::vector<std::vector<mpq_class>>;

RatMatrix to_rational(const IntMatrix& m);
int rank(const IntMatrix& rows, int cols);
// Basis of {v : rows * v = 0}, each vector scaled to a primitive integer vector.
IntMatrix nullspace(const IntMatrix& rows, int cols);
mpq_class determinant(const IntMatrix& square);
// Inverse of a square matrix; throws if singular.
RatMatrix inverse(const IntMatrix& square);
std::vector<int> primitive(const std::vector<mpq_class>& v);
int dot(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace coulombkit::linalg
