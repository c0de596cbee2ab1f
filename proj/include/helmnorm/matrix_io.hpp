#pragma once

// Binary dumps of assembled matrices: "HNRM", u32 N, u32 kind code, then N*N
// row-major little-endian float64 (re, im) pairs.

#include <string>

#include "helmnorm/assembly.hpp"

namespace helmnorm {

void write_matrix_dump(const std::string& path, const DenseOperator& a);
DenseOperator read_matrix_dump(const std::string& path);

}  // namespace helmnorm
