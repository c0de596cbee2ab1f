#include "helmnorm/matrix_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace helmnorm {

namespace {

static_assert(std::endian::native == std::endian::little, "matrix dumps assume a little-endian host");

void put_u32(std::ofstream& out, std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::uint32_t get_u32(std::ifstream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_matrix_dump(const std::string& path, const DenseOperator& a) {
  if (a.matrix.rows() != a.matrix.cols()) throw std::invalid_argument("matrix dump needs a square matrix");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write("HNRM", 4);
  const auto n = static_cast<std::uint32_t>(a.matrix.rows());
  put_u32(out, n);
  put_u32(out, kind_code(a.kind));
  std::vector<double> row(2 * static_cast<std::size_t>(n));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      row[2 * j] = a.matrix(i, j).real();
      row[2 * j + 1] = a.matrix(i, j).imag();
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

DenseOperator read_matrix_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "HNRM", 4) != 0) throw std::runtime_error("'" + path + "' is not a matrix dump");
  const std::uint32_t n = get_u32(in);
  DenseOperator a;
  a.kind = kind_from_code(get_u32(in));
  a.matrix.resize(n, n);
  std::vector<double> row(2 * static_cast<std::size_t>(n));
  for (std::uint32_t i = 0; i < n; ++i) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(double)));
    if (!in) throw std::runtime_error("'" + path + "' is truncated");
    for (std::uint32_t j = 0; j < n; ++j) a.matrix(i, j) = Complex(row[2 * j], row[2 * j + 1]);
  }
  return a;
}

}  // namespace helmnorm
