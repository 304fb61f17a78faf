#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace nullcert::linalg {

/// Dense row-major matrix over GF(p) with entries in [0, p).
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> data_;
};

/// Solves M x = rhs by Gauss-Jordan elimination. Pivots are taken from the
/// first row holding a nonzero entry in the current column and free
/// variables are set to zero, so the returned solution is deterministic.
/// Returns nullopt when the system is inconsistent.
std::optional<std::vector<std::uint32_t>> solve(ModMatrix m, std::vector<std::uint32_t> rhs);

std::size_t rank(ModMatrix m);

}  // namespace nullcert::linalg
