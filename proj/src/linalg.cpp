#include "nullcert/linalg.hpp"

#include <utility>

#include "nullcert/error.hpp"
#include "nullcert/field.hpp"

namespace nullcert::linalg {

namespace {

// Reduces `m` (and `rhs`, if given) to reduced row echelon form in place.
// Returns the pivot column of each pivot row.
std::vector<std::size_t> eliminate(ModMatrix& m, std::vector<std::uint32_t>* rhs) {
  const std::uint32_t p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
      if (rhs) std::swap((*rhs)[pivot], (*rhs)[row]);
    }
    const std::uint32_t scale = modp::inv(m.at(row, col), p);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) = modp::mul(m.at(row, c), scale, p);
    if (rhs) (*rhs)[row] = modp::mul((*rhs)[row], scale, p);

    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const std::uint32_t factor = m.at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) {
        m.at(r, c) = modp::sub(m.at(r, c), modp::mul(factor, m.at(row, c), p), p);
      }
      if (rhs) (*rhs)[r] = modp::sub((*rhs)[r], modp::mul(factor, (*rhs)[row], p), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> solve(ModMatrix m, std::vector<std::uint32_t> rhs) {
  if (rhs.size() != m.rows()) throw PreconditionError("right-hand side length mismatch");
  const auto pivots = eliminate(m, &rhs);
  for (std::size_t r = pivots.size(); r < m.rows(); ++r) {
    if (rhs[r] != 0) return std::nullopt;
  }
  std::vector<std::uint32_t> x(m.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rhs[r];
  return x;
}

std::size_t rank(ModMatrix m) { return eliminate(m, nullptr).size(); }

}  // namespace nullcert::linalg
