#pragma once

#include <cstddef>
#include <vector>

#include "homascend/poly.hpp"

namespace homascend {

/// Matrix of univariate polynomials over a field, in the variable x.
class PolyMat {
 public:
  PolyMat() = default;
  PolyMat(Field f, std::size_t rows, std::size_t cols);
  static PolyMat identity(const Field& f, std::size_t n);

  const Field& field() const { return f_; }
  PolyRing ring() const { return PolyRing(f_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool is_diagonal() const;
  int max_degree() const;

 private:
  Field f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> e_;
};

PolyMat operator*(const PolyMat& a, const PolyMat& b);
bool operator==(const PolyMat& a, const PolyMat& b);
/// Exact determinant (fraction-free Bareiss elimination).
Poly determinant(const PolyMat& a);

/// Smith form over F[x] localised at (x).
struct LocalSnf {
  PolyMat u, v, d;          // u * a * v = d
  std::vector<int> exponents;  // x-adic valuations of the nonzero diagonal, ascending
  std::size_t free_defect = 0;  // cols(a) - number of nonzero invariant factors
};

/// Pivot = entry of minimal x-adic valuation, ties broken by (row, col).
/// Row and column operations multiply by local units only, so every entry
/// stays a polynomial and det(u), det(v) have nonzero constant term.
LocalSnf snf_localized(const PolyMat& a);

}  // namespace homascend
