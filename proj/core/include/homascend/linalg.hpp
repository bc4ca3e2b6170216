#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "homascend/field.hpp"

namespace homascend {

/// Dense row-major matrix over an exact field.
class Mat {
 public:
  Mat() = default;
  Mat(Field f, std::size_t rows, std::size_t cols);

  static Mat identity(const Field& f, std::size_t n);
  static Mat from_ints(const Field& f, std::size_t rows, std::size_t cols, const std::vector<long>& v);
  /// Column vector from entries.
  static Mat column(const Field& f, std::vector<Elem> entries);

  const Field& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Mat col(std::size_t j) const;
  Mat cols_range(std::size_t first, std::size_t count) const;
  Mat rows_range(std::size_t first, std::size_t count) const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  /// Columns selected by index.
  Mat select_cols(const std::vector<std::size_t>& idx) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  std::string to_string() const;

 private:
  Field f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> e_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
bool operator==(const Mat& a, const Mat& b);
inline bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

Mat scale(const Mat& a, const Elem& s);
Mat transpose(const Mat& a);
Mat hcat(const Mat& a, const Mat& b);
Mat vcat(const Mat& a, const Mat& b);
Mat direct_sum(const Mat& a, const Mat& b);
/// Kronecker product a (x) b.
Mat kron(const Mat& a, const Mat& b);
/// Matrix-vector product with a column of a coordinate vector.
std::vector<Elem> apply(const Mat& a, const std::vector<Elem>& v);

struct Rref {
  Mat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

Rref rref(const Mat& a);
std::size_t rank(const Mat& a);
/// Columns form a basis of the null space.
Mat kernel(const Mat& a);
/// Basis of the column space (pivot columns of `a`).
Mat column_space(const Mat& a);
/// Solution X of a * X = b, if any.
std::optional<Mat> solve(const Mat& a, const Mat& b);
std::optional<Mat> inverse(const Mat& a);
Elem determinant(const Mat& a);

// Subspaces of F^n, represented by a matrix whose columns are a basis.
// An empty subspace is an n x 0 matrix.

Mat subspace_basis(const Mat& spanning);
Mat subspace_sum(const Mat& u, const Mat& w);
Mat subspace_intersection(const Mat& u, const Mat& w);
/// True when every column of v lies in span(u).
bool subspace_contains(const Mat& u, const Mat& v);
bool subspace_equal(const Mat& u, const Mat& w);
/// {x : t x in span(w)}.
Mat preimage(const Mat& t, const Mat& w);
/// Coordinates of the columns of v in the basis u (u must have full column rank).
Mat coordinates(const Mat& u, const Mat& v);
/// Restriction of the operator t to the t-stable subspace spanned by basis u,
/// expressed in that basis.
Mat restrict_operator(const Mat& t, const Mat& u);

/// Quotient F^n / W with a chosen complement: proj * lift = I, proj * W = 0.
struct Quotient {
  Mat proj;  // q x n
  Mat lift;  // n x q
  std::size_t dim() const { return proj.rows(); }
};
Quotient quotient(const Field& f, std::size_t n, const Mat& w);
/// Operator induced by t on F^n / W (W must be t-stable).
Mat induced_operator(const Quotient& q, const Mat& t);

}  // namespace homascend
