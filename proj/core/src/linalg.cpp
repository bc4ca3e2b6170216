#include "homascend/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace homascend {

namespace {

void require_same_field(const Mat& a, const Mat& b, const char* op) {
  if (!a.field().same(b.field())) throw std::invalid_argument(std::string(op) + ": field mismatch");
}

}  // namespace

Mat::Mat(Field f, std::size_t rows, std::size_t cols) : f_(std::move(f)), rows_(rows), cols_(cols) {
  e_.assign(rows * cols, f_.zero());
}

Mat Mat::identity(const Field& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Mat Mat::from_ints(const Field& f, std::size_t rows, std::size_t cols, const std::vector<long>& v) {
  if (v.size() != rows * cols) throw std::invalid_argument("Mat::from_ints: entry count mismatch");
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < v.size(); ++i) m.e_[i] = f.from_int(v[i]);
  return m;
}

Mat Mat::column(const Field& f, std::vector<Elem> entries) {
  Mat m(f, entries.size(), 1);
  m.e_ = std::move(entries);
  return m;
}

Mat Mat::col(std::size_t j) const { return cols_range(j, 1); }

Mat Mat::cols_range(std::size_t first, std::size_t count) const { return block(0, first, rows_, count); }

Mat Mat::rows_range(std::size_t first, std::size_t count) const { return block(first, 0, count, cols_); }

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("Mat::block");
  Mat m(f_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  return m;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("Mat::set_block");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  Mat m(f_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, j) = at(i, idx[j]);
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : e_)
    if (!f_.is_zero(x)) return false;
  return true;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << f_.to_string(at(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Mat multiply: dimension mismatch");
  require_same_field(a, b, "Mat multiply");
  const Field& f = a.field();
  Mat m(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem& x = a.at(i, k);
      if (f.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Elem& y = b.at(k, j);
        if (f.is_zero(y)) continue;
        f.add_mul(m.at(i, j), x, y);
      }
    }
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("Mat add: dimension mismatch");
  Mat m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a.field().add_to(m.at(i, j), b.at(i, j));
  return m;
}

Mat operator-(const Mat& a) {
  Mat m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.field().neg(a.at(i, j));
  return m;
}

Mat operator-(const Mat& a, const Mat& b) { return a + (-b); }

bool operator==(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.field().equal(a.at(i, j), b.at(i, j))) return false;
  return true;
}

Mat scale(const Mat& a, const Elem& s) {
  Mat m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.field().mul(a.at(i, j), s);
  return m;
}

Mat transpose(const Mat& a) {
  Mat m(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(j, i) = a.at(i, j);
  return m;
}

Mat hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  Mat m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Mat vcat(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column mismatch");
  Mat m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  Mat m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  const Field& f = a.field();
  Mat m(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem& x = a.at(i, j);
      if (f.is_zero(x)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m.at(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b.at(k, l));
    }
  return m;
}

std::vector<Elem> apply(const Mat& a, const std::vector<Elem>& v) {
  if (v.size() != a.cols()) throw std::invalid_argument("apply: dimension mismatch");
  const Field& f = a.field();
  std::vector<Elem> out(a.rows(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) f.add_mul(out[i], a.at(i, j), v[j]);
  return out;
}

Rref rref(const Mat& a) {
  const Field& f = a.field();
  Rref out{a, {}};
  Mat& m = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && f.is_zero(m.at(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    Elem inv = f.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = f.mul(m.at(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m.at(i, col))) continue;
      Elem factor = f.neg(m.at(i, col));
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (f.is_zero(m.at(row, j))) continue;
        f.add_mul(m.at(i, j), factor, m.at(row, j));
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const Mat& a) { return rref(a).rank(); }

Mat kernel(const Mat& a) {
  const Field& f = a.field();
  Rref r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat k(f, a.cols(), free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    std::size_t fc = free_cols[t];
    k.at(fc, t) = f.one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) k.at(r.pivots[i], t) = f.neg(r.reduced.at(i, fc));
  }
  return k;
}

Mat column_space(const Mat& a) { return a.select_cols(rref(a).pivots); }

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const Field& f = a.field();
  Rref r = rref(hcat(a, b));
  for (auto p : r.pivots)
    if (p >= a.cols()) return std::nullopt;
  Mat x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.at(r.pivots[i], j) = r.reduced.at(i, a.cols() + j);
  return x;
}

std::optional<Mat> inverse(const Mat& a) {
  if (!a.is_square()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, Mat::identity(a.field(), a.rows()));
}

Elem determinant(const Mat& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const Field& f = a.field();
  Mat m = a;
  Elem det = f.one();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && f.is_zero(m.at(piv, col))) ++piv;
    if (piv == n) return f.zero();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, m.at(col, col));
    Elem inv = f.inv(m.at(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (f.is_zero(m.at(i, col))) continue;
      Elem factor = f.neg(f.mul(m.at(i, col), inv));
      for (std::size_t j = col; j < n; ++j) f.add_mul(m.at(i, j), factor, m.at(col, j));
    }
  }
  return det;
}

Mat subspace_basis(const Mat& spanning) { return column_space(spanning); }

Mat subspace_sum(const Mat& u, const Mat& w) { return column_space(hcat(u, w)); }

Mat subspace_intersection(const Mat& u, const Mat& w) {
  Mat ub = column_space(u), wb = column_space(w);
  if (ub.cols() == 0 || wb.cols() == 0) return Mat(u.field(), u.rows(), 0);
  Mat k = kernel(hcat(ub, -wb));
  return column_space(ub * k.rows_range(0, ub.cols()));
}

bool subspace_contains(const Mat& u, const Mat& v) {
  if (v.cols() == 0) return true;
  if (u.cols() == 0) return v.is_zero();
  return rank(hcat(u, v)) == rank(u);
}

bool subspace_equal(const Mat& u, const Mat& w) {
  return rank(u) == rank(w) && subspace_contains(u, w);
}

Mat preimage(const Mat& t, const Mat& w) {
  const Field& f = t.field();
  if (w.cols() == 0) return kernel(t);
  Mat k = kernel(hcat(t, -w));
  if (k.cols() == 0) return Mat(f, t.cols(), 0);
  return column_space(k.rows_range(0, t.cols()));
}

Mat coordinates(const Mat& u, const Mat& v) {
  auto x = solve(u, v);
  if (!x) throw std::invalid_argument("coordinates: vector not in subspace");
  return *x;
}

Mat restrict_operator(const Mat& t, const Mat& u) { return coordinates(u, t * u); }

Quotient quotient(const Field& f, std::size_t n, const Mat& w) {
  Mat wb = w.cols() ? column_space(w) : Mat(f, n, 0);
  Rref r = rref(hcat(wb, Mat::identity(f, n)));
  std::vector<std::size_t> extra;
  for (auto p : r.pivots)
    if (p >= wb.cols()) extra.push_back(p - wb.cols());
  Mat lift(f, n, extra.size());
  for (std::size_t j = 0; j < extra.size(); ++j) lift.at(extra[j], j) = f.one();
  Mat b = hcat(wb, lift);
  auto binv = inverse(b);
  if (!binv) throw std::logic_error("quotient: complement construction failed");
  return Quotient{binv->rows_range(wb.cols(), extra.size()), lift};
}

Mat induced_operator(const Quotient& q, const Mat& t) { return q.proj * t * q.lift; }

}  // namespace homascend
