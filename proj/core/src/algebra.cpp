#include "homascend/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace homascend {

namespace {

std::string monomial_label(const std::vector<std::string>& vars, const std::vector<int>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

// Monomials of total degree < n in `nvars` variables, graded; within a degree
// ordered by descending exponent vector.
std::vector<std::vector<int>> monomials_below(std::size_t nvars, int n) {
  std::vector<std::vector<int>> out;
  for (int d = 0; d < n; ++d) {
    std::vector<int> cur(nvars, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
      if (pos + 1 == nvars) {
        cur[pos] = left;
        out.push_back(cur);
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[pos] = e;
        rec(pos + 1, left - e);
      }
    };
    if (nvars == 0) {
      if (d == 0) out.push_back({});
      continue;
    }
    rec(0, d);
  }
  return out;
}

int total_degree(const std::vector<int>& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

Vec col_to_vec(const Mat& m, std::size_t j = 0) {
  Vec v;
  v.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m.at(i, j));
  return v;
}

}  // namespace

bool vec_equal(const Field& f, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.equal(a[i], b[i])) return false;
  return true;
}

std::shared_ptr<const LocalAlgebra> LocalAlgebra::from_presentation(const Field& f, std::vector<std::string> vars,
                                                                    const std::vector<MPoly>& relations, int trunc) {
  if (trunc < 1) throw std::invalid_argument("truncation degree must be >= 1");
  const std::size_t nv = vars.size();
  auto monos = monomials_below(nv, trunc);
  const std::size_t m = monos.size();
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index[monos[i]] = i;

  // Relation rows; column c holds monomial m-1-c so that pivots fall on the
  // largest monomials.
  std::vector<std::vector<Elem>> rows;
  for (const auto& g : relations) {
    for (const auto& t : g.terms)
      if (t.first.size() != nv) throw std::invalid_argument("relation exponent vector has wrong arity");
    for (const auto& mono : monos) {
      std::vector<Elem> row(m, f.zero());
      bool nonzero = false;
      for (const auto& [exp, coef] : g.terms) {
        std::vector<int> e(nv);
        for (std::size_t k = 0; k < nv; ++k) e[k] = exp[k] + mono[k];
        if (total_degree(e) >= trunc) continue;
        f.add_to(row[m - 1 - index[e]], coef);
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  Mat rel(f, rows.size(), m);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) rel.at(i, j) = rows[i][j];
  Rref r = rref(rel);
  std::vector<int> pivot_row(m, -1);  // by monomial index
  for (std::size_t i = 0; i < r.pivots.size(); ++i) pivot_row[m - 1 - r.pivots[i]] = static_cast<int>(i);
  if (pivot_row[0] >= 0) throw InvariantError("relations generate the unit ideal (zero algebra)");

  std::vector<std::size_t> standard;
  std::vector<int> std_pos(m, -1);
  for (std::size_t i = 0; i < m; ++i)
    if (pivot_row[i] < 0) {
      std_pos[i] = static_cast<int>(standard.size());
      standard.push_back(i);
    }
  const std::size_t n = standard.size();
  auto normal_form = [&](std::size_t mono) {
    Vec v(n, f.zero());
    if (std_pos[mono] >= 0) {
      v[std_pos[mono]] = f.one();
      return v;
    }
    const std::size_t row = static_cast<std::size_t>(pivot_row[mono]);
    for (std::size_t s = 0; s < n; ++s) {
      const Elem& c = r.reduced.at(row, m - 1 - standard[s]);
      if (!f.is_zero(c)) v[s] = f.neg(c);
    }
    return v;
  };
  auto nf_exp = [&](const std::vector<int>& e) {
    if (total_degree(e) >= trunc) return Vec(n, f.zero());
    return normal_form(index.at(e));
  };

  std::vector<std::string> labels;
  for (auto s : standard) labels.push_back(monomial_label(vars, monos[s]));
  std::vector<Mat> left;
  for (std::size_t i = 0; i < n; ++i) {
    Mat l(f, n, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> e(nv);
      for (std::size_t k = 0; k < nv; ++k) e[k] = monos[standard[i]][k] + monos[standard[j]][k];
      Vec v = nf_exp(e);
      for (std::size_t k = 0; k < n; ++k) l.at(k, j) = v[k];
    }
    left.push_back(std::move(l));
  }
  Mat rad(f, n, n - 1);
  for (std::size_t j = 1; j < n; ++j) rad.at(j, j - 1) = f.one();
  std::vector<std::pair<std::string, Vec>> named;
  for (std::size_t k = 0; k < nv; ++k) {
    std::vector<int> e(nv, 0);
    e[k] = 1;
    named.emplace_back(vars[k], nf_exp(e));
  }
  auto alg = from_structure(f, std::move(labels), std::move(left), rad, 1, std::move(named));
  const_cast<LocalAlgebra&>(*alg).vars_ = std::move(vars);
  return alg;
}

std::shared_ptr<const LocalAlgebra> LocalAlgebra::from_structure(const Field& f, std::vector<std::string> labels,
                                                                 std::vector<Mat> left, Mat radical,
                                                                 int residue_degree,
                                                                 std::vector<std::pair<std::string, Vec>> named) {
  auto a = std::shared_ptr<LocalAlgebra>(new LocalAlgebra());
  a->f_ = f;
  a->labels_ = std::move(labels);
  a->left_ = std::move(left);
  a->radical_ = radical.cols() ? column_space(radical) : radical;
  a->residue_degree_ = residue_degree;
  a->named_ = std::move(named);
  a->finalize();
  return a;
}

void LocalAlgebra::finalize() {
  const std::size_t n = dim();
  if (n == 0) throw InvariantError("algebra must have positive dimension");
  if (left_.size() != n) throw InvariantError("need one multiplication matrix per basis element");
  for (const auto& l : left_)
    if (l.rows() != n || l.cols() != n) throw InvariantError("multiplication matrix has wrong shape");
  if (left_[0] != Mat::identity(f_, n)) throw InvariantError("basis element 0 is not the identity");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (left_[i].col(j) != left_[j].col(i))
        throw InvariantError("not commutative: b" + std::to_string(i) + "*b" + std::to_string(j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat lij = left_of(col_to_vec(left_[i].col(j)));
      if (lij != left_[i] * left_[j])
        throw InvariantError("not associative: (b" + std::to_string(i) + "*b" + std::to_string(j) + ")*b_l for some l");
    }
  if (radical_.rows() != n) throw InvariantError("radical basis has wrong ambient dimension");
  for (std::size_t i = 0; i < n; ++i)
    if (!subspace_contains(radical_, left_[i] * radical_)) throw InvariantError("radical is not an ideal");
  if (static_cast<int>(n - radical_.cols()) != residue_degree_)
    throw InvariantError("dim(A/m) = " + std::to_string(n - radical_.cols()) + " but residue degree is " +
                         std::to_string(residue_degree_) + " (not local over the stated residue field)");
  nilpotency_ = 0;
  for (int t = 1; t <= static_cast<int>(n) + 1; ++t) {
    if (radical_power(t).cols() == 0) {
      nilpotency_ = t;
      break;
    }
  }
  if (nilpotency_ == 0) throw InvariantError("radical is not nilpotent");

  // Greedy k-algebra generators.
  Mat span = Mat::column(f_, unit());
  auto close = [&](const std::vector<Vec>& gens) {
    Mat s = Mat::column(f_, unit());
    for (;;) {
      Mat next = s;
      for (const auto& g : gens) next = hcat(next, left_of(g) * s);
      next = column_space(next);
      if (next.cols() == s.cols()) return s;
      s = next;
    }
  };
  generators_.clear();
  for (std::size_t i = 1; i < n && span.cols() < n; ++i) {
    Vec e = basis_vector(i);
    if (subspace_contains(span, Mat::column(f_, e))) continue;
    generators_.push_back(e);
    span = close(generators_);
  }
}

Mat LocalAlgebra::left_of(const Vec& a) const {
  Mat m(f_, dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (f_.is_zero(a[k])) continue;
    m = m + homascend::scale(left_[k], a[k]);
  }
  return m;
}

Vec LocalAlgebra::mul(const Vec& a, const Vec& b) const { return homascend::apply(left_of(a), b); }

Vec LocalAlgebra::add(const Vec& a, const Vec& b) const {
  Vec v = a;
  for (std::size_t i = 0; i < v.size(); ++i) f_.add_to(v[i], b[i]);
  return v;
}

Vec LocalAlgebra::scale(const Vec& a, const Elem& s) const {
  Vec v = a;
  for (auto& x : v) x = f_.mul(x, s);
  return v;
}

Vec LocalAlgebra::basis_vector(std::size_t i) const {
  Vec v(dim(), f_.zero());
  v[i] = f_.one();
  return v;
}

Vec LocalAlgebra::from_scalar(const Elem& s) const {
  Vec v(dim(), f_.zero());
  v[0] = s;
  return v;
}

bool LocalAlgebra::is_zero(const Vec& a) const {
  for (const auto& x : a)
    if (!f_.is_zero(x)) return false;
  return true;
}

std::optional<Vec> LocalAlgebra::named_element(const std::string& name) const {
  for (const auto& [n, v] : named_)
    if (n == name) return v;
  return std::nullopt;
}

Mat LocalAlgebra::radical_power(int t) const {
  if (t <= 0) return Mat::identity(f_, dim());
  Mat p = radical_;
  for (int s = 1; s < t && p.cols() > 0; ++s) {
    Mat next(f_, dim(), 0);
    for (std::size_t j = 0; j < radical_.cols(); ++j) next = hcat(next, left_of(col_to_vec(radical_, j)) * p);
    p = next.cols() ? column_space(next) : next;
  }
  return p;
}

Mat LocalAlgebra::ideal(const std::vector<Vec>& gens) const {
  Mat span(f_, dim(), 0);
  for (const auto& g : gens) span = hcat(span, left_of(g));
  return span.cols() ? column_space(span) : span;
}

std::string LocalAlgebra::element_to_string(const Vec& a) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f_.is_zero(a[i])) continue;
    if (!first) os << " + ";
    first = false;
    std::string c = f_.to_string(a[i]);
    if (labels_[i] == "1") {
      os << c;
    } else {
      if (!f_.is_one(a[i])) os << "(" << c << ")*";
      os << labels_[i];
    }
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------

AlgebraMap::AlgebraMap(Algebra source, Algebra target, Mat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
  if (!src_->field().same(tgt_->field())) throw InvariantError("algebra map between different base fields");
  if (m_.rows() != tgt_->dim() || m_.cols() != src_->dim()) throw InvariantError("algebra map matrix has wrong shape");
  if (!vec_equal(tgt_->field(), apply(src_->unit()), tgt_->unit())) throw InvariantError("phi(1) != 1");
  for (std::size_t i = 0; i < src_->dim(); ++i)
    for (std::size_t j = i; j < src_->dim(); ++j) {
      Vec lhs = apply(col_to_vec(src_->left(i).col(j)));
      Vec rhs = tgt_->mul(col_to_vec(m_.col(i)), col_to_vec(m_.col(j)));
      if (!vec_equal(tgt_->field(), lhs, rhs))
        throw InvariantError("phi is not multiplicative on basis pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
    }
  if (!subspace_contains(tgt_->radical(), m_ * src_->radical())) throw InvariantError("phi is not local: phi(m) not in n");
}

AlgebraMap AlgebraMap::from_images(Algebra source, Algebra target, const std::vector<std::pair<Vec, Vec>>& images) {
  const Field& f = source->field();
  std::vector<Vec> src_span{source->unit()}, tgt_span{target->unit()};
  Mat span = Mat::column(f, source->unit());
  for (std::size_t k = 0; k < src_span.size(); ++k) {
    for (const auto& [g, h] : images) {
      Vec v = source->mul(g, src_span[k]);
      Mat col = Mat::column(f, v);
      if (subspace_contains(span, col)) continue;
      span = hcat(span, col);
      src_span.push_back(v);
      tgt_span.push_back(target->mul(h, tgt_span[k]));
    }
  }
  if (span.cols() != source->dim()) throw InvariantError("given elements do not generate the source algebra");
  Mat tgt_mat(f, target->dim(), 0);
  for (const auto& w : tgt_span) tgt_mat = hcat(tgt_mat, Mat::column(f, w));
  Mat phi = tgt_mat * *inverse(span);
  AlgebraMap m(std::move(source), std::move(target), std::move(phi));
  for (const auto& [g, h] : images)
    if (!vec_equal(f, m.apply(g), h)) throw InvariantError("generator images are inconsistent with a ring homomorphism");
  return m;
}

AlgebraMap AlgebraMap::by_names(Algebra source, Algebra target) {
  std::vector<std::pair<Vec, Vec>> images;
  for (const auto& [name, v] : source->named()) {
    auto w = target->named_element(name);
    if (!w) throw InvariantError("target has no element named " + name);
    images.emplace_back(v, *w);
  }
  return from_images(std::move(source), std::move(target), images);
}

AlgebraMap AlgebraMap::identity(Algebra a) {
  Mat id = Mat::identity(a->field(), a->dim());
  return AlgebraMap(a, a, id);
}

Vec AlgebraMap::apply(const Vec& a) const { return homascend::apply(m_, a); }

bool AlgebraMap::injective() const { return rank(m_) == src_->dim(); }
bool AlgebraMap::surjective() const { return rank(m_) == tgt_->dim(); }
Mat AlgebraMap::kernel_basis() const { return kernel(m_); }

AlgebraMap compose(const AlgebraMap& second, const AlgebraMap& first) {
  if (first.target() != second.source() && first.target()->dim() != second.source()->dim())
    throw std::invalid_argument("compose: target/source mismatch");
  return AlgebraMap(first.source(), second.target(), second.matrix() * first.matrix());
}

std::pair<Algebra, AlgebraMap> algebra_tensor_extension(const Field& ext, const Algebra& a) {
  const Field& k = a->field();
  if (ext.kind() != FieldKind::SimpleExtension || !ext.base().same(k))
    throw std::invalid_argument("tensor extension requires a simple extension of " + k.name());
  const std::size_t d = static_cast<std::size_t>(ext.degree());
  const std::size_t n = a->dim();
  // Coordinates of t^e over k for e < 2d - 1.
  std::vector<std::vector<Elem>> tpow;
  Elem cur = ext.one();
  for (std::size_t e = 0; e + 1 < 2 * d; ++e) {
    tpow.push_back(ext.coefficients(cur));
    cur = ext.mul(cur, ext.generator());
  }
  const std::size_t dim = d * n;
  std::vector<Mat> left;
  std::vector<std::string> labels;
  const std::string& gname = ext.generator_name();
  for (std::size_t ai = 0; ai < d; ++ai)
    for (std::size_t i = 0; i < n; ++i) {
      std::string lab = a->labels()[i];
      if (ai > 0) {
        std::string tp = ai == 1 ? gname : gname + "^" + std::to_string(ai);
        lab = lab == "1" ? tp : tp + "*" + lab;
      }
      labels.push_back(lab);
      Mat l(k, dim, dim);
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t j = 0; j < n; ++j) {
          const auto& tc = tpow[ai + c];
          for (std::size_t e = 0; e < d; ++e) {
            if (k.is_zero(tc[e])) continue;
            for (std::size_t lidx = 0; lidx < n; ++lidx) {
              const Elem& s = a->left(i).at(lidx, j);
              if (k.is_zero(s)) continue;
              k.add_mul(l.at(e * n + lidx, c * n + j), tc[e], s);
            }
          }
        }
      left.push_back(std::move(l));
    }
  Mat rad(k, dim, d * a->radical().cols());
  for (std::size_t ai = 0; ai < d; ++ai) rad.set_block(ai * n, ai * a->radical().cols(), a->radical());
  std::vector<std::pair<std::string, Vec>> named;
  for (const auto& [nm, v] : a->named()) {
    Vec w(dim, k.zero());
    for (std::size_t i = 0; i < n; ++i) w[i] = v[i];
    named.emplace_back(nm, w);
  }
  Vec tv(dim, k.zero());
  tv[n] = k.one();
  named.emplace_back(gname, tv);
  auto s = LocalAlgebra::from_structure(k, std::move(labels), std::move(left), rad,
                                        static_cast<int>(d) * a->residue_degree(), std::move(named));
  const_cast<LocalAlgebra&>(*s).vars_ = a->vars_;
  Mat incl(k, dim, n);
  for (std::size_t i = 0; i < n; ++i) incl.at(i, i) = k.one();
  AlgebraMap phi(a, s, incl);
  return {s, phi};
}

Mat extended_ideal(const AlgebraMap& phi) {
  const auto& r = phi.source();
  const auto& s = phi.target();
  Mat span(s->field(), s->dim(), 0);
  for (std::size_t j = 0; j < r->radical().cols(); ++j)
    span = hcat(span, s->left_of(phi.apply(col_to_vec(r->radical(), j))));
  return span.cols() ? column_space(span) : span;
}

DaggerReport check_dagger(const AlgebraMap& phi) {
  DaggerReport rep;
  const auto& s = phi.target();
  Mat ms = extended_ideal(phi);
  rep.ms_equals_n = subspace_equal(ms, s->radical());
  rep.residue_iso = rank(hcat(phi.matrix(), s->radical())) == s->dim();
  return rep;
}

FlatnessReport is_flat(const AlgebraMap& phi) {
  const auto& r = phi.source();
  const auto& s = phi.target();
  const Field& f = s->field();
  FlatnessReport rep;
  Mat covered = extended_ideal(phi);
  for (std::size_t i = 0; i < s->dim(); ++i) {
    Vec e = s->basis_vector(i);
    if (subspace_contains(covered, Mat::column(f, e))) continue;
    rep.basis.push_back(e);
    Mat orbit(f, s->dim(), r->dim());
    for (std::size_t j = 0; j < r->dim(); ++j) {
      Vec v = s->mul(phi.apply(r->basis_vector(j)), e);
      for (std::size_t k = 0; k < s->dim(); ++k) orbit.at(k, j) = v[k];
    }
    covered = subspace_sum(covered, orbit);
  }
  rep.rank = rep.basis.size();
  rep.flat = s->dim() == rep.rank * r->dim();
  if (!rep.flat) rep.basis.clear();
  return rep;
}

std::vector<Vec> residue_lift_witness(const AlgebraMap& phi, int t) {
  const auto& s = phi.target();
  Mat nt = s->radical_power(t);
  Mat sys = hcat(phi.matrix(), nt);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < s->dim(); ++i) {
    auto x = solve(sys, Mat::column(s->field(), s->basis_vector(i)));
    if (!x) throw InvariantError("no residue lift for basis element " + s->labels()[i] + " at level " + std::to_string(t));
    out.push_back(col_to_vec(x->rows_range(0, phi.source()->dim())));
  }
  return out;
}

}  // namespace homascend
