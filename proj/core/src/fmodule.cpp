#include "homascend/fmodule.hpp"

#include <random>
#include <stdexcept>

namespace homascend {

namespace {

Mat span_of(const Field& f, std::size_t n, const Mat& m) { return m.cols() ? column_space(m) : Mat(f, n, 0); }

Mat vec_row_major(const Mat& m) {
  Mat v(m.field(), m.rows() * m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.at(i * m.cols() + j, 0) = m.at(i, j);
  return v;
}

Mat unvec(const Mat& v, std::size_t col, std::size_t rows, std::size_t cols) {
  Mat m(v.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = v.at(i * cols + j, col);
  return m;
}

Vec to_vec(const Mat& m, std::size_t j = 0) {
  Vec v;
  v.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m.at(i, j));
  return v;
}

bool invertible(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

FModule::FModule(Algebra a, std::vector<Mat> actions) : a_(std::move(a)), act_(std::move(actions)) {
  if (act_.size() != a_->dim()) throw InvariantError("module needs one action matrix per algebra basis element");
  dim_ = act_[0].rows();
  for (const auto& m : act_)
    if (m.rows() != dim_ || m.cols() != dim_) throw InvariantError("action matrix has wrong shape");
  if (act_[0] != Mat::identity(field(), dim_)) throw InvariantError("identity does not act as identity");
  for (std::size_t i = 0; i < act_.size(); ++i)
    for (std::size_t j = i; j < act_.size(); ++j) {
      Mat prod = act_[i] * act_[j];
      if (prod != act(to_vec(a_->left(i).col(j))))
        throw InvariantError("action is not multiplicative on basis pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      if (prod != act_[j] * act_[i]) throw InvariantError("actions do not commute");
    }
}

FModule FModule::zero(Algebra a) {
  std::vector<Mat> acts(a->dim(), Mat(a->field(), 0, 0));
  return FModule(std::move(a), std::move(acts));
}

FModule FModule::free(Algebra a, std::size_t n) {
  if (n == 0) return zero(a);
  std::vector<Mat> acts;
  Mat id = Mat::identity(a->field(), n);
  for (std::size_t i = 0; i < a->dim(); ++i) acts.push_back(kron(id, a->left(i)));
  return FModule(std::move(a), std::move(acts));
}

FModule FModule::residue(Algebra a) {
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < a->radical().cols(); ++j) gens.push_back(to_vec(a->radical(), j));
  return cyclic(std::move(a), gens);
}

FModule FModule::presented(Algebra a, std::size_t n, const std::vector<Vec>& relations) {
  FModule f = free(a, n);
  Mat rel(a->field(), f.dim(), 0);
  for (const auto& r : relations) {
    if (r.size() != f.dim()) throw std::invalid_argument("relation has wrong length for A^n");
    rel = hcat(rel, Mat::column(a->field(), r));
  }
  return quotient_module(f, f.generated(rel)).module;
}

FModule FModule::cyclic(Algebra a, const std::vector<Vec>& ideal_gens) { return presented(a, 1, ideal_gens); }

Mat FModule::act(const Vec& a) const {
  Mat m(field(), dim_, dim_);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!field().is_zero(a[k])) m = m + scale(act_[k], a[k]);
  return m;
}

Mat FModule::generated(const Mat& vs) const {
  Mat s = span_of(field(), dim_, vs);
  std::vector<Mat> gens;
  for (const auto& g : a_->generators()) gens.push_back(act(g));
  for (;;) {
    Mat next = s;
    for (const auto& g : gens) next = hcat(next, g * s);
    next = span_of(field(), dim_, next);
    if (next.cols() == s.cols()) return s;
    s = std::move(next);
  }
}

Mat FModule::radical_image() const { return radical_image(Mat::identity(field(), dim_)); }

Mat FModule::radical_image(const Mat& w) const {
  Mat out(field(), dim_, 0);
  const Mat& rad = a_->radical();
  for (std::size_t j = 0; j < rad.cols(); ++j) out = hcat(out, act(to_vec(rad, j)) * w);
  return span_of(field(), dim_, out);
}

bool FModule::is_submodule(const Mat& w) const {
  for (const auto& g : a_->generators())
    if (!subspace_contains(w, act(g) * w)) return false;
  return true;
}

SubModule submodule(const FModule& m, const Mat& w) {
  Mat b = span_of(m.field(), m.dim(), w);
  if (!m.is_submodule(b)) throw InvariantError("subspace is not stable under the action");
  if (b.cols() == 0) return {FModule::zero(m.algebra()), b};
  std::vector<Mat> acts;
  for (const auto& a : m.actions()) acts.push_back(restrict_operator(a, b));
  return {FModule(m.algebra(), std::move(acts)), b};
}

QuotientModule quotient_module(const FModule& m, const Mat& w) {
  if (w.cols() && !m.is_submodule(span_of(m.field(), m.dim(), w)))
    throw InvariantError("subspace is not stable under the action");
  Quotient q = quotient(m.field(), m.dim(), w);
  if (q.dim() == 0) return {FModule::zero(m.algebra()), q};
  std::vector<Mat> acts;
  for (const auto& a : m.actions()) acts.push_back(induced_operator(q, a));
  return {FModule(m.algebra(), std::move(acts)), q};
}

FModule direct_sum(const FModule& a, const FModule& b) {
  if (a.dim() == 0) return b;
  if (b.dim() == 0) return a;
  std::vector<Mat> acts;
  for (std::size_t i = 0; i < a.actions().size(); ++i) acts.push_back(direct_sum(a.action(i), b.action(i)));
  return FModule(a.algebra(), std::move(acts));
}

FModule direct_sum(const std::vector<FModule>& parts, const Algebra& a) {
  FModule out = FModule::zero(a);
  for (const auto& p : parts) out = direct_sum(out, p);
  return out;
}

FModule power(const FModule& m, std::size_t r) {
  FModule out = FModule::zero(m.algebra());
  for (std::size_t i = 0; i < r; ++i) out = direct_sum(out, m);
  return out;
}

FModule change_basis(const FModule& m, const Mat& p) {
  auto pinv = inverse(p);
  if (!pinv) throw std::invalid_argument("change_basis: matrix not invertible");
  std::vector<Mat> acts;
  for (const auto& a : m.actions()) acts.push_back(*pinv * a * p);
  return FModule(m.algebra(), std::move(acts));
}

bool is_homomorphism(const FModule& m, const FModule& n, const Mat& f) {
  if (f.rows() != n.dim() || f.cols() != m.dim()) return false;
  for (const auto& g : m.algebra()->generators())
    if (f * m.act(g) != n.act(g) * f) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::vector<Mat> intertwiners(const std::vector<Mat>& xs, const std::vector<Mat>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("intertwiners: need matching families");
  const Field& f = xs[0].field();
  const std::size_t c = xs[0].rows(), r = ys[0].rows();
  if (r == 0 || c == 0) return {};
  Mat sys(f, 0, r * c);
  Mat ic = Mat::identity(f, c), ir = Mat::identity(f, r);
  for (std::size_t k = 0; k < xs.size(); ++k) sys = vcat(sys, kron(ir, transpose(xs[k])) - kron(ys[k], ic));
  Mat ker = kernel(sys);
  std::vector<Mat> out;
  for (std::size_t j = 0; j < ker.cols(); ++j) out.push_back(unvec(ker, j, r, c));
  return out;
}

Mat HomSpace::combine(const std::vector<Elem>& c) const {
  Mat m(source.field(), target.dim(), source.dim());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!source.field().is_zero(c[i])) m = m + scale(basis[i], c[i]);
  return m;
}

std::optional<std::vector<Elem>> HomSpace::coordinates(const Mat& f) const {
  const Field& k = source.field();
  if (basis.empty()) {
    if (f.is_zero()) return std::vector<Elem>{};
    return std::nullopt;
  }
  std::call_once(solver->once, [&] {
    Mat b(k, basis.size(), target.dim() * source.dim());
    for (std::size_t i = 0; i < basis.size(); ++i) b.set_block(i, 0, transpose(vec_row_major(basis[i])));
    solver->rows = rref(b).pivots;
    solver->inv = *inverse(b.select_cols(solver->rows));
  });
  const std::size_t c = source.dim();
  Mat sel(k, basis.size(), 1);
  for (std::size_t i = 0; i < solver->rows.size(); ++i) {
    const std::size_t r = solver->rows[i];
    sel.at(i, 0) = f.at(r / c, r % c);
  }
  Mat x = transpose(solver->inv) * sel;
  std::vector<Elem> out = to_vec(x);
  if (!(combine(out) == f)) return std::nullopt;
  return out;
}

FModule HomSpace::as_module() const {
  const Algebra& a = target.algebra();
  if (basis.empty()) return FModule::zero(a);
  std::vector<Mat> acts;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Mat m(source.field(), basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = coordinates(target.action(i) * basis[j]);
      if (!c) throw std::logic_error("Hom space not closed under post-composition");
      for (std::size_t l = 0; l < c->size(); ++l) m.at(l, j) = (*c)[l];
    }
    acts.push_back(std::move(m));
  }
  return FModule(a, std::move(acts));
}

HomSpace hom_space(const FModule& m, const FModule& n) {
  HomSpace h{m, n, {}};
  if (m.dim() == 0 || n.dim() == 0) return h;
  std::vector<Mat> xs, ys;
  for (const auto& g : m.algebra()->generators()) {
    xs.push_back(m.act(g));
    ys.push_back(n.act(g));
  }
  if (xs.empty()) {
    xs.push_back(m.action(0));
    ys.push_back(n.action(0));
  }
  h.basis = intertwiners(xs, ys);
  return h;
}

HomSpace hom_space_over(const AlgebraMap& phi, const FModule& m, const FModule& n) {
  return hom_space(restrict(phi, m), restrict(phi, n));
}

// ---------------------------------------------------------------------------

Vec BaseChange::pure_tensor(const Vec& s, const Vec& x) const {
  const Field& f = module.field();
  Vec t(s.size() * x.size(), f.zero());
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (f.is_zero(s[a])) continue;
    for (std::size_t j = 0; j < x.size(); ++j) t[a * x.size() + j] = f.mul(s[a], x[j]);
  }
  return homascend::apply(q.proj, t);
}

BaseChange base_change(const AlgebraMap& phi, const FModule& m) {
  const Algebra& r = phi.source();
  const Algebra& s = phi.target();
  const Field& f = s->field();
  const std::size_t ds = s->dim(), dm = m.dim();
  Mat im = Mat::identity(f, dm), is = Mat::identity(f, ds);
  Mat rel(f, ds * dm, 0);
  for (const auto& g : r->generators())
    rel = hcat(rel, kron(s->left_of(phi.apply(g)), im) - kron(is, m.act(g)));
  BaseChange bc;
  bc.q = quotient(f, ds * dm, rel);
  if (bc.q.dim() == 0) {
    bc.module = FModule::zero(s);
  } else {
    std::vector<Mat> acts;
    for (std::size_t i = 0; i < ds; ++i) acts.push_back(induced_operator(bc.q, kron(s->left(i), im)));
    bc.module = FModule(s, std::move(acts));
  }
  bc.iota = bc.q.proj.cols_range(0, dm);
  return bc;
}

FModule restrict(const AlgebraMap& phi, const FModule& n) {
  if (n.algebra()->dim() != phi.target()->dim()) throw std::invalid_argument("restrict: module is not over the target");
  const Algebra& r = phi.source();
  if (n.dim() == 0) return FModule::zero(r);
  std::vector<Mat> acts;
  for (std::size_t i = 0; i < r->dim(); ++i) acts.push_back(n.act(phi.apply(r->basis_vector(i))));
  return FModule(r, std::move(acts));
}

// ---------------------------------------------------------------------------

Mat minimal_generators(const FModule& ambient, const Mat& w) {
  const Field& f = ambient.field();
  Mat basis = span_of(f, ambient.dim(), w);
  Mat covered = ambient.radical_image(basis);
  Mat gens(f, ambient.dim(), 0);
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    Mat v = basis.col(j);
    if (subspace_contains(covered, v)) continue;
    gens = hcat(gens, v);
    covered = subspace_sum(covered, ambient.generated(v));
  }
  return gens;
}

namespace {

// Map F = A^beta -> ambient sending generator g to column g of gens.
Mat free_cover(const FModule& ambient, const Mat& gens) {
  const Algebra& a = ambient.algebra();
  Mat out(ambient.field(), ambient.dim(), gens.cols() * a->dim());
  for (std::size_t g = 0; g < gens.cols(); ++g)
    for (std::size_t j = 0; j < a->dim(); ++j) out.set_block(0, g * a->dim() + j, ambient.action(j) * gens.col(g));
  return out;
}

}  // namespace

Vec Resolution::entry(std::size_t n, std::size_t h, std::size_t g) const {
  const std::size_t da = module.algebra()->dim();
  const Mat& m = d.at(n - 1);
  Vec v(da);
  for (std::size_t j = 0; j < da; ++j) v[j] = m.at(h * da + j, g * da);
  return v;
}

Resolution minimal_resolution(const FModule& m, std::size_t length, const CancelToken& tok) {
  Resolution res;
  res.module = m;
  const Algebra& a = m.algebra();
  const Field& f = m.field();
  Mat gens = minimal_generators(m, Mat::identity(f, m.dim()));
  res.betti.push_back(gens.cols());
  res.augmentation = free_cover(m, gens);
  Mat k = kernel(res.augmentation);
  FModule prev = FModule::free(a, gens.cols());
  for (std::size_t n = 1; n <= length; ++n) {
    tok.check();
    Mat g = k.cols() ? minimal_generators(prev, k) : Mat(f, prev.dim(), 0);
    res.betti.push_back(g.cols());
    Mat dn = free_cover(prev, g);
    res.d.push_back(dn);
    k = dn.cols() ? kernel(dn) : Mat(f, 0, 0);
    prev = FModule::free(a, g.cols());
  }
  return res;
}

namespace {

// delta^n : N^{beta_n} -> N^{beta_{n+1}}.
Mat coboundary(const Resolution& res, const FModule& n, std::size_t deg) {
  const std::size_t bn = res.betti[deg], bn1 = res.betti[deg + 1];
  Mat out(n.field(), n.dim() * bn1, n.dim() * bn);
  for (std::size_t g = 0; g < bn1; ++g)
    for (std::size_t h = 0; h < bn; ++h) out.set_block(g * n.dim(), h * n.dim(), n.act(res.entry(deg + 1, h, g)));
  return out;
}

}  // namespace

ExtResult ext_from(const Resolution& res, const FModule& n, std::size_t i) {
  if (res.length() < i + 1) throw std::invalid_argument("resolution too short for Ext^" + std::to_string(i));
  const Field& f = n.field();
  const std::size_t dim_c = n.dim() * res.betti[i];
  ExtResult out;
  if (dim_c == 0) return out;
  Mat delta = coboundary(res, n, i);
  Mat z = delta.rows() ? kernel(delta) : Mat::identity(f, dim_c);
  Mat b = i > 0 ? span_of(f, dim_c, coboundary(res, n, i - 1)) : Mat(f, dim_c, 0);
  out.dim = z.cols() - b.cols();
  Mat acc = b;
  for (std::size_t j = 0; j < z.cols() && out.cocycles.size() < out.dim; ++j) {
    Mat v = z.col(j);
    if (subspace_contains(acc, v)) continue;
    acc = hcat(acc, v);
    Mat c(f, n.dim(), res.betti[i]);
    for (std::size_t g = 0; g < res.betti[i]; ++g)
      for (std::size_t r = 0; r < n.dim(); ++r) c.at(r, g) = v.at(g * n.dim() + r, 0);
    out.cocycles.push_back(std::move(c));
  }
  return out;
}

ExtResult ext(const FModule& m, const FModule& n, std::size_t i, const CancelToken& tok) {
  return ext_from(minimal_resolution(m, i + 1, tok), n, i);
}

// ---------------------------------------------------------------------------

AnnSupp ann_supp(const FModule& m) {
  const Algebra& a = m.algebra();
  AnnSupp out;
  if (m.dim() == 0) {
    out.annihilator = Mat::identity(a->field(), a->dim());
    return out;
  }
  Mat t(a->field(), m.dim() * m.dim(), 0);
  for (const auto& act : m.actions()) t = hcat(t, vec_row_major(act));
  out.annihilator = kernel(t);
  out.in_support = true;
  return out;
}

std::vector<Mat> radical_filtration(const FModule& m) {
  std::vector<Mat> out;
  Mat cur = Mat::identity(m.field(), m.dim());
  out.push_back(cur);
  while (cur.cols() > 0) {
    cur = m.radical_image(cur);
    out.push_back(cur);
  }
  return out;
}

std::vector<std::size_t> fingerprint(const FModule& m) {
  std::vector<std::size_t> fp{m.dim()};
  auto filt = radical_filtration(m);
  fp.push_back(filt.size());
  for (const auto& w : filt) fp.push_back(w.cols());
  fp.push_back(hom_space(m, m).dim());
  fp.push_back(ann_supp(m).annihilator.cols());
  return fp;
}

IsoResult is_isomorphic(const FModule& m, const FModule& n, std::uint64_t seed, const CancelToken& tok) {
  IsoResult out;
  out.certified = true;
  if (m.dim() != n.dim()) return out;
  if (m.dim() == 0) {
    out.isomorphic = true;
    out.witness = Mat(m.field(), 0, 0);
    return out;
  }
  auto fm = radical_filtration(m), fn = radical_filtration(n);
  if (fm.size() != fn.size()) return out;
  for (std::size_t i = 0; i < fm.size(); ++i)
    if (fm[i].cols() != fn[i].cols()) return out;
  if (ann_supp(m).annihilator.cols() != ann_supp(n).annihilator.cols()) return out;
  HomSpace h = hom_space(m, n);
  if (h.dim() == 0 || h.dim() != hom_space(m, m).dim() || h.dim() != hom_space(n, n).dim()) return out;

  const Field& f = m.field();
  const std::size_t hd = h.dim();
  auto found = [&](const Mat& w) {
    out.isomorphic = true;
    out.witness = w;
    return out;
  };
  for (const auto& b : h.basis)
    if (invertible(b)) return found(b);

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Elem> c(hd);
  if (!f.is_finite()) {
    const long bound = static_cast<long>(std::max<std::size_t>(16, 4 * m.dim()));
    std::uniform_int_distribution<long> dist(-bound, bound);
    for (int trial = 0; trial < 24; ++trial) {
      tok.check();
      for (auto& x : c) x = f.from_int(dist(rng));
      Mat w = h.combine(c);
      if (invertible(w)) return found(w);
    }
    // A nonzero polynomial of degree <= dim in each variable cannot vanish on
    // a product grid with more than dim points per axis.
    const std::size_t side = m.dim() + 1;
    double pts = 1;
    for (std::size_t i = 0; i < hd; ++i) pts *= static_cast<double>(side);
    if (pts > 65536.0) {
      out.certified = false;
      return out;
    }
    std::vector<std::size_t> idx(hd, 0);
    for (;;) {
      tok.check();
      for (std::size_t i = 0; i < hd; ++i) c[i] = f.grid_element(idx[i]);
      Mat w = h.combine(c);
      if (invertible(w)) return found(w);
      std::size_t p = 0;
      while (p < hd && ++idx[p] == side) idx[p++] = 0;
      if (p == hd) break;
    }
    return out;
  }
  const std::uint64_t q = *f.size();
  double total = 1;
  for (std::size_t i = 0; i < hd; ++i) total *= static_cast<double>(q);
  if (total <= 65536.0) {
    std::vector<std::uint64_t> idx(hd, 0);
    for (;;) {
      tok.check();
      for (std::size_t i = 0; i < hd; ++i) c[i] = f.element_at(idx[i]);
      Mat w = h.combine(c);
      if (invertible(w)) return found(w);
      std::size_t p = 0;
      while (p < hd && ++idx[p] == q) idx[p++] = 0;
      if (p == hd) break;
    }
    return out;
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  for (int trial = 0; trial < 256; ++trial) {
    tok.check();
    for (auto& x : c) x = f.element_at(dist(rng));
    Mat w = h.combine(c);
    if (invertible(w)) return found(w);
  }
  out.certified = false;
  return out;
}

}  // namespace homascend
