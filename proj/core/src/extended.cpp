#include "homascend/extended.hpp"

#include <functional>
#include <stdexcept>

#include "homascend/ascent.hpp"

namespace homascend {

namespace {

Mat span_of(const Field& f, std::size_t n, const Mat& m) { return m.cols() ? column_space(m) : Mat(f, n, 0); }

Mat kernel_of(const Field& f, const Mat& m) { return m.rows() ? kernel(m) : Mat::identity(f, m.cols()); }

Vec to_vec(const Mat& m, std::size_t j = 0) {
  Vec v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, j);
  return v;
}

bool invertible(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

FModule sum_of(const std::vector<FModule>& parts, const Algebra& a) {
  if (parts.empty()) return FModule::zero(a);
  return direct_sum(parts, a);
}

// Image of S (x)_k f under the two base-change quotients.
Mat base_change_map(const BaseChange& src, const BaseChange& tgt, const Mat& f, std::size_t ds) {
  return tgt.q.proj * kron(Mat::identity(f.field(), ds), f) * src.q.lift;
}

}  // namespace

FiniteExtension FiniteExtension::make(const AlgebraMap& phi) {
  FlatnessReport fr = is_flat(phi);
  if (!fr.flat) throw std::invalid_argument("FiniteExtension: map is not flat");
  FiniteExtension e;
  e.phi = phi;
  e.basis = fr.basis;
  e.rank = fr.rank;
  return e;
}

void verify_witness(const FiniteExtension& e, const FModule& n, const ExtendedWitness& w) {
  if (w.m.algebra()->dim() != e.source()->dim()) throw std::invalid_argument("witness: module is not over the source");
  BaseChange bc = base_change(e.phi, w.m);
  if (w.iso.rows() != n.dim() || w.iso.cols() != bc.module.dim())
    throw std::invalid_argument("witness: isomorphism has the wrong shape");
  if (!invertible(w.iso)) throw std::invalid_argument("witness: map is not invertible");
  if (!is_homomorphism(bc.module, n, w.iso)) throw std::invalid_argument("witness: map is not S-linear");
}

KrsClasses krs_classes(const FModule& m, std::uint64_t seed, const CancelToken& tok) {
  KrsClasses out;
  Decomposition d = krs_decompose(m, seed, tok);
  out.certified = d.certified();
  std::vector<std::vector<std::size_t>> fps;
  for (const auto& p : d.pieces) {
    auto fp = fingerprint(p.module);
    bool placed = false;
    for (std::size_t c = 0; c < out.classes.size() && !placed; ++c) {
      if (fps[c] != fp) continue;
      IsoResult iso = is_isomorphic(out.classes[c].rep, p.module, seed, tok);
      if (!iso.certified) out.certified = false;
      if (iso.isomorphic) {
        ++out.classes[c].count;
        placed = true;
      }
    }
    if (!placed) {
      out.classes.push_back({p.module, 1});
      fps.push_back(fp);
    }
  }
  return out;
}

namespace {

// For each class of a, the matching class of b; nullopt if some class of a is missing.
std::optional<std::vector<std::size_t>> match_classes(const KrsClasses& a, const KrsClasses& b, std::uint64_t seed,
                                                      const CancelToken& tok) {
  std::vector<std::size_t> match;
  for (const auto& ca : a.classes) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < b.classes.size() && !hit; ++j)
      if (is_isomorphic(ca.rep, b.classes[j].rep, seed, tok).isomorphic) hit = j;
    if (!hit) return std::nullopt;
    match.push_back(*hit);
  }
  return match;
}

}  // namespace

bool is_summand(const FModule& a, const FModule& b, std::uint64_t seed, const CancelToken& tok) {
  KrsClasses ca = krs_classes(a, seed, tok), cb = krs_classes(b, seed, tok);
  auto match = match_classes(ca, cb, seed, tok);
  if (!match) return false;
  for (std::size_t i = 0; i < ca.classes.size(); ++i)
    if (ca.classes[i].count > cb.classes[(*match)[i]].count) return false;
  return true;
}

ExtendedResult is_extended(const FiniteExtension& e, const FModule& n, std::uint64_t seed, const CancelToken& tok) {
  ExtendedResult out;
  const Algebra& r = e.source();
  if (n.dim() % e.rank != 0) return out;
  const std::size_t target = n.dim() / e.rank;
  KrsClasses cls = krs_classes(restrict(e.phi, n), seed, tok);
  if (!cls.certified) out.certified = false;

  // If S (x) M = N then M^rank = restrict(N), so every indecomposable
  // summand of M is among the pieces of restrict(N).
  std::vector<std::size_t> counts(cls.classes.size(), 0);
  std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t idx, std::size_t dim) -> bool {
    if (idx == cls.classes.size()) {
      if (dim != target) return false;
      tok.check();
      ++out.candidates;
      std::vector<FModule> parts;
      for (std::size_t c = 0; c < counts.size(); ++c)
        for (std::size_t k = 0; k < counts[c]; ++k) parts.push_back(cls.classes[c].rep);
      FModule m = sum_of(parts, r);
      BaseChange bc = base_change(e.phi, m);
      IsoResult iso = is_isomorphic(bc.module, n, seed, tok);
      if (!iso.certified) out.certified = false;
      if (!iso.isomorphic) return false;
      ExtendedWitness w{m, *iso.witness};
      verify_witness(e, n, w);
      out.witness = std::move(w);
      return true;
    }
    const std::size_t d = cls.classes[idx].rep.dim();
    for (std::size_t c = cls.classes[idx].count + 1; c-- > 0;) {
      if (dim + c * d > target) continue;
      counts[idx] = c;
      if (search(idx + 1, dim + c * d)) return true;
    }
    counts[idx] = 0;
    return false;
  };
  search(0, 0);
  if (out.witness) out.certified = true;
  return out;
}

// ---------------------------------------------------------------------------

Elem Example37::gaussian(long a, long b) const { return ext.from_coefficients({base.from_int(a), base.from_int(b)}); }

Vec Example37::scalar(const Elem& c) const {
  Vec v = s->zero();
  const auto& co = ext.coefficients(c);
  for (std::size_t k = 0; k < co.size(); ++k) v[k * r->dim()] = co[k];
  return v;
}

Example37 example37() {
  Example37 ex;
  ex.base = Field::rationals();
  ex.ext = Field::extension(ex.base, {ex.base.one(), ex.base.zero(), ex.base.one()}, "i");
  ex.r = LocalAlgebra::from_presentation(ex.base, {"X", "Y"}, {}, 2);
  auto [s, incl] = algebra_tensor_extension(ex.ext, ex.r);
  ex.s = s;
  ex.e = FiniteExtension::make(incl);
  return ex;
}

FModule example37_module(const Example37& ex, const Elem& c) {
  Vec x = *ex.s->named_element("X"), y = *ex.s->named_element("Y");
  return FModule::cyclic(ex.s, {ex.s->add(x, ex.s->mul(ex.scalar(c), y))});
}

MatrixEquiv matrix_equiv_1x1(const Example37& ex, const Elem& c) {
  // u = u0 + u1 X + u2 Y with u0 != 0. Comparing coefficients of
  // u (r + sX + tY) = X + cY: u0 r = 0, u0 s = 1, u0 t = c, so r = 0 and
  // c = t / s lies in the base field.
  MatrixEquiv out;
  if (!ex.ext.in_base(c)) return out;
  const Field& k = ex.base;
  const Elem t = ex.ext.coefficients(c).at(0);
  out.equivalent = true;
  out.u = ex.s->unit();
  out.r = k.zero();
  out.s = k.one();
  out.t = t;
  Vec x = *ex.s->named_element("X"), y = *ex.s->named_element("Y");
  Vec lhs = ex.s->add(ex.s->scale(x, *out.s), ex.s->scale(y, t));
  lhs = ex.s->add(lhs, ex.s->from_scalar(*out.r));
  lhs = ex.s->mul(*out.u, lhs);
  Vec rhs = ex.s->add(x, ex.s->mul(ex.scalar(c), y));
  if (!vec_equal(k, lhs, rhs)) throw std::logic_error("matrix_equiv_1x1: witness does not verify");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Remove the KRS pieces of sub from m; nullopt when sub is not a summand.
std::optional<FModule> complement(const FModule& m, const FModule& sub, std::uint64_t seed) {
  KrsClasses cm = krs_classes(m, seed), cs = krs_classes(sub, seed);
  auto match = match_classes(cs, cm, seed, {});
  if (!match) return std::nullopt;
  std::vector<std::size_t> left;
  for (const auto& c : cm.classes) left.push_back(c.count);
  for (std::size_t i = 0; i < cs.classes.size(); ++i) {
    std::size_t j = (*match)[i];
    if (left[j] < cs.classes[i].count) return std::nullopt;
    left[j] -= cs.classes[i].count;
  }
  std::vector<FModule> parts;
  for (std::size_t j = 0; j < cm.classes.size(); ++j)
    for (std::size_t k = 0; k < left[j]; ++k) parts.push_back(cm.classes[j].rep);
  return sum_of(parts, m.algebra());
}

ExtendedWitness witness_by_search(const FiniteExtension& e, const FModule& m, const FModule& n, std::uint64_t seed) {
  BaseChange bc = base_change(e.phi, m);
  IsoResult iso = is_isomorphic(bc.module, n, seed);
  if (!iso.isomorphic) throw std::logic_error("two_of_three: complement does not base change to the erased module");
  ExtendedWitness w{m, *iso.witness};
  verify_witness(e, n, w);
  return w;
}

}  // namespace

TwoOfThree two_of_three_sum(const FiniteExtension& e, const FModule& n1, const FModule& n2,
                            const std::optional<ExtendedWitness>& w1, const std::optional<ExtendedWitness>& w2,
                            const std::optional<ExtendedWitness>& w12, std::uint64_t seed) {
  const int given = static_cast<int>(w1.has_value()) + static_cast<int>(w2.has_value()) + static_cast<int>(w12.has_value());
  if (given != 2) throw std::invalid_argument("two_of_three: exactly two witnesses are required");
  FModule n12 = direct_sum(n1, n2);
  if (w1) verify_witness(e, n1, *w1);
  if (w2) verify_witness(e, n2, *w2);
  if (w12) verify_witness(e, n12, *w12);

  TwoOfThree out;
  if (!w12) {
    out.derived = 2;
    const FModule& m1 = w1->m;
    const FModule& m2 = w2->m;
    FModule m = direct_sum(m1, m2);
    BaseChange bc = base_change(e.phi, m), bc1 = base_change(e.phi, m1), bc2 = base_change(e.phi, m2);
    const std::size_t ds = e.target()->dim(), d1 = m1.dim(), d2 = m2.dim();
    const Field& f = n1.field();
    // S (x)_k (M1 + M2) -> S (x)_R M1 + S (x)_R M2
    Mat split(f, bc1.q.dim() + bc2.q.dim(), ds * (d1 + d2));
    for (std::size_t s = 0; s < ds; ++s) {
      for (std::size_t j = 0; j < d1; ++j) split.set_block(0, s * (d1 + d2) + j, bc1.q.proj.col(s * d1 + j));
      for (std::size_t j = 0; j < d2; ++j)
        split.set_block(bc1.q.dim(), s * (d1 + d2) + d1 + j, bc2.q.proj.col(s * d2 + j));
    }
    out.witness = {m, homascend::direct_sum(w1->iso, w2->iso) * split * bc.q.lift};
    verify_witness(e, n12, out.witness);
    return out;
  }
  const bool have_first = w1.has_value();
  out.derived = have_first ? 1 : 0;
  const FModule& known = have_first ? w1->m : w2->m;
  auto rest = complement(w12->m, known, seed);
  if (!rest) throw std::logic_error("two_of_three: known module is not a summand of the total");
  out.witness = witness_by_search(e, *rest, have_first ? n2 : n1, seed);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Mat radical_power_image(const FModule& m, int t) {
  Mat w = Mat::identity(m.field(), m.dim());
  for (int i = 0; i < t; ++i) w = m.radical_image(w);
  return w;
}

}  // namespace

LevelReport guralnick_levels(const FModule& m1, const FModule& m, int t, std::uint64_t seed) {
  LevelReport out;
  for (int level = 1; level <= t; ++level) {
    FModule q1 = quotient_module(m1, radical_power_image(m1, level)).module;
    FModule q = quotient_module(m, radical_power_image(m, level)).module;
    out.levels.push_back(is_summand(q1, q, seed));
  }
  out.divides = is_summand(m1, m, seed);
  const int top = m.algebra()->nilpotency();
  if (t >= top && out.levels.at(top - 1) != out.divides)
    throw std::logic_error("guralnick_levels: top level disagrees with the divisibility");
  return out;
}

// ---------------------------------------------------------------------------

TensorSquare::TensorSquare(const FiniteExtension& e) : s_(e.target()) {
  bc_ = base_change(e.phi, target_as_source_module(e.phi));
  const std::size_t ds = s_->dim();
  Mat mk(s_->field(), ds, ds * ds);
  for (std::size_t a = 0; a < ds; ++a)
    for (std::size_t b = 0; b < ds; ++b)
      mk.set_block(0, a * ds + b, Mat::column(s_->field(), s_->mul(s_->basis_vector(a), s_->basis_vector(b))));
  mu_ = mk * bc_.q.lift;
}

Vec TensorSquare::pure(const Vec& a, const Vec& b) const {
  const Field& f = s_->field();
  return to_vec(bc_.q.proj * kron(Mat::column(f, a), Mat::column(f, b)));
}

Mat TensorSquare::lifted(const Vec& x) const {
  const std::size_t ds = s_->dim();
  Mat l = bc_.q.lift * Mat::column(s_->field(), x);
  Mat out(s_->field(), ds, ds);
  for (std::size_t a = 0; a < ds; ++a)
    for (std::size_t b = 0; b < ds; ++b) out.at(a, b) = l.at(a * ds + b, 0);
  return out;
}

Vec TensorSquare::mul(const Vec& x, const Vec& y) const {
  const Field& f = s_->field();
  const std::size_t ds = s_->dim();
  Mat lx = lifted(x);
  Mat ly = bc_.q.lift * Mat::column(f, y);
  Mat acc(f, ds * ds, 1);
  for (std::size_t a = 0; a < ds; ++a)
    for (std::size_t b = 0; b < ds; ++b)
      if (!f.is_zero(lx.at(a, b))) acc = acc + scale(kron(s_->left(a), s_->left(b)) * ly, lx.at(a, b));
  return to_vec(bc_.q.proj * acc);
}

Mat TensorSquare::commutator(const Vec& s) const {
  const Field& f = s_->field();
  Mat ls = s_->left_of(s), id = Mat::identity(f, s_->dim());
  return induced_operator(bc_.q, kron(ls, id) - kron(id, ls));
}

std::optional<SeparabilityIdempotent> separability_idempotent(const FiniteExtension& e) {
  TensorSquare t(e);
  const Algebra& s = e.target();
  const Field& f = s->field();
  if (t.dim() == 0) return std::nullopt;
  Mat c(f, 0, t.dim());
  for (const auto& g : s->generators()) c = vcat(c, t.commutator(g));
  Mat k = kernel_of(f, c);
  if (k.cols() == 0) return std::nullopt;
  Mat mk = t.mu() * k;
  auto y = solve(mk, Mat::column(f, s->unit()));
  if (!y) return std::nullopt;
  SeparabilityIdempotent out;
  out.e = to_vec(k * *y);
  out.unique = rank(mk) == k.cols();
  return out;
}

SummandWitness summand_of_extended(const FiniteExtension& e, const FModule& n) {
  auto sep = separability_idempotent(e);
  if (!sep) throw std::invalid_argument("summand_of_extended: extension is not separable");
  TensorSquare t(e);
  const Algebra& s = e.target();
  const Field& f = s->field();
  const std::size_t ds = s->dim(), dn = n.dim();
  SummandWitness out;
  out.m = restrict(e.phi, n);
  out.tensor = base_change(e.phi, out.m);
  Mat le = t.lifted(sep->e);
  // j(v) = sum e_ab b_a (x) b_b v
  Mat jk(f, ds * dn, dn);
  for (std::size_t a = 0; a < ds; ++a) {
    Mat blk(f, dn, dn);
    for (std::size_t b = 0; b < ds; ++b)
      if (!f.is_zero(le.at(a, b))) blk = blk + scale(n.action(b), le.at(a, b));
    jk.set_block(a * dn, 0, blk);
  }
  out.j = out.tensor.q.proj * jk;
  Mat pk(f, dn, ds * dn);
  for (std::size_t a = 0; a < ds; ++a) pk.set_block(0, a * dn, n.action(a));
  out.pi = pk * out.tensor.q.lift;
  if (out.pi * out.j != Mat::identity(f, dn)) throw std::logic_error("summand_of_extended: pi j != id");
  if (!is_homomorphism(n, out.tensor.module, out.j) || !is_homomorphism(out.tensor.module, n, out.pi))
    throw std::logic_error("summand_of_extended: maps are not S-linear");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Actor = std::function<Mat(const Vec&)>;

// delta^deg : T^{beta_deg} -> T^{beta_{deg+1}} with entries acting through `act`.
Mat coboundary(const Resolution& res, std::size_t deg, std::size_t dt, const Field& f, const Actor& act) {
  const std::size_t bn = res.betti[deg], bn1 = res.betti[deg + 1];
  Mat out(f, dt * bn1, dt * bn);
  for (std::size_t g = 0; g < bn1; ++g)
    for (std::size_t h = 0; h < bn; ++h) out.set_block(g * dt, h * dt, act(res.entry(deg + 1, h, g)));
  return out;
}

struct Ext1 {
  Mat z;       // cocycles in T^{beta_1}
  Quotient q;  // modulo coboundaries, in z-coordinates
  std::size_t dim() const { return q.dim(); }
  Mat class_of(const Mat& c) const { return q.proj * coordinates(z, c); }
  Mat representative(const Mat& xi) const { return z * (q.lift * xi); }
};

Ext1 ext1(const Resolution& res, std::size_t dt, const Field& f, const Actor& act) {
  Ext1 out;
  Mat d0 = coboundary(res, 0, dt, f, act), d1 = coboundary(res, 1, dt, f, act);
  out.z = kernel_of(f, d1);
  Mat b = span_of(f, d0.rows(), d0);
  Mat bz = b.cols() ? coordinates(out.z, b) : Mat(f, out.z.cols(), 0);
  out.q = quotient(f, out.z.cols(), bz);
  return out;
}

// d_1 with every entry pushed through phi (identity for the source side).
Mat differential(const Resolution& res, const Algebra& a, const std::function<Vec(const Vec&)>& push) {
  const Field& f = a->field();
  const std::size_t da = a->dim(), b0 = res.betti[0], b1 = res.betti[1];
  Mat d(f, b0 * da, b1 * da);
  for (std::size_t g = 0; g < b1; ++g)
    for (std::size_t h = 0; h < b0; ++h) {
      Vec x = push(res.entry(1, h, g));
      for (std::size_t j = 0; j < da; ++j) d.set_block(h * da, g * da + j, Mat::column(f, a->mul(a->basis_vector(j), x)));
    }
  return d;
}

// Pushout (T (+) F_0) / {(c(y), -d_1 y)} of the cocycle c.
FModule pushout(const FModule& t, const Algebra& a, std::size_t b0, std::size_t b1, const Mat& d1, const Mat& c) {
  const Field& f = a->field();
  const std::size_t da = a->dim(), dt = t.dim();
  Mat eta(f, dt, b1 * da);
  for (std::size_t g = 0; g < b1; ++g) {
    Mat cg = c.rows_range(g * dt, dt);
    for (std::size_t j = 0; j < da; ++j) eta.set_block(0, g * da + j, t.action(j) * cg);
  }
  FModule total = direct_sum(t, FModule::free(a, b0));
  Mat rel = vcat(eta, -d1);
  return quotient_module(total, span_of(f, total.dim(), rel)).module;
}

struct Prop32Setup {
  Resolution res;
  BaseChange bc1;
  Ext1 er, es;
  Mat alpha;
};

Prop32Setup prop32_setup(const FiniteExtension& e, const FModule& m1, const FModule& m2) {
  Prop32Setup p;
  const Field& f = m1.field();
  p.res = minimal_resolution(m2, 2);
  p.bc1 = base_change(e.phi, m1);
  const FModule& n1 = p.bc1.module;
  p.er = ext1(p.res, m1.dim(), f, [&](const Vec& a) { return m1.act(a); });
  p.es = ext1(p.res, n1.dim(), f, [&](const Vec& a) { return n1.act(e.phi.apply(a)); });
  Mat up = kron(Mat::identity(f, p.res.betti[1]), p.bc1.iota);
  p.alpha = Mat(f, p.es.dim(), 0);
  for (std::size_t j = 0; j < p.er.dim(); ++j) {
    Mat xi(f, p.er.dim(), 1);
    xi.at(j, 0) = f.one();
    p.alpha = hcat(p.alpha, p.es.class_of(up * p.er.representative(xi)));
  }
  return p;
}

}  // namespace

std::size_t prop32_ext_dim(const FiniteExtension& e, const FModule& m1, const FModule& m2) {
  return prop32_setup(e, m1, m2).es.dim();
}

Prop32Report prop32_finite(const FiniteExtension& e, int which, const Prop32Data& data, std::uint64_t seed) {
  const Algebra& r = e.source();
  const Algebra& s = e.target();
  const std::size_t ds = s->dim();
  Prop32Report out;
  if (which == 2 || which == 3) {
    const FModule& src = which == 2 ? data.m : data.m1;
    const FModule& tgt = which == 2 ? data.m2 : data.m;
    if (!is_homomorphism(src, tgt, data.f)) throw std::invalid_argument("prop32_finite: f is not R-linear");
    const Field& f = src.field();
    BaseChange bs = base_change(e.phi, src), bt = base_change(e.phi, tgt);
    Mat sf = base_change_map(bs, bt, data.f, ds);
    if (which == 2) {
      out.third_r = submodule(src, kernel_of(f, data.f)).module;
      out.third_s = submodule(bs.module, kernel_of(f, sf)).module;
    } else {
      out.third_r = quotient_module(tgt, span_of(f, tgt.dim(), data.f)).module;
      out.third_s = quotient_module(bt.module, span_of(f, bt.module.dim(), sf)).module;
    }
    out.in_alpha_image = true;
    out.extended = is_isomorphic(base_change(e.phi, *out.third_r).module, out.third_s, seed).isomorphic;
    return out;
  }
  if (which != 1) throw std::invalid_argument("prop32_finite: case must be 1, 2 or 3");

  const Field& f = data.m1.field();
  Prop32Setup p = prop32_setup(e, data.m1, data.m2);
  const FModule& n1 = p.bc1.module;
  out.ext_r_dim = p.er.dim();
  out.ext_s_dim = p.es.dim();
  if (data.xi.size() != out.ext_s_dim) throw std::invalid_argument("prop32_finite: class has the wrong length");

  // beta : S (x) Ext^1_R -> Ext^1_S, spanned by s . alpha(eta)
  Mat up = kron(Mat::identity(f, p.res.betti[1]), p.bc1.iota);
  Mat span(f, out.ext_s_dim, 0);
  for (std::size_t j = 0; j < out.ext_r_dim; ++j) {
    Mat xi(f, out.ext_r_dim, 1);
    xi.at(j, 0) = f.one();
    Mat c = up * p.er.representative(xi);
    for (std::size_t a = 0; a < ds; ++a)
      span = hcat(span, p.es.class_of(kron(Mat::identity(f, p.res.betti[1]), n1.action(a)) * c));
  }
  out.beta_span_dim = span.cols() ? rank(span) : 0;
  out.beta_iso = out.beta_span_dim == out.ext_s_dim && out.ext_s_dim == e.rank * out.ext_r_dim;

  Mat xi = Mat::column(f, data.xi);
  Mat d1s = differential(p.res, s, [&](const Vec& a) { return e.phi.apply(a); });
  out.third_s = pushout(n1, s, p.res.betti[0], p.res.betti[1], d1s, p.es.representative(xi));
  const std::size_t alpha_rank = p.alpha.cols() ? rank(p.alpha) : 0;
  out.obstruction_dim = out.ext_s_dim - alpha_rank;
  auto eta = p.alpha.cols() ? solve(p.alpha, xi) : (xi.is_zero() ? std::optional<Mat>(Mat(f, 0, 1)) : std::nullopt);
  out.in_alpha_image = eta.has_value();
  if (eta) {
    Mat d1r = differential(p.res, r, [](const Vec& a) { return a; });
    Mat c = eta->rows() ? p.er.representative(*eta) : Mat(f, data.m1.dim() * p.res.betti[1], 1);
    out.third_r = pushout(data.m1, r, p.res.betti[0], p.res.betti[1], d1r, c);
    out.extended = is_isomorphic(base_change(e.phi, *out.third_r).module, out.third_s, seed).isomorphic;
  } else {
    out.extended = is_extended(e, out.third_s, seed).extended();
  }
  return out;
}

}  // namespace homascend
