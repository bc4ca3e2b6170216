#include "homascend/complexes.hpp"

#include <algorithm>
#include <stdexcept>

namespace homascend {

namespace {

Mat span_of(const Field& f, std::size_t n, const Mat& m) { return m.cols() ? column_space(m) : Mat(f, n, 0); }

Mat unvec(const Mat& v, std::size_t offset, std::size_t rows, std::size_t cols) {
  Mat m(v.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = v.at(offset + i * cols + j, 0);
  return m;
}

bool bijective(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

BoundedComplex::BoundedComplex(Algebra a, int lo, std::vector<FModule> mods, std::vector<Mat> diffs)
    : a_(std::move(a)), lo_(lo), mods_(std::move(mods)), d_(std::move(diffs)) {
  if (mods_.empty()) throw InvariantError("complex needs at least one degree");
  if (d_.size() + 1 != mods_.size()) throw InvariantError("complex needs one differential between consecutive degrees");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    const FModule& src = mods_[i + 1];
    const FModule& tgt = mods_[i];
    if (d_[i].rows() != tgt.dim() || d_[i].cols() != src.dim())
      throw InvariantError("differential d_" + std::to_string(lo_ + static_cast<int>(i) + 1) + " has wrong shape");
    if (!is_homomorphism(src, tgt, d_[i]))
      throw InvariantError("differential d_" + std::to_string(lo_ + static_cast<int>(i) + 1) + " is not A-linear");
  }
  for (std::size_t i = 1; i < d_.size(); ++i)
    if (!(d_[i - 1] * d_[i]).is_zero())
      throw InvariantError("d^2 != 0 at degree " + std::to_string(lo_ + static_cast<int>(i) + 1));
}

BoundedComplex BoundedComplex::concentrated(const FModule& m, int degree) {
  return BoundedComplex(m.algebra(), degree, {m}, {});
}

FModule BoundedComplex::at(int n) const {
  if (n < lo_ || n > hi()) return FModule::zero(a_);
  return mods_[static_cast<std::size_t>(n - lo_)];
}

std::size_t BoundedComplex::dim(int n) const {
  if (n < lo_ || n > hi()) return 0;
  return mods_[static_cast<std::size_t>(n - lo_)].dim();
}

Mat BoundedComplex::d(int n) const {
  if (n <= lo_ || n > hi()) return Mat(a_->field(), dim(n - 1), dim(n));
  return d_[static_cast<std::size_t>(n - lo_ - 1)];
}

bool BoundedComplex::is_degreewise_free() const {
  const std::size_t da = a_->dim();
  for (const auto& m : mods_) {
    if (m.dim() % da != 0) return false;
    if (minimal_generators(m, Mat::identity(m.field(), m.dim())).cols() * da != m.dim()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ComplexMorphism::ComplexMorphism(BoundedComplex source, BoundedComplex target, std::map<int, Mat> comps)
    : src_(std::move(source)), tgt_(std::move(target)), f_(std::move(comps)) {
  for (const auto& [n, m] : f_) {
    if (m.rows() != tgt_.dim(n) || m.cols() != src_.dim(n))
      throw InvariantError("chain map component " + std::to_string(n) + " has wrong shape");
    if (!is_homomorphism(src_.at(n), tgt_.at(n), m))
      throw InvariantError("chain map component " + std::to_string(n) + " is not A-linear");
  }
  const int lo = std::min(src_.lo(), tgt_.lo()), hi = std::max(src_.hi(), tgt_.hi()) + 1;
  for (int n = lo; n <= hi; ++n)
    if (tgt_.d(n) * at(n) != at(n - 1) * src_.d(n))
      throw InvariantError("chain condition fails at degree " + std::to_string(n));
}

ComplexMorphism ComplexMorphism::identity(const BoundedComplex& x) {
  std::map<int, Mat> comps;
  for (int n = x.lo(); n <= x.hi(); ++n) comps[n] = Mat::identity(x.algebra()->field(), x.dim(n));
  return ComplexMorphism(x, x, comps);
}

Mat ComplexMorphism::at(int n) const {
  auto it = f_.find(n);
  if (it != f_.end()) return it->second;
  return Mat(src_.algebra()->field(), tgt_.dim(n), src_.dim(n));
}

// ---------------------------------------------------------------------------

Mat Homology::class_of(const Mat& z) const { return q.proj * coordinates(cycles, z); }

Mat Homology::representative(std::size_t j) const { return cycles * q.lift.col(j); }

Homology homology(const BoundedComplex& x, int n) {
  const Field& f = x.algebra()->field();
  FModule xn = x.at(n);
  Mat dn = x.d(n);
  Mat z = dn.rows() ? kernel(dn) : Mat::identity(f, xn.dim());
  SubModule zs = submodule(xn, z);
  Mat b = span_of(f, xn.dim(), x.d(n + 1));
  Mat bc = zs.inclusion.cols() ? coordinates(zs.inclusion, b) : Mat(f, 0, 0);
  QuotientModule h = quotient_module(zs.module, bc);
  return {h.module, zs.inclusion, h.q};
}

Mat induced_homology_map(const ComplexMorphism& alpha, int n) {
  Homology hx = homology(alpha.source(), n), hy = homology(alpha.target(), n);
  const Field& f = alpha.source().algebra()->field();
  Mat out(f, hy.module.dim(), hx.module.dim());
  for (std::size_t j = 0; j < hx.module.dim(); ++j) out.set_block(0, j, hy.class_of(alpha.at(n) * hx.representative(j)));
  return out;
}

bool is_exact(const BoundedComplex& x) {
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (homology(x, n).module.dim() != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::map<int, Mat> HomComplex::components(int n, const Mat& v) const {
  std::map<int, Mat> out;
  auto it = slots.find(n);
  if (it == slots.end()) return out;
  for (const auto& s : it->second) {
    std::vector<Elem> c;
    for (std::size_t j = 0; j < s.h.dim(); ++j) c.push_back(v.at(s.offset + j, 0));
    out[s.p] = s.h.combine(c);
  }
  return out;
}

Mat HomComplex::coordinates(int n, const std::map<int, Mat>& family) const {
  const Field& f = complex.algebra()->field();
  Mat out(f, complex.dim(n), 1);
  auto it = slots.find(n);
  if (it == slots.end()) return out;
  for (const auto& s : it->second) {
    auto fp = family.find(s.p);
    if (fp == family.end() || s.h.dim() == 0) continue;
    auto c = s.h.coordinates(fp->second);
    if (!c) throw std::logic_error("family component is not A-linear");
    for (std::size_t j = 0; j < c->size(); ++j) out.at(s.offset + j, 0) = (*c)[j];
  }
  return out;
}

HomComplex hom_complex(const BoundedComplex& x, const BoundedComplex& y) {
  const Algebra& a = x.algebra();
  const Field& f = a->field();
  HomComplex hc;
  const int nlo = y.lo() - x.hi(), nhi = y.hi() - x.lo();
  std::vector<FModule> mods;
  for (int n = nlo; n <= nhi; ++n) {
    std::vector<HomComplex::Slot> slots;
    std::size_t off = 0;
    FModule mod = FModule::zero(a);
    for (int p = x.lo(); p <= x.hi(); ++p) {
      if (p + n < y.lo() || p + n > y.hi()) continue;
      HomSpace h = hom_space(x.at(p), y.at(p + n));
      mod = direct_sum(mod, h.as_module());
      const std::size_t hd = h.dim();
      slots.push_back({p, off, std::move(h)});
      off += hd;
    }
    hc.slots[n] = std::move(slots);
    mods.push_back(std::move(mod));
  }
  // Provisional complex so that coordinates() can size its output.
  std::vector<Mat> zeros;
  for (int n = nlo + 1; n <= nhi; ++n)
    zeros.push_back(Mat(f, mods[static_cast<std::size_t>(n - 1 - nlo)].dim(), mods[static_cast<std::size_t>(n - nlo)].dim()));
  hc.complex = BoundedComplex(a, nlo, mods, zeros);
  std::vector<Mat> diffs;
  for (int n = nlo + 1; n <= nhi; ++n) {
    const std::size_t src = hc.complex.dim(n), tgt = hc.complex.dim(n - 1);
    Mat dn(f, tgt, src);
    const Elem sign = (n % 2 == 0) ? f.from_int(-1) : f.one();  // -(-1)^n
    for (std::size_t j = 0; j < src; ++j) {
      Mat e(f, src, 1);
      e.at(j, 0) = f.one();
      auto fam = hc.components(n, e);
      std::map<int, Mat> out;
      for (int p = x.lo(); p <= x.hi(); ++p) {
        if (p + n - 1 < y.lo() || p + n - 1 > y.hi()) continue;
        Mat acc(f, y.dim(p + n - 1), x.dim(p));
        if (auto it = fam.find(p); it != fam.end()) acc = acc + y.d(p + n) * it->second;
        if (auto it = fam.find(p - 1); it != fam.end()) acc = acc + scale(it->second * x.d(p), sign);
        out[p] = acc;
      }
      dn.set_block(0, j, hc.coordinates(n - 1, out));
    }
    diffs.push_back(std::move(dn));
  }
  hc.complex = BoundedComplex(a, nlo, std::move(mods), std::move(diffs));
  return hc;
}

std::vector<ComplexMorphism> morphisms_via_hom(const BoundedComplex& x, const BoundedComplex& y) {
  HomComplex hc = hom_complex(x, y);
  std::vector<ComplexMorphism> out;
  const std::size_t d0 = hc.complex.dim(0);
  if (d0 == 0) return out;
  Mat dz = hc.complex.d(0);
  Mat ker = dz.rows() ? kernel(dz) : Mat::identity(x.algebra()->field(), d0);
  for (std::size_t j = 0; j < ker.cols(); ++j) out.emplace_back(x, y, hc.components(0, ker.col(j)));
  return out;
}

std::vector<ComplexMorphism> morphisms_direct(const BoundedComplex& x, const BoundedComplex& y) {
  const Field& f = x.algebra()->field();
  const int lo = std::max(x.lo(), y.lo()), hi = std::min(x.hi(), y.hi());
  std::map<int, std::size_t> offset;
  std::size_t total = 0;
  for (int n = lo; n <= hi; ++n) {
    offset[n] = total;
    total += y.dim(n) * x.dim(n);
  }
  std::vector<ComplexMorphism> out;
  if (total == 0) return out;
  Mat sys(f, 0, total);
  for (int n = lo; n <= hi; ++n) {
    const std::size_t r = y.dim(n), c = x.dim(n);
    if (r * c == 0) continue;
    for (const auto& g : x.algebra()->generators()) {
      Mat block(f, r * c, total);
      block.set_block(0, offset[n], kron(Mat::identity(f, r), transpose(x.at(n).act(g))) -
                                       kron(y.at(n).act(g), Mat::identity(f, c)));
      sys = vcat(sys, block);
    }
  }
  for (int n = std::min(x.lo(), y.lo()); n <= std::max(x.hi(), y.hi()) + 1; ++n) {
    const std::size_t rows = y.dim(n - 1) * x.dim(n);
    if (rows == 0) continue;
    Mat block(f, rows, total);
    if (offset.count(n) && y.dim(n) * x.dim(n) != 0)
      block.set_block(0, offset[n], kron(y.d(n), Mat::identity(f, x.dim(n))));
    if (offset.count(n - 1) && y.dim(n - 1) * x.dim(n - 1) != 0)
      block.set_block(0, offset[n - 1],
                      block.block(0, offset[n - 1], rows, y.dim(n - 1) * x.dim(n - 1)) -
                          kron(Mat::identity(f, y.dim(n - 1)), transpose(x.d(n))));
    sys = vcat(sys, block);
  }
  Mat ker = sys.rows() ? kernel(sys) : Mat::identity(f, total);
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    Mat v = ker.col(j);
    std::map<int, Mat> comps;
    for (int n = lo; n <= hi; ++n) comps[n] = unvec(v, offset[n], y.dim(n), x.dim(n));
    out.emplace_back(x, y, std::move(comps));
  }
  return out;
}

ComplexMorphism hom_postcompose(const HomComplex& px, const HomComplex& py, const ComplexMorphism& alpha) {
  const Field& f = px.complex.algebra()->field();
  std::map<int, Mat> comps;
  for (int n = px.complex.lo(); n <= px.complex.hi(); ++n) {
    const std::size_t src = px.complex.dim(n), tgt = py.complex.dim(n);
    Mat m(f, tgt, src);
    if (tgt > 0) {
      for (std::size_t j = 0; j < src; ++j) {
        Mat e(f, src, 1);
        e.at(j, 0) = f.one();
        std::map<int, Mat> fam;
        for (const auto& [p, fp] : px.components(n, e)) fam[p] = alpha.at(p + n) * fp;
        m.set_block(0, j, py.coordinates(n, fam));
      }
    }
    comps[n] = std::move(m);
  }
  return ComplexMorphism(px.complex, py.complex, std::move(comps));
}

// ---------------------------------------------------------------------------

Tensored tensor_modules(const FModule& m, const FModule& n) {
  const Algebra& a = m.algebra();
  const Field& f = a->field();
  Mat im = Mat::identity(f, m.dim()), in = Mat::identity(f, n.dim());
  Mat rel(f, m.dim() * n.dim(), 0);
  for (const auto& g : a->generators()) rel = hcat(rel, kron(m.act(g), in) - kron(im, n.act(g)));
  Tensored t;
  t.q = quotient(f, m.dim() * n.dim(), rel);
  if (t.q.dim() == 0) {
    t.module = FModule::zero(a);
    return t;
  }
  std::vector<Mat> acts;
  for (std::size_t i = 0; i < a->dim(); ++i) acts.push_back(induced_operator(t.q, kron(m.action(i), in)));
  t.module = FModule(a, std::move(acts));
  return t;
}

BoundedComplex tensor_complex(const BoundedComplex& x, const FModule& m) {
  std::vector<Tensored> parts;
  std::vector<FModule> mods;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    parts.push_back(tensor_modules(x.at(n), m));
    mods.push_back(parts.back().module);
  }
  Mat im = Mat::identity(m.field(), m.dim());
  std::vector<Mat> diffs;
  for (int n = x.lo() + 1; n <= x.hi(); ++n) {
    const auto& src = parts[static_cast<std::size_t>(n - x.lo())];
    const auto& tgt = parts[static_cast<std::size_t>(n - 1 - x.lo())];
    diffs.push_back(tgt.q.proj * kron(x.d(n), im) * src.q.lift);
  }
  return BoundedComplex(x.algebra(), x.lo(), std::move(mods), std::move(diffs));
}

BoundedComplex restrict_complex(const AlgebraMap& phi, const BoundedComplex& y) {
  std::vector<FModule> mods;
  std::vector<Mat> diffs;
  for (int n = y.lo(); n <= y.hi(); ++n) {
    mods.push_back(restrict(phi, y.at(n)));
    if (n > y.lo()) diffs.push_back(y.d(n));
  }
  return BoundedComplex(phi.source(), y.lo(), std::move(mods), std::move(diffs));
}

BaseChangedComplex tensor_complex(const AlgebraMap& phi, const BoundedComplex& x) {
  BaseChangedComplex out;
  std::vector<FModule> mods;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    out.parts.push_back(base_change(phi, x.at(n)));
    mods.push_back(out.parts.back().module);
  }
  Mat is = Mat::identity(phi.target()->field(), phi.target()->dim());
  std::vector<Mat> diffs;
  for (int n = x.lo() + 1; n <= x.hi(); ++n) {
    const auto& src = out.parts[static_cast<std::size_t>(n - x.lo())];
    const auto& tgt = out.parts[static_cast<std::size_t>(n - 1 - x.lo())];
    diffs.push_back(tgt.q.proj * kron(is, x.d(n)) * src.q.lift);
  }
  out.complex = BoundedComplex(phi.target(), x.lo(), std::move(mods), std::move(diffs));
  std::map<int, Mat> omega;
  for (int n = x.lo(); n <= x.hi(); ++n) omega[n] = out.parts[static_cast<std::size_t>(n - x.lo())].iota;
  out.omega = ComplexMorphism(x, restrict_complex(phi, out.complex), std::move(omega));
  return out;
}

bool BaseChangeHomologyReport::all_bijective() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const Degree& d) { return d.natural_map_bijective; });
}

BaseChangeHomologyReport base_change_homology(const AlgebraMap& phi, const BoundedComplex& x) {
  BaseChangeHomologyReport rep;
  BaseChangedComplex sx = tensor_complex(phi, x);
  const Field& f = phi.target()->field();
  const std::size_t ds = phi.target()->dim();
  for (int n = x.lo(); n <= x.hi(); ++n) {
    Homology hx = homology(x, n);
    Homology hs = homology(sx.complex, n);
    BaseChange bh = base_change(phi, hx.module);
    const auto& part = sx.parts[static_cast<std::size_t>(n - x.lo())];
    const std::size_t dx = x.dim(n);
    Mat full(f, hs.module.dim(), ds * hx.module.dim());
    for (std::size_t a = 0; a < ds; ++a)
      for (std::size_t j = 0; j < hx.module.dim(); ++j) {
        Mat rep_j = hx.representative(j);
        Mat t(f, ds * dx, 1);
        for (std::size_t i = 0; i < dx; ++i) t.at(a * dx + i, 0) = rep_j.at(i, 0);
        full.set_block(0, a * hx.module.dim() + j, hs.class_of(part.q.proj * t));
      }
    Mat nat = full * bh.q.lift;
    rep.degrees.push_back({n, hx.module.dim(), hs.module.dim(), bh.module.dim(), bijective(nat)});
  }
  return rep;
}

// ---------------------------------------------------------------------------

BoundedComplex koszul(const Algebra& a, const std::vector<Vec>& xs) {
  const Field& f = a->field();
  for (const auto& x : xs)
    if (!subspace_contains(a->radical(), Mat::column(f, x))) throw std::invalid_argument("Koszul sequence must lie in m");
  const std::size_t m = xs.size();
  std::vector<std::vector<std::vector<std::size_t>>> subsets(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    std::vector<bool> sel(m, false);
    std::fill(sel.begin(), sel.begin() + static_cast<long>(i), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t j = 0; j < m; ++j)
        if (sel[j]) s.push_back(j);
      subsets[i].push_back(s);
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  const std::size_t da = a->dim();
  std::vector<FModule> mods;
  for (std::size_t i = 0; i <= m; ++i) mods.push_back(FModule::free(a, subsets[i].size()));
  std::vector<Mat> diffs;
  for (std::size_t i = 1; i <= m; ++i) {
    Mat d(f, subsets[i - 1].size() * da, subsets[i].size() * da);
    for (std::size_t c = 0; c < subsets[i].size(); ++c) {
      const auto& s = subsets[i][c];
      for (std::size_t pos = 0; pos < s.size(); ++pos) {
        std::vector<std::size_t> t = s;
        t.erase(t.begin() + static_cast<long>(pos));
        auto r = static_cast<std::size_t>(std::find(subsets[i - 1].begin(), subsets[i - 1].end(), t) - subsets[i - 1].begin());
        Mat blk = a->left_of(xs[s[pos]]);
        if (pos % 2 == 1) blk = -blk;
        d.set_block(r * da, c * da, blk);
      }
    }
    diffs.push_back(std::move(d));
  }
  return BoundedComplex(a, 0, std::move(mods), std::move(diffs));
}

BoundedComplex mapping_cone(const ComplexMorphism& alpha) {
  const BoundedComplex& x = alpha.source();
  const BoundedComplex& y = alpha.target();
  const Algebra& a = x.algebra();
  const Field& f = a->field();
  const int lo = std::min(x.lo() + 1, y.lo()), hi = std::max(x.hi() + 1, y.hi());
  std::vector<FModule> mods;
  std::vector<Mat> diffs;
  for (int n = lo; n <= hi; ++n) {
    mods.push_back(direct_sum(x.at(n - 1), y.at(n)));
    if (n == lo) continue;
    const std::size_t sx = x.dim(n - 1), sy = y.dim(n), tx = x.dim(n - 2), ty = y.dim(n - 1);
    Mat d(f, tx + ty, sx + sy);
    d.set_block(0, 0, -x.d(n - 1));
    d.set_block(tx, 0, alpha.at(n - 1));
    d.set_block(tx, sx, y.d(n));
    diffs.push_back(std::move(d));
  }
  return BoundedComplex(a, lo, std::move(mods), std::move(diffs));
}

QisReport is_quasi_iso(const ComplexMorphism& alpha) {
  QisReport rep;
  rep.via_homology = true;
  const int lo = std::min(alpha.source().lo(), alpha.target().lo());
  const int hi = std::max(alpha.source().hi(), alpha.target().hi());
  for (int n = lo; n <= hi && rep.via_homology; ++n)
    if (!bijective(induced_homology_map(alpha, n))) rep.via_homology = false;
  rep.via_cone = is_exact(mapping_cone(alpha));
  if (rep.via_homology != rep.via_cone)
    throw std::logic_error("quasi-isomorphism tests disagree (homology vs mapping cone)");
  return rep;
}

Prop24Report prop24_harness(const ComplexMorphism& alpha, const BoundedComplex& p) {
  if (!p.is_degreewise_free()) throw std::invalid_argument("P must be degreewise free");
  if (is_exact(p)) throw std::invalid_argument("P must not be exact");
  Prop24Report rep;
  HomComplex px = hom_complex(p, alpha.source());
  HomComplex py = hom_complex(p, alpha.target());
  rep.hom_qis = is_quasi_iso(hom_postcompose(px, py, alpha)).quasi_iso();
  rep.alpha_qis = is_quasi_iso(alpha).quasi_iso();
  if (rep.hom_qis && !rep.alpha_qis)
    throw InvariantError("Hom(P, alpha) is a quasi-isomorphism but alpha is not");
  return rep;
}

}  // namespace homascend
