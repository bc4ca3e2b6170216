#include "homascend/ascent.hpp"

#include <stdexcept>

#include "homascend/poly.hpp"

namespace homascend {

namespace {

Mat span_of(const Field& f, std::size_t n, const Mat& m) { return m.cols() ? column_space(m) : Mat(f, n, 0); }

bool bijective(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Vec to_vec(const Mat& m, std::size_t j = 0) {
  Vec v;
  for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m.at(i, j));
  return v;
}

Mat vec_row_major(const Mat& m) {
  Mat v(m.field(), m.rows() * m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.at(i * m.cols() + j, 0) = m.at(i, j);
  return v;
}

bool same_actions(const FModule& a, const FModule& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.actions().size(); ++i)
    if (a.action(i) != b.action(i)) return false;
  return true;
}

double power_bound(std::uint64_t q, std::size_t e) {
  double t = 1;
  for (std::size_t i = 0; i < e; ++i) t *= static_cast<double>(q);
  return t;
}

// Odometer over index vectors in [0, q)^len; returns false after the last.
bool advance(std::vector<std::uint64_t>& idx, std::uint64_t q) {
  std::size_t p = 0;
  while (p < idx.size() && ++idx[p] == q) idx[p++] = 0;
  return p < idx.size();
}

}  // namespace

std::optional<FModule> module_from_generator_images(const Algebra& s, const std::vector<Mat>& images) {
  const auto& gens = s->generators();
  if (images.size() != gens.size()) throw std::invalid_argument("need one image per algebra generator");
  const Field& f = s->field();
  const std::size_t dm = images.empty() ? 0 : images[0].rows();
  if (images.empty()) {
    if (s->dim() != 1) return std::nullopt;
    return FModule(s, {Mat::identity(f, dm)});
  }
  std::vector<Vec> words{s->unit()};
  std::vector<Mat> mats{Mat::identity(f, dm)};
  Mat span = Mat::column(f, s->unit());
  for (std::size_t k = 0; k < words.size(); ++k)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Vec v = s->mul(gens[g], words[k]);
      Mat col = Mat::column(f, v);
      if (subspace_contains(span, col)) continue;
      span = hcat(span, col);
      words.push_back(v);
      mats.push_back(images[g] * mats[k]);
    }
  if (span.cols() != s->dim()) return std::nullopt;
  Mat inv = *inverse(span);
  std::vector<Mat> acts;
  for (std::size_t i = 0; i < s->dim(); ++i) {
    Mat a(f, dm, dm);
    for (std::size_t w = 0; w < words.size(); ++w)
      if (!f.is_zero(inv.at(w, i))) a = a + scale(mats[w], inv.at(w, i));
    acts.push_back(std::move(a));
  }
  try {
    FModule m(s, std::move(acts));
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (m.act(gens[g]) != images[g]) return std::nullopt;
    return m;
  } catch (const InvariantError&) {
    return std::nullopt;
  }
}

CompatibleStructure find_compatible_structure(const AlgebraMap& phi, const FModule& m, const CancelToken& tok) {
  const Algebra& s = phi.target();
  const Field& f = s->field();
  CompatibleStructure out;
  if (m.dim() == 0) {
    out.exists = true;
    out.structure = FModule::zero(s);
    out.method = "zero module";
    return out;
  }
  if (phi.surjective()) {
    Mat ker = phi.kernel_basis();
    for (std::size_t j = 0; j < ker.cols(); ++j)
      if (!m.act(to_vec(ker, j)).is_zero()) {
        out.exists = false;
        out.method = "annihilator: I*M != 0";
        return out;
      }
    std::vector<Mat> acts;
    for (std::size_t i = 0; i < s->dim(); ++i) {
      auto r = solve(phi.matrix(), Mat::column(f, s->basis_vector(i)));
      acts.push_back(m.act(to_vec(*r)));
    }
    out.exists = true;
    out.structure = FModule(s, std::move(acts));
    out.method = phi.injective() ? "inverse of phi" : "annihilator: I*M = 0";
    return out;
  }
  if (m.dim() % static_cast<std::size_t>(s->residue_degree()) != 0) {
    out.exists = false;
    out.method = "dimension not divisible by dim S/n";
    return out;
  }
  if (f.is_finite()) {
    const std::uint64_t q = *f.size();
    const std::size_t ng = s->generators().size();
    const std::size_t cells = m.dim() * m.dim() * ng;
    if (power_bound(q, cells) <= 65536.0) {
      std::vector<std::uint64_t> idx(cells, 0);
      do {
        tok.check();
        std::vector<Mat> imgs;
        for (std::size_t g = 0, c = 0; g < ng; ++g) {
          Mat x(f, m.dim(), m.dim());
          for (std::size_t i = 0; i < m.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) x.at(i, j) = f.element_at(idx[c++]);
          imgs.push_back(std::move(x));
        }
        auto cand = module_from_generator_images(s, imgs);
        if (cand && same_actions(restrict(phi, *cand), m)) {
          out.exists = true;
          out.structure = cand;
          out.method = "exhaustive search";
          return out;
        }
      } while (advance(idx, q));
      out.exists = false;
      out.method = "exhaustive search";
      return out;
    }
  }
  out.method = "undecided: search space too large";
  return out;
}

FModule target_as_source_module(const AlgebraMap& phi) { return restrict(phi, FModule::free(phi.target(), 1)); }

Mat evaluation_map(const HomSpace& hom) {
  Mat e(hom.target.field(), hom.target.dim(), hom.dim());
  for (std::size_t j = 0; j < hom.dim(); ++j) e.set_block(0, j, hom.basis[j].col(0));
  return e;
}

Facts AscentReport::facts() const {
  Facts out;
  if (compatible)
    out.set("compatible-structure", *compatible);
  else
    out.set("compatible-structure", "undecided");
  out.set("iota-bijective", iota_bijective);
  out.set("epsilon-bijective", epsilon_bijective);
  out.set("tensor-fg", tensor_fg);
  out.set("flat", flat);
  std::vector<std::int64_t> dims(ext_dims.begin(), ext_dims.end());
  out.set("ext-dims", dims);
  for (std::size_t i = 1; i < ext_dims.size(); ++i) out.set("ext-vanishing(" + std::to_string(i) + ")", ext_dims[i] == 0);
  return out;
}

AscentReport ascent_conditions(const AlgebraMap& phi, const FModule& m, std::size_t ext_range,
                               const CancelToken& tok) {
  AscentReport rep;
  auto cs = find_compatible_structure(phi, m, tok);
  rep.compatible = cs.exists;
  rep.structure = cs.structure;
  BaseChange bc = base_change(phi, m);
  rep.iota_bijective = bijective(bc.iota);
  if (rep.iota_bijective) rep.iota_inverse = inverse(bc.iota);
  FModule sr = target_as_source_module(phi);
  HomSpace hom = hom_space(sr, m);
  rep.epsilon_bijective = bijective(evaluation_map(hom));
  rep.flat = is_flat(phi).flat;
  Resolution res = minimal_resolution(sr, ext_range + 1, tok);
  for (std::size_t i = 0; i <= ext_range; ++i) rep.ext_dims.push_back(ext_from(res, m, i).dim);
  return rep;
}

void require_dagger(const AlgebraMap& phi) {
  DaggerReport d = check_dagger(phi);
  if (!d.ms_equals_n) throw InvariantError("condition (dagger) fails: m_R S != n");
  if (!d.residue_iso) throw InvariantError("condition (dagger) fails: residue map R/m -> S/n is not bijective");
}

AscentReport compatibility_report(const AlgebraMap& phi, const FModule& m, std::size_t ext_range,
                                  const CancelToken& tok) {
  require_dagger(phi);
  AscentReport rep = ascent_conditions(phi, m, ext_range, tok);
  if (!rep.compatible) throw std::logic_error("compatible structure undecided under (dagger)");
  if (*rep.compatible != rep.iota_bijective || rep.iota_bijective != rep.epsilon_bijective)
    throw std::logic_error("conditions (1), (2), (3) disagree");
  return rep;
}

// ---------------------------------------------------------------------------

VmaxReport vmax(const AlgebraMap& phi, const FModule& n, const Mat& m) {
  require_dagger(phi);
  const Field& f = n.field();
  const Algebra& s = phi.target();
  FModule nr = restrict(phi, n);
  Mat mb = span_of(f, n.dim(), m);
  if (!nr.is_submodule(mb)) throw std::invalid_argument("M is not stable under the R-action");
  VmaxReport rep;
  if (mb.cols() == 0) {
    rep.definitional = rep.saturation = rep.eps_image = mb;
    rep.agree = true;
    return rep;
  }
  Mat v = mb;
  for (std::size_t i = 0; i < s->dim() && v.cols(); ++i) v = subspace_intersection(v, preimage(n.action(i), mb));
  rep.definitional = v;

  Mat w = mb;
  for (;;) {
    Mat next = w;
    for (const auto& g : s->generators()) {
      if (next.cols() == 0) break;
      next = subspace_intersection(next, preimage(n.act(g), w));
    }
    if (next.cols() == w.cols()) break;
    w = next;
  }
  rep.saturation = w;

  SubModule sub = submodule(nr, mb);
  HomSpace hom = hom_space(target_as_source_module(phi), sub.module);
  rep.eps_image = span_of(f, n.dim(), sub.inclusion * evaluation_map(hom));
  rep.agree = subspace_equal(rep.definitional, rep.saturation) && subspace_equal(rep.definitional, rep.eps_image);
  return rep;
}

Prop16Report prop16_check(const AlgebraMap& phi, const FModule& l, const FModule& n, const Mat& m) {
  VmaxReport vr = vmax(phi, n, m);
  const Field& f = n.field();
  FModule lr = restrict(phi, l), nr = restrict(phi, n);
  SubModule sv = submodule(nr, vr.v()), sm = submodule(nr, m);
  HomSpace hv = hom_space(lr, sv.module), hm = hom_space(lr, sm.module);
  Prop16Report rep;
  rep.dim_hom_v = hv.dim();
  rep.dim_hom_m = hm.dim();
  Mat a(f, n.dim() * l.dim(), 0), b(f, n.dim() * l.dim(), 0);
  for (const auto& x : hv.basis) a = hcat(a, vec_row_major(sv.inclusion * x));
  for (const auto& x : hm.basis) b = hcat(b, vec_row_major(sm.inclusion * x));
  rep.equal = rep.dim_hom_v == rep.dim_hom_m && subspace_equal(span_of(f, a.rows(), a), span_of(f, b.rows(), b));
  return rep;
}

// ---------------------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Found:
      return "found";
    case Verdict::None:
      return "none";
    case Verdict::Undecided:
      return "undecided";
  }
  return "undecided";
}

namespace {

std::optional<AlgebraMap> try_retract(const AlgebraMap& phi, const std::vector<Vec>& images) {
  const Algebra& a = phi.source();
  const Algebra& b = phi.target();
  std::vector<std::pair<Vec, Vec>> pairs;
  for (std::size_t g = 0; g < b->generators().size(); ++g) pairs.emplace_back(b->generators()[g], images[g]);
  try {
    AlgebraMap psi = AlgebraMap::from_images(b, a, pairs);
    if (psi.matrix() * phi.matrix() == Mat::identity(a->field(), a->dim())) return psi;
  } catch (const InvariantError&) {
  }
  return std::nullopt;
}

Vec eval_in_algebra(const Algebra& a, const Poly& p, const Vec& z) {
  Vec acc = a->zero();
  for (std::size_t i = p.c.size(); i-- > 0;) acc = a->add(a->mul(acc, z), a->from_scalar(p.c[i]));
  return acc;
}

}  // namespace

RetractResult ring_retract(const AlgebraMap& phi, std::uint64_t search_bound, const CancelToken& tok) {
  const Algebra& a = phi.source();
  const Algebra& b = phi.target();
  const Field& f = a->field();
  RetractResult out;
  if (phi.bijective()) {
    out.psi = AlgebraMap(b, a, *inverse(phi.matrix()));
    out.verdict = Verdict::Found;
    out.method = "inverse of bijective phi";
    return out;
  }
  if (!phi.injective()) {
    out.verdict = Verdict::None;
    out.method = "phi not injective";
    return out;
  }
  const auto& gens = b->generators();
  if (f.is_finite()) {
    const std::uint64_t q = *f.size();
    const std::size_t cells = a->dim() * gens.size();
    if (power_bound(q, cells) > static_cast<double>(search_bound)) {
      out.method = "undecided: search space exceeds bound";
      return out;
    }
    std::vector<std::uint64_t> idx(cells, 0);
    do {
      tok.check();
      ++out.candidates_tried;
      std::vector<Vec> imgs;
      for (std::size_t g = 0, c = 0; g < gens.size(); ++g) {
        Vec v;
        for (std::size_t i = 0; i < a->dim(); ++i) v.push_back(f.element_at(idx[c++]));
        imgs.push_back(std::move(v));
      }
      if (auto psi = try_retract(phi, imgs)) {
        out.psi = psi;
        out.verdict = Verdict::Found;
        out.method = "exhaustive search";
        return out;
      }
    } while (advance(idx, q));
    out.verdict = Verdict::None;
    out.method = "exhaustive search";
    return out;
  }
  if (gens.size() != 1 || a->residue_degree() != 1) {
    out.method = "undecided: more than one generator";
    return out;
  }
  // psi(g) = z must be a root of the minimal polynomial of g in A; its
  // residue is a root in k, lifted by Newton iteration when simple.
  PolyRing ring(f);
  Poly mu = minimal_polynomial(b->left_of(gens[0]));
  auto roots = ring.roots(mu);
  if (!roots) {
    out.method = "undecided: no root finder for this field";
    return out;
  }
  Poly dmu = ring.derivative(mu);
  bool undecided = false;
  for (const auto& lambda : *roots) {
    tok.check();
    Vec z = a->from_scalar(lambda);
    if (a->dim() > 1) {
      if (f.is_zero(ring.eval(dmu, lambda))) {
        undecided = true;
        continue;
      }
      for (int it = 0; it <= a->nilpotency(); ++it) {
        Vec val = eval_in_algebra(a, mu, z);
        Vec der = eval_in_algebra(a, dmu, z);
        auto inv = solve(a->left_of(der), Mat::column(f, a->unit()));
        z = a->add(z, a->scale(a->mul(val, to_vec(*inv)), f.from_int(-1)));
      }
    }
    ++out.candidates_tried;
    if (auto psi = try_retract(phi, {z})) {
      out.psi = psi;
      out.verdict = Verdict::Found;
      out.method = "root lifting";
      return out;
    }
  }
  out.verdict = undecided ? Verdict::Undecided : Verdict::None;
  out.method = undecided ? "undecided: repeated root" : "root lifting";
  return out;
}

AlgebraMap retract_from_structure(const AlgebraMap& phi, const FModule& structure) {
  const Algebra& a = phi.source();
  const Algebra& b = phi.target();
  if (!same_actions(restrict(phi, structure), FModule::free(a, 1)))
    throw InvariantError("structure is not compatible with the A-module A");
  Mat psi(a->field(), a->dim(), b->dim());
  for (std::size_t i = 0; i < b->dim(); ++i) psi.set_block(0, i, structure.action(i).col(0));
  AlgebraMap out(b, a, psi);
  if (out.matrix() * phi.matrix() != Mat::identity(a->field(), a->dim()))
    throw InvariantError("constructed psi is not a retraction");
  return out;
}

FModule structure_from_retract(const AlgebraMap& phi, const AlgebraMap& psi) {
  const Algebra& a = phi.source();
  const Algebra& b = phi.target();
  if (psi.matrix() * phi.matrix() != Mat::identity(a->field(), a->dim()))
    throw InvariantError("psi * phi != id");
  std::vector<Mat> acts;
  for (std::size_t i = 0; i < b->dim(); ++i) {
    Mat m(a->field(), a->dim(), a->dim());
    for (std::size_t j = 0; j < a->dim(); ++j)
      m.set_block(0, j, Mat::column(a->field(), psi.apply(b->mul(b->basis_vector(i), phi.apply(a->basis_vector(j))))));
    acts.push_back(std::move(m));
  }
  FModule out(b, std::move(acts));
  if (!same_actions(restrict(phi, out), FModule::free(a, 1)))
    throw InvariantError("structure from retract is not compatible");
  return out;
}

// ---------------------------------------------------------------------------

void check_exact(const ExactTriple& t) {
  if (t.f.rows() != t.mid.dim() || t.f.cols() != t.sub.dim() || t.g.rows() != t.quo.dim() || t.g.cols() != t.mid.dim())
    throw std::invalid_argument("sequence maps have wrong shapes");
  if (!is_homomorphism(t.sub, t.mid, t.f) || !is_homomorphism(t.mid, t.quo, t.g))
    throw std::invalid_argument("sequence maps are not module homomorphisms");
  if (!(t.g * t.f).is_zero()) throw std::invalid_argument("g * f != 0");
  if (rank(t.f) != t.sub.dim()) throw std::invalid_argument("f is not injective");
  if (rank(t.g) != t.quo.dim()) throw std::invalid_argument("g is not surjective");
  if (t.mid.dim() != t.sub.dim() + t.quo.dim()) throw std::invalid_argument("sequence not exact in the middle");
}

Lemma112Report lemma112_property(const AlgebraMap& phi, const ExactTriple& t) {
  try {
    require_dagger(phi);
  } catch (const InvariantError& e) {
    throw std::invalid_argument(e.what());
  }
  if (!is_flat(phi).flat) throw std::invalid_argument("hypothesis violated: phi is not flat");
  check_exact(t);
  Lemma112Report rep;
  rep.sub_compatible = *compatibility_report(phi, t.sub, 0).compatible;
  rep.mid_compatible = *compatibility_report(phi, t.mid, 0).compatible;
  rep.quo_compatible = *compatibility_report(phi, t.quo, 0).compatible;
  rep.holds = rep.mid_compatible == (rep.sub_compatible && rep.quo_compatible);
  if (!rep.holds) throw std::logic_error("compatibility fails to ascend along the exact sequence");
  return rep;
}

Prop110Report prop110_check(const AlgebraMap& phi) {
  require_dagger(phi);
  const Algebra& r = phi.source();
  const Algebra& s = phi.target();
  const Field& f = r->field();
  FlatnessReport fl = is_flat(phi);
  Prop110Report rep;
  rep.flat = fl.flat;
  rep.rank = fl.rank;
  rep.bijective = phi.bijective();
  if (!fl.flat) return rep;
  if (fl.rank != 1) throw std::logic_error("flat (dagger) map of rank != 1");
  const Vec& b = fl.basis[0];
  Mat t(f, s->dim(), r->dim());
  for (std::size_t j = 0; j < r->dim(); ++j) t.set_block(0, j, Mat::column(f, s->mul(phi.apply(r->basis_vector(j)), b)));
  auto tinv = inverse(t);
  if (!tinv) throw std::logic_error("free basis does not give an isomorphism");
  Vec r1 = homascend::apply(*tinv, s->unit());
  auto r1inv = solve(r->left_of(r1), Mat::column(f, r->unit()));
  if (!r1inv) throw std::logic_error("unit coefficient is not invertible");
  Mat pi = r->left_of(to_vec(*r1inv)) * *tinv;
  if (pi * phi.matrix() != Mat::identity(f, r->dim())) throw std::logic_error("retraction fails pi * phi = id");
  rep.retraction = pi;
  if (!rep.bijective) throw std::logic_error("flat (dagger) map is not bijective");
  return rep;
}

bool thm19_check(const AlgebraMap& phi, const FModule& n) {
  DaggerReport d = check_dagger(phi);
  if (!d.dagger() || !is_flat(phi).flat || n.dim() == 0) return false;
  if (ann_supp(n).annihilator.cols() != 0) return false;
  if (!phi.bijective()) throw InvariantError("faithful f.g. module over flat (dagger) map but phi not bijective");
  return true;
}

// ---------------------------------------------------------------------------

namespace {

void add_ext_facts(Facts& out, const std::vector<std::size_t>& dims) {
  std::vector<std::int64_t> d(dims.begin(), dims.end());
  out.set("ext-dims", d);
  bool vanish = true;
  for (std::size_t i = 1; i < dims.size(); ++i) vanish = vanish && dims[i] == 0;
  out.set("ext-vanishing", vanish);
}

void add_retract_facts(Facts& out, const RetractResult& r) {
  out.set("retract", to_string(r.verdict));
  out.set("retract-method", r.method);
  out.set("retract-candidates", r.candidates_tried);
}

}  // namespace

Facts gallery_2_8(std::size_t ext_range) {
  Field q = Field::rationals();
  Algebra r = LocalAlgebra::from_presentation(q, {}, {}, 1);
  Field qi = Field::extension(q, {q.one(), q.zero(), q.one()}, "i");
  auto [s, phi] = algebra_tensor_extension(qi, r);
  Facts out;
  out.set("id", "2.8");
  FlatnessReport fl = is_flat(phi);
  DaggerReport d = check_dagger(phi);
  out.set("flat", fl.flat);
  out.set("free-rank", fl.rank);
  out.set("ms-equals-n", d.ms_equals_n);
  out.set("residue-iso", d.residue_iso);
  out.set("dagger", d.dagger());
  AscentReport rep = ascent_conditions(phi, FModule::free(r, 1), ext_range);
  add_ext_facts(out, rep.ext_dims);
  out.set("compatible-structure", rep.compatible.value_or(false));
  out.set("iota-bijective", rep.iota_bijective);
  out.set("epsilon-bijective", rep.epsilon_bijective);
  add_retract_facts(out, ring_retract(phi));
  return out;
}

Facts gallery_2_9(std::int64_t p, int n, std::size_t ext_range) {
  if (p < 2 || p > 7 || n < 1 || p * n > 12) throw ResourceExceeded("gallery 2.9 supports p <= 7 and p*N <= 12");
  Field k = Field::prime(p);
  Algebra r = LocalAlgebra::from_presentation(k, {"y"}, {}, n);
  Algebra s = LocalAlgebra::from_presentation(k, {"x"}, {}, static_cast<int>(p) * n);
  Vec xp = s->zero();
  if (static_cast<std::size_t>(p) < s->dim()) xp[static_cast<std::size_t>(p)] = k.one();
  AlgebraMap phi = AlgebraMap::from_images(r, s, {{*r->named_element("y"), xp}});
  Facts out;
  out.set("id", "2.9");
  out.set("p", static_cast<std::int64_t>(p));
  out.set("N", n);
  FlatnessReport fl = is_flat(phi);
  DaggerReport d = check_dagger(phi);
  out.set("flat", fl.flat);
  out.set("free-rank", fl.rank);
  out.set("ms-equals-n", d.ms_equals_n);
  out.set("residue-iso", d.residue_iso);
  out.set("dagger", d.dagger());
  AscentReport rep = ascent_conditions(phi, FModule::free(r, 1), ext_range);
  add_ext_facts(out, rep.ext_dims);
  if (rep.compatible)
    out.set("compatible-structure", *rep.compatible);
  else
    out.set("compatible-structure", "undecided");
  out.set("iota-bijective", rep.iota_bijective);
  out.set("epsilon-bijective", rep.epsilon_bijective);
  add_retract_facts(out, ring_retract(phi));
  return out;
}

Facts gallery_2_11(int n, std::size_t ext_range) {
  if (n < 1 || n > 12) throw ResourceExceeded("gallery 2.11 supports 1 <= n <= 12");
  Field q = Field::rationals();
  Algebra r = LocalAlgebra::from_presentation(q, {"x"}, {}, n);
  Algebra k = LocalAlgebra::from_presentation(q, {}, {}, 1);
  Mat m(q, 1, r->dim());
  m.at(0, 0) = q.one();
  AlgebraMap phi(r, k, m);
  Facts out;
  out.set("id", "2.11");
  out.set("n", n);
  FModule kr = restrict(phi, FModule::free(k, 1));
  Resolution res = minimal_resolution(kr, ext_range + 1);
  std::vector<std::size_t> dims;
  FModule rr = FModule::free(r, 1);
  for (std::size_t i = 0; i <= ext_range; ++i) dims.push_back(ext_from(res, rr, i).dim);
  add_ext_facts(out, dims);
  auto cs = find_compatible_structure(phi, rr);
  out.set("compatible-structure", cs.exists.value_or(false));
  add_retract_facts(out, ring_retract(phi));
  return out;
}

}  // namespace homascend
