#include <algorithm>
#include <random>

#include "homascend/fmodule.hpp"
#include "homascend/poly.hpp"

namespace homascend {

namespace {

Mat span_of(const Field& f, std::size_t n, const Mat& m) { return m.cols() ? column_space(m) : Mat(f, n, 0); }

bool is_idempotent_nontrivial(const Mat& e) {
  if (e * e != e) return false;
  if (e.is_zero()) return false;
  return e != Mat::identity(e.field(), e.rows());
}

// Coprime factorisation mu = a * b with both factors nonconstant, if one is
// visible from square-free parts, rational roots or distinct degrees.
std::optional<std::pair<Poly, Poly>> coprime_split(const PolyRing& r, const Poly& mu) {
  if (mu.degree() <= 1) return std::nullopt;
  auto sqf = r.squarefree(mu);
  std::vector<std::pair<Poly, int>> parts;
  for (const auto& p : sqf)
    if (p.first.degree() > 0) parts.push_back(p);
  auto power = [&](const Poly& p, int e) {
    Poly out = r.one();
    for (int i = 0; i < e; ++i) out = r.mul(out, p);
    return out;
  };
  auto finish = [&](const Poly& a) -> std::optional<std::pair<Poly, Poly>> {
    auto [q, rem] = r.divmod(mu, a);
    if (!rem.is_zero() || q.degree() <= 0 || a.degree() <= 0) return std::nullopt;
    return std::make_pair(a, q);
  };
  if (parts.size() >= 2) return finish(power(parts[0].first, parts[0].second));
  if (parts.empty()) return std::nullopt;
  const Poly& a = parts[0].first;
  const int e = parts[0].second;
  if (a.degree() <= 1) return std::nullopt;
  if (auto roots = r.roots(a); roots && !roots->empty()) {
    const Field& f = r.field();
    Poly lin = r.make({f.neg((*roots)[0]), f.one()});
    return finish(power(lin, e));
  }
  if (r.field().kind() == FieldKind::PrimeField) {
    auto dd = r.distinct_degree(r.monic(a));
    std::vector<std::pair<Poly, int>> nz;
    for (const auto& p : dd)
      if (p.first.degree() > 0) nz.push_back(p);
    if (nz.size() >= 2) return finish(power(nz[0].first, e));
  }
  return std::nullopt;
}

// Idempotent of End(M) obtained from a Fitting splitting of phi, if any.
std::optional<Mat> fitting_idempotent(const Mat& phi) {
  const Field& f = phi.field();
  PolyRing r(f);
  Poly mu = minimal_polynomial(phi);
  auto split = coprime_split(r, mu);
  if (!split) return std::nullopt;
  auto [g, s, t] = r.xgcd(split->first, split->second);
  if (g.degree() != 0) return std::nullopt;
  // s a + t b = 1: t b (phi) projects onto ker a(phi) along ker b(phi).
  Mat e = eval_poly(f, r.mul(t, split->second), phi);
  if (!is_idempotent_nontrivial(e)) return std::nullopt;
  return e;
}

std::optional<Mat> search_fitting(const HomSpace& end, std::uint64_t seed, const CancelToken& tok) {
  const auto& b = end.basis;
  for (const auto& x : b) {
    tok.check();
    if (auto e = fitting_idempotent(x)) return e;
  }
  const std::size_t pair_cap = 40;
  for (std::size_t i = 0; i < b.size() && i < pair_cap; ++i)
    for (std::size_t j = i + 1; j < b.size() && j < pair_cap; ++j) {
      tok.check();
      if (auto e = fitting_idempotent(b[i] + b[j])) return e;
    }
  const Field& f = end.source.field();
  std::mt19937_64 rng(seed + 0x51ed270b27a5ULL);
  std::uniform_int_distribution<long> dist(-7, 7);
  std::uniform_int_distribution<std::uint64_t> fdist(0, f.is_finite() ? *f.size() - 1 : 0);
  std::vector<Elem> c(b.size());
  for (int trial = 0; trial < 12; ++trial) {
    tok.check();
    for (auto& x : c) x = f.is_finite() ? f.element_at(fdist(rng)) : f.from_int(dist(rng));
    if (auto e = fitting_idempotent(end.combine(c))) return e;
  }
  return std::nullopt;
}

// Characteristic 0: End/J is a field when J is the trace-form radical and
// either the quotient is one-dimensional or it is generated by one element
// with irreducible minimal polynomial of full degree.
bool certify_local_char0(const HomSpace& end) {
  const Field& f = end.source.field();
  const auto& b = end.basis;
  const std::size_t h = b.size();
  Mat gram(f, h, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      Mat p = b[i] * b[j];
      Elem tr = f.zero();
      for (std::size_t k = 0; k < p.rows(); ++k) f.add_to(tr, p.at(k, k));
      gram.at(j, i) = tr;
    }
  Mat jrad = kernel(gram);
  const std::size_t dq = h - jrad.cols();
  if (dq == 1) return true;
  if (dq == 0 || dq > 3) return false;
  Quotient q = quotient(f, h, jrad);
  PolyRing r(f);
  for (std::size_t i = 0; i < h; ++i) {
    // Left multiplication by b_i on End, in basis coordinates.
    Mat left(f, h, h);
    for (std::size_t j = 0; j < h; ++j) {
      auto c = end.coordinates(b[i] * b[j]);
      if (!c) return false;
      for (std::size_t k = 0; k < h; ++k) left.at(k, j) = (*c)[k];
    }
    Mat lbar = induced_operator(q, left);
    Poly mu = minimal_polynomial(lbar);
    if (mu.degree() != static_cast<int>(dq)) continue;
    auto irr = r.irreducible_small(mu);
    if (irr && *irr) return true;
  }
  return false;
}

std::optional<std::optional<Mat>> exhaustive_idempotents(const HomSpace& end, const CancelToken& tok) {
  const Field& f = end.source.field();
  if (!f.is_finite()) return std::nullopt;
  const std::uint64_t q = *f.size();
  const std::size_t h = end.dim();
  double total = 1;
  for (std::size_t i = 0; i < h; ++i) total *= static_cast<double>(q);
  if (total > 65536.0 || end.source.dim() > 6) return std::nullopt;
  std::vector<std::uint64_t> idx(h, 0);
  std::vector<Elem> c(h);
  for (;;) {
    tok.check();
    for (std::size_t i = 0; i < h; ++i) c[i] = f.element_at(idx[i]);
    Mat e = end.combine(c);
    if (is_idempotent_nontrivial(e)) return std::optional<Mat>(e);
    std::size_t p = 0;
    while (p < h && ++idx[p] == q) idx[p++] = 0;
    if (p == h) break;
  }
  return std::optional<Mat>();
}

void decompose_into(const FModule& m, const Mat& embed, std::uint64_t seed, const CancelToken& tok,
                    std::vector<Piece>& out) {
  auto ind = check_indecomposable(m, seed, tok);
  if (ind.indecomposable || !ind.idempotent) {
    out.push_back({m, embed, ind.certified});
    return;
  }
  const Mat& e = *ind.idempotent;
  const Field& f = m.field();
  Mat id = Mat::identity(f, m.dim());
  for (const Mat& w : {span_of(f, m.dim(), e), span_of(f, m.dim(), id - e)}) {
    SubModule s = submodule(m, w);
    decompose_into(s.module, embed * s.inclusion, seed, tok, out);
  }
}

}  // namespace

Indecomposability check_indecomposable(const FModule& m, std::uint64_t seed, const CancelToken& tok) {
  Indecomposability out;
  if (m.dim() == 0) {
    out.certified = true;
    return out;
  }
  HomSpace end = hom_space(m, m);
  if (end.dim() == 1) {
    out.indecomposable = out.certified = true;
    return out;
  }
  if (auto e = search_fitting(end, seed, tok)) {
    out.certified = true;
    out.idempotent = e;
    return out;
  }
  if (m.field().characteristic() == 0) {
    out.indecomposable = true;
    out.certified = certify_local_char0(end);
    return out;
  }
  if (auto ex = exhaustive_idempotents(end, tok)) {
    out.certified = true;
    out.indecomposable = !ex->has_value();
    out.idempotent = *ex;
    return out;
  }
  out.indecomposable = true;
  return out;
}

Mat Decomposition::iso() const {
  if (pieces.empty()) return Mat();
  Mat out = pieces[0].inclusion;
  for (std::size_t i = 1; i < pieces.size(); ++i) out = hcat(out, pieces[i].inclusion);
  return out;
}

bool Decomposition::certified() const {
  return std::all_of(pieces.begin(), pieces.end(), [](const Piece& p) { return p.certified; });
}

Decomposition krs_decompose(const FModule& m, std::uint64_t seed, const CancelToken& tok) {
  Decomposition d;
  if (m.dim() == 0) return d;
  decompose_into(m, Mat::identity(m.field(), m.dim()), seed, tok, d.pieces);
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keyed;
  for (std::size_t i = 0; i < d.pieces.size(); ++i) keyed.emplace_back(fingerprint(d.pieces[i].module), i);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Piece> sorted;
  for (const auto& k : keyed) sorted.push_back(d.pieces[k.second]);
  d.pieces = std::move(sorted);
  return d;
}

}  // namespace homascend
