#include "homascend/pidmodel.hpp"

#include <algorithm>
#include <stdexcept>

#include "homascend/linalg.hpp"

namespace homascend {

namespace {

const char* ring_name(Side s) { return s == Side::OverR ? "R" : "S"; }

// Cyclic summand: exponent 0 stands for the free module.
std::vector<int> cyclic_parts(const PIDModule& m) {
  std::vector<int> out(m.free_rank, 0);
  out.insert(out.end(), m.exponents.begin(), m.exponents.end());
  return out;
}

PIDModule from_parts(const std::vector<int>& parts, Side side) {
  std::size_t a = 0;
  std::vector<int> e;
  for (int p : parts) {
    if (p == 0)
      ++a;
    else
      e.push_back(p);
  }
  return PIDModule::make(a, e, side);
}

// Ext^i between cyclic modules; -1 marks the zero module.
int cyclic_ext(int m, int n, int i, const Field& f) {
  if (i == 0) {
    if (m == 0) return n;
    if (n == 0) return -1;
    return std::min(m, n);
  }
  if (m == 0) return -1;
  // N' / x^m N' from the presentation of N' with one extra relation
  PolyRing ring(f);
  PIDPresentation p{1, PolyMat(f, n == 0 ? 1 : 2, 1)};
  p.relations.at(0, 0) = ring.monomial(m, f.one());
  if (n != 0) p.relations.at(1, 0) = ring.monomial(n, f.one());
  PIDModule c = classify(p);
  if (c.is_zero()) return -1;
  return c.exponents.at(0);
}

}  // namespace

PIDModule PIDModule::make(std::size_t a, std::vector<int> e, Side side) {
  for (int x : e)
    if (x <= 0) throw std::invalid_argument("torsion exponents must be positive");
  std::sort(e.begin(), e.end());
  PIDModule m;
  m.free_rank = a;
  m.exponents = std::move(e);
  m.side = side;
  return m;
}

std::string PIDModule::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  const std::string r = ring_name(side);
  if (free_rank > 0) out = r + (free_rank > 1 ? "^" + std::to_string(free_rank) : "");
  for (int e : exponents) {
    if (!out.empty()) out += " + ";
    out += r + "/(x";
    if (e > 1) out += "^" + std::to_string(e);
    out += ")";
  }
  return out;
}

PIDModule direct_sum(const PIDModule& a, const PIDModule& b) {
  if (a.side != b.side) throw std::invalid_argument("direct_sum: modules over different rings");
  std::vector<int> e = a.exponents;
  e.insert(e.end(), b.exponents.begin(), b.exponents.end());
  return PIDModule::make(a.free_rank + b.free_rank, e, a.side);
}

PIDModule classify(const PIDPresentation& p, Side side) {
  if (p.relations.rows() == 0) return PIDModule::make(p.generators, {}, side);
  if (p.relations.cols() != p.generators) throw std::invalid_argument("classify: relation width != generators");
  LocalSnf s = snf_localized(p.relations);
  std::vector<int> e;
  for (int v : s.exponents)
    if (v > 0) e.push_back(v);
  return PIDModule::make(s.free_defect, e, side);
}

Facts PidAscentReport::facts() const {
  Facts f;
  f.set("compatible-structure", compatible);
  f.set("iota-bijective", iota_bijective);
  f.set("tensor-fg", tensor_fg);
  f.set("ext-vanishing", ext_vanishing);
  f.set("ext-provenance", ext_provenance);
  f.set("base-changed", base_changed.to_string());
  return f;
}

PIDModule base_change_pid(const PIDModule& m) {
  if (m.side != Side::OverR) throw std::invalid_argument("base_change_pid: module must be over R");
  return PIDModule::make(m.free_rank, m.exponents, Side::OverS);
}

PIDModule extend_pid(const PIDModule& n) {
  if (n.side != Side::OverS) throw std::invalid_argument("extend_pid: module must be over S");
  PIDModule m = PIDModule::make(n.free_rank, n.exponents, Side::OverR);
  if (!(base_change_pid(m) == n)) throw std::logic_error("extend_pid: base change does not match");
  return m;
}

PidAscentReport completion_ascent(const PIDModule& m) {
  if (m.side != Side::OverR) throw std::invalid_argument("completion_ascent: module must be over R");
  PidAscentReport r;
  r.base_changed = base_change_pid(m);

  // (2): on each summand R/(x^e) -> S/(x^e) both sides have k-dimension e and
  // the map is injective; R -> S is injective with cokernel S/R != 0.
  bool iota = true;
  for (int p : cyclic_parts(m))
    if (p == 0) iota = false;
  r.iota_bijective = iota;

  // (1): an S-structure exists iff M has finite length over k.
  std::optional<std::size_t> length = 0;
  for (int p : cyclic_parts(m)) {
    if (p == 0)
      length.reset();
    else if (length)
      *length += static_cast<std::size_t>(p);
  }
  r.compatible = length.has_value();

  // (4): S (x) M contains S^a, and S is not finitely generated over R.
  r.tensor_fg = r.base_changed.free_rank == 0;

  if (r.compatible != r.iota_bijective || r.compatible != r.tensor_fg)
    throw std::logic_error("completion_ascent: conditions disagree for " + m.to_string());
  r.ext_vanishing = r.compatible;
  return r;
}

Thm113Report thm113_decision(const PIDModule& m) {
  if (m.side != Side::OverR) throw std::invalid_argument("thm113_decision: module must be over R");
  Thm113Report r;
  if (m.is_zero()) {
    r.decision = true;
    return r;
  }
  // Supp M is {(0), (x)} with a free summand and {(x)} otherwise.
  if (m.free_rank > 0) {
    r.min_primes = {"(0)"};
    r.condition_holds = {false};
  } else {
    r.min_primes = {"(x)"};
    r.condition_holds = {true};
  }
  r.decision = std::all_of(r.condition_holds.begin(), r.condition_holds.end(), [](bool b) { return b; });
  return r;
}

PidExt ext_pid(const PIDModule& m, const PIDModule& n, int i) {
  if (m.side != n.side) throw std::invalid_argument("ext_pid: modules over different rings");
  if (i < 0) throw std::invalid_argument("ext_pid: negative degree");
  PidExt out;
  if (i >= 2) {
    out.module = PIDModule::make(0, {}, m.side);
    out.note = "gldim 1";
    return out;
  }
  Field f = Field::rationals();
  std::vector<int> parts;
  for (int a : cyclic_parts(m))
    for (int b : cyclic_parts(n)) {
      int c = cyclic_ext(a, b, i, f);
      if (c >= 0) parts.push_back(c);
    }
  out.module = from_parts(parts, m.side);
  return out;
}

Prop32PidReport prop32_case1_pid(const PIDModule& m1, const PIDModule& m2, int c) {
  if (m1.side != Side::OverR || m2.side != Side::OverR)
    throw std::invalid_argument("prop32_case1_pid: modules must be over R");
  if (m1.num_summands() != 1 || m2.num_summands() != 1)
    throw std::invalid_argument("prop32_case1_pid: modules must be cyclic");
  if (!m2.is_torsion()) throw std::invalid_argument("prop32_case1_pid: quotient must be torsion");
  const bool free_sub = !m1.is_torsion();
  const int b = m2.exponents[0];
  const int a = free_sub ? 0 : m1.exponents[0];
  Prop32PidReport r;
  r.ext1_length = static_cast<std::size_t>(free_sub ? b : std::min(a, b));
  if (c < 0 || c > static_cast<int>(r.ext1_length))
    throw std::invalid_argument("prop32_case1_pid: class index out of range");

  Field f = Field::rationals();
  PolyRing ring(f);
  // generators e1 (from M1), e2 (lifting the generator of M2):
  // x^a e1 = 0 and x^b e2 = x^c e1
  PIDPresentation p{2, PolyMat(f, free_sub ? 1 : 2, 2)};
  std::size_t row = 0;
  if (!free_sub) {
    p.relations.at(0, 0) = ring.monomial(a, f.one());
    row = 1;
  }
  p.relations.at(row, 0) = ring.monomial(c, f.neg(f.one()));
  p.relations.at(row, 1) = ring.monomial(b, f.one());
  r.middle_r = classify(p);
  r.middle_s = base_change_pid(r.middle_r);
  r.descended = extend_pid(r.middle_s);
  r.extended = base_change_pid(r.descended) == r.middle_s;
  return r;
}

namespace {

struct TorsionSpace {
  std::vector<int> e;
  std::vector<std::size_t> offset;
  std::size_t dim = 0;
};

// x acting on the torsion part of N in coefficient coordinates.
Mat shift_operator(const Field& f, const TorsionSpace& t) {
  Mat x(f, t.dim, t.dim);
  for (std::size_t j = 0; j < t.e.size(); ++j)
    for (int d = 0; d + 1 < t.e[j]; ++d) x.at(t.offset[j] + d + 1, t.offset[j] + d) = f.one();
  return x;
}

Elem coeff(const Field& f, const Poly& p, int d) {
  if (d < 0 || d >= static_cast<int>(p.c.size())) return f.zero();
  return p.c[d];
}

// pi_T of {sum r_i g_i : sum r_i pi_F(g_i) = 0 mod x^p}
Mat torsion_at_precision(const Field& f, const PIDModule& n, const TorsionSpace& t,
                         const std::vector<PidElement>& gens, int p) {
  const int maxf = t.e.empty() ? 0 : t.e.back();
  const int dd = p + maxf;
  const std::size_t unknowns = gens.size() * static_cast<std::size_t>(dd);
  Mat constraint(f, n.free_rank * static_cast<std::size_t>(p), unknowns);
  Mat image(f, t.dim, unknowns);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int k = 0; k < dd; ++k) {
      const std::size_t col = i * dd + k;
      for (std::size_t s = 0; s < n.free_rank; ++s)
        for (int d = k; d < p; ++d) constraint.at(s * p + d, col) = coeff(f, gens[i].free_part[s], d - k);
      for (std::size_t j = 0; j < t.e.size(); ++j)
        for (int d = k; d < t.e[j]; ++d) image.at(t.offset[j] + d, col) = coeff(f, gens[i].torsion_part[j], d - k);
    }
  Mat w = n.free_rank == 0 ? Mat::identity(f, unknowns) : kernel(constraint);
  return column_space(image * w);
}

}  // namespace

VmaxPidReport vmax_pid(const Field& f, const PIDModule& n, const std::vector<PidElement>& gens,
                       int max_precision) {
  if (n.side != Side::OverS) throw std::invalid_argument("vmax_pid: ambient module must be over S");
  TorsionSpace t;
  t.e = n.exponents;
  for (int e : t.e) {
    t.offset.push_back(t.dim);
    t.dim += static_cast<std::size_t>(e);
  }
  int maxdeg = 0;
  for (const auto& g : gens) {
    if (g.free_part.size() != n.free_rank || g.torsion_part.size() != t.e.size())
      throw std::invalid_argument("vmax_pid: generator shape does not match N");
    for (const auto& q : g.free_part) maxdeg = std::max(maxdeg, q.degree());
  }
  const int maxf = t.e.empty() ? 0 : t.e.back();

  VmaxPidReport r;
  Mat v;
  bool stable = false;
  int p = maxdeg + maxf + 1;
  Mat prev = torsion_at_precision(f, n, t, gens, p);
  for (; p < max_precision; ++p) {
    Mat next = torsion_at_precision(f, n, t, gens, p + 1);
    if (subspace_equal(prev, next)) {
      v = next;
      stable = true;
      break;
    }
    prev = next;
  }
  if (!stable) throw PrecisionError("vmax_pid: answer not stable up to precision " + std::to_string(max_precision));
  r.precision = p + 1;
  r.k_dim = v.cols();

  // Jordan type of x on V
  Mat x = shift_operator(f, t);
  std::vector<std::size_t> ranks{v.cols()};
  Mat cur = v;
  while (ranks.back() > 0) {
    cur = x * cur;
    ranks.push_back(rank(cur));
  }
  std::vector<int> e;
  for (std::size_t j = 1; j < ranks.size(); ++j) {
    std::size_t at_least_j = ranks[j - 1] - ranks[j];
    std::size_t at_least_next = j + 1 < ranks.size() ? ranks[j] - ranks[j + 1] : 0;
    for (std::size_t c = 0; c < at_least_j - at_least_next; ++c) e.push_back(static_cast<int>(j));
  }
  r.v = PIDModule::make(0, e, Side::OverS);
  return r;
}

Facts gallery_2_10() {
  Facts f;
  f.set("id", "2.10");
  PIDModule k = PIDModule::make(0, {1});
  PIDModule r = PIDModule::make(1, {});
  for (int i = 0; i <= 2; ++i) {
    PidExt e = ext_pid(k, r, i);
    const std::string key = "ext" + std::to_string(i);
    f.set(key, e.module.to_string());
    f.set(key + "-free-rank", e.module.free_rank);
    f.set(key + "-exponents", std::vector<std::int64_t>(e.module.exponents.begin(), e.module.exponents.end()));
  }
  return f;
}

}  // namespace homascend
