#include "homascend/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "homascend/linalg.hpp"

namespace homascend {

Poly PolyRing::make(std::vector<Elem> coeffs) const {
  while (!coeffs.empty() && f_.is_zero(coeffs.back())) coeffs.pop_back();
  return Poly{std::move(coeffs)};
}

Poly PolyRing::one() const { return constant(f_.one()); }

Poly PolyRing::constant(const Elem& a) const { return make({a}); }

Poly PolyRing::monomial(int e, const Elem& coeff) const {
  std::vector<Elem> c(e + 1, f_.zero());
  c[e] = coeff;
  return make(std::move(c));
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  std::vector<Elem> c(std::max(a.c.size(), b.c.size()), f_.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) f_.add_to(c[i], b.c[i]);
  return make(std::move(c));
}

Poly PolyRing::neg(const Poly& a) const {
  Poly r = a;
  for (auto& x : r.c) x = f_.neg(x);
  return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> c(a.c.size() + b.c.size() - 1, f_.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (f_.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) f_.add_mul(c[i + j], a.c[i], b.c[j]);
  }
  return make(std::move(c));
}

Poly PolyRing::scale(const Poly& a, const Elem& s) const {
  std::vector<Elem> c;
  c.reserve(a.c.size());
  for (const auto& x : a.c) c.push_back(f_.mul(x, s));
  return make(std::move(c));
}

Poly PolyRing::shift(const Poly& a, int e) const {
  if (a.is_zero()) return a;
  std::vector<Elem> c(e, f_.zero());
  c.insert(c.end(), a.c.begin(), a.c.end());
  return Poly{std::move(c)};
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Elem> r = a.c;
  std::vector<Elem> q(a.c.size() - b.c.size() + 1, f_.zero());
  Elem lead_inv = f_.inv(b.c.back());
  for (int k = a.degree(); k >= b.degree(); --k) {
    if (f_.is_zero(r[k])) continue;
    Elem coef = f_.mul(r[k], lead_inv);
    q[k - b.degree()] = coef;
    Elem negc = f_.neg(coef);
    for (std::size_t i = 0; i < b.c.size(); ++i) f_.add_mul(r[k - b.degree() + i], negc, b.c[i]);
  }
  r.resize(b.c.size() - 1);
  return {make(std::move(q)), make(std::move(r))};
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.is_zero()) return a;
  return scale(a, f_.inv(a.c.back()));
}

Poly PolyRing::gcd(Poly a, Poly b) const {
  while (!b.is_zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

std::tuple<Poly, Poly, Poly> PolyRing::xgcd(const Poly& a, const Poly& b) const {
  Poly r0 = a, r1 = b, s0 = one(), s1 = zero(), t0 = zero(), t1 = one();
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = sub(s0, mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = sub(t0, mul(q, t1));
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Elem li = f_.inv(r0.c.back());
  return {scale(r0, li), scale(s0, li), scale(t0, li)};
}

Poly PolyRing::derivative(const Poly& a) const {
  if (a.c.size() <= 1) return {};
  std::vector<Elem> c(a.c.size() - 1, f_.zero());
  for (std::size_t i = 1; i < a.c.size(); ++i) c[i - 1] = f_.mul(a.c[i], f_.from_int(static_cast<long>(i)));
  return make(std::move(c));
}

Poly PolyRing::pow_mod(Poly base, Integer e, const Poly& modulus) const {
  Poly result = rem(one(), modulus);
  base = rem(base, modulus);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = rem(mul(result, base), modulus);
    e >>= 1;
    if (e > 0) base = rem(mul(base, base), modulus);
  }
  return result;
}

Elem PolyRing::eval(const Poly& a, const Elem& x) const {
  Elem acc = f_.zero();
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) acc = f_.add(f_.mul(acc, x), *it);
  return acc;
}

bool PolyRing::equal(const Poly& a, const Poly& b) const {
  if (a.c.size() != b.c.size()) return false;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (!f_.equal(a.c[i], b.c[i])) return false;
  return true;
}

int PolyRing::valuation(const Poly& a) const {
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (!f_.is_zero(a.c[i])) return static_cast<int>(i);
  return -1;
}

std::vector<std::pair<Poly, int>> PolyRing::squarefree(const Poly& a) const {
  std::vector<std::pair<Poly, int>> out;
  if (a.degree() < 1) return out;
  const std::int64_t p = f_.characteristic();
  Poly f = monic(a);
  if (p == 0) {
    // Yun's algorithm.
    Poly fp = derivative(f);
    Poly b = gcd(f, fp);
    Poly c = divmod(f, b).first;
    Poly d = sub(divmod(fp, b).first, derivative(c));
    int i = 1;
    while (c.degree() >= 1) {
      Poly g = gcd(c, d);
      if (g.degree() >= 1) out.emplace_back(g, i);
      c = divmod(c, g).first;
      d = sub(divmod(d, g).first, derivative(c));
      ++i;
    }
    return out;
  }
  // Characteristic p: separate the p-th power part.
  auto q = f_.size();
  if (!q) throw std::logic_error("squarefree over an infinite field of positive characteristic");
  std::vector<std::pair<Poly, int>> acc;
  Poly fp = derivative(f);
  if (fp.is_zero()) {
    // f = g(x^p) = h^p with h the p-th root.
    std::vector<Elem> root;
    Integer exp = Integer(static_cast<unsigned long>(*q)) / p;
    for (std::size_t i = 0; i < f.c.size(); i += p) root.push_back(f_.pow(f.c[i], exp.get_ui()));
    for (auto& [g, m] : squarefree(make(root))) acc.emplace_back(g, m * static_cast<int>(p));
    return acc;
  }
  Poly c = gcd(f, fp);
  Poly w = divmod(f, c).first;
  int i = 1;
  while (w.degree() >= 1) {
    Poly y = gcd(w, c);
    Poly z = divmod(w, y).first;
    if (z.degree() >= 1) acc.emplace_back(monic(z), i);
    ++i;
    w = y;
    c = divmod(c, y).first;
  }
  if (c.degree() >= 1) {
    std::vector<Elem> root;
    Integer exp = Integer(static_cast<unsigned long>(*q)) / p;
    for (std::size_t k = 0; k < c.c.size(); k += p) root.push_back(f_.pow(c.c[k], exp.get_ui()));
    for (auto& [g, m] : squarefree(make(root))) acc.emplace_back(g, m * static_cast<int>(p));
  }
  return acc;
}

namespace {

std::optional<std::vector<Integer>> small_divisors(Integer n) {
  if (n < 0) n = -n;
  if (n == 0) return std::nullopt;
  if (n > Integer("1000000000000")) return std::nullopt;
  std::vector<Integer> d;
  for (Integer k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      d.push_back(k);
      if (k * k != n) d.push_back(n / k);
    }
  return d;
}

}  // namespace

std::optional<std::vector<Elem>> PolyRing::roots(const Poly& a) const {
  std::vector<Elem> out;
  if (a.is_zero()) return std::nullopt;
  if (f_.kind() == FieldKind::Rationals) {
    Poly f = a;
    int v = valuation(f);
    if (v > 0) {
      out.push_back(f_.zero());
      f = make(std::vector<Elem>(f.c.begin() + v, f.c.end()));
    }
    if (f.degree() < 1) return out;
    Integer lcm = 1;
    for (const auto& c : f.c) {
      Integer den = c.q.get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<Integer> ic;
    for (const auto& c : f.c) ic.push_back(Integer(c.q * lcm));
    auto num_div = small_divisors(ic.front());
    auto den_div = small_divisors(ic.back());
    if (!num_div || !den_div) return std::nullopt;
    std::set<Rational> seen;
    for (const auto& pn : *num_div)
      for (const auto& qd : *den_div)
        for (int s : {1, -1}) {
          Rational cand(pn * s, qd);
          cand.canonicalize();
          if (!seen.insert(cand).second) continue;
          Elem e;
          e.q = cand;
          if (f_.is_zero(eval(f, e))) out.push_back(e);
        }
    return out;
  }
  auto q = f_.size();
  if (!q || *q > root_search_bound) return std::nullopt;
  for (std::uint64_t i = 0; i < *q; ++i) {
    Elem e = f_.element_at(i);
    if (f_.is_zero(eval(a, e))) out.push_back(e);
  }
  return out;
}

std::vector<std::pair<Poly, int>> PolyRing::distinct_degree(const Poly& a) const {
  auto q = f_.size();
  if (!q) throw std::logic_error("distinct_degree requires a finite field");
  std::vector<std::pair<Poly, int>> out;
  Poly f = monic(a);
  Poly h = x();
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    h = pow_mod(h, Integer(static_cast<unsigned long>(*q)), f);
    Poly g = gcd(sub(h, x()), f);
    if (g.degree() >= 1) {
      out.emplace_back(g, d);
      f = divmod(f, g).first;
      h = rem(h, f);
    }
  }
  if (f.degree() >= 1) out.emplace_back(f, f.degree());
  return out;
}

std::optional<bool> PolyRing::irreducible_small(const Poly& a) const {
  if (a.degree() <= 1) return a.degree() == 1;
  if (a.degree() > 3) return std::nullopt;
  auto r = roots(a);
  if (!r) return std::nullopt;
  return r->empty();
}

std::string PolyRing::to_string(const Poly& a, const std::string& var) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (f_.is_zero(a.c[i])) continue;
    std::string coef = f_.to_string(a.c[i]);
    bool needs_paren = coef.find_first_of("+-/", 1) != std::string::npos ||
                       (f_.kind() == FieldKind::SimpleExtension && coef.find_first_of("+-") != std::string::npos);
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << (needs_paren ? "(" + coef + ")" : coef);
      continue;
    }
    if (!f_.is_one(a.c[i])) os << (needs_paren ? "(" + coef + ")" : coef) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

Poly minimal_polynomial(const Mat& a) {
  const Field& f = a.field();
  const std::size_t n = a.rows();
  PolyRing ring(f);
  // Columns are vec(A^j); find the first dependency.
  Mat powers(f, n * n, 0);
  Mat cur = Mat::identity(f, n);
  for (std::size_t k = 0; k <= n; ++k) {
    Mat v(f, n * n, 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v.at(i * n + j, 0) = cur.at(i, j);
    if (k > 0) {
      auto x = solve(powers, v);
      if (x) {
        std::vector<Elem> c(k + 1, f.zero());
        for (std::size_t j = 0; j < k; ++j) c[j] = f.neg(x->at(j, 0));
        c[k] = f.one();
        return ring.make(std::move(c));
      }
    }
    powers = hcat(powers, v);
    cur = cur * a;
  }
  throw std::logic_error("minimal_polynomial: Cayley-Hamilton violated");
}

Mat eval_poly(const Field& f, const Poly& p, const Mat& a) {
  const std::size_t n = a.rows();
  Mat acc(f, n, n);
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) f.add_to(acc.at(i, i), *it);
  }
  return acc;
}

}  // namespace homascend
