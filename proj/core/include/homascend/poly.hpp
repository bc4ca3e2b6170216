#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homascend/field.hpp"

namespace homascend {

/// Dense univariate polynomial, coefficients low-to-high with no trailing
/// zeros (the zero polynomial has no coefficients).
struct Poly {
  std::vector<Elem> c;
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

/// Arithmetic in F[x].
class PolyRing {
 public:
  explicit PolyRing(Field f) : f_(std::move(f)) {}
  const Field& field() const { return f_; }

  Poly make(std::vector<Elem> coeffs) const;
  Poly zero() const { return {}; }
  Poly one() const;
  Poly constant(const Elem& a) const;
  /// x^e
  Poly monomial(int e, const Elem& coeff) const;
  Poly x() const { return monomial(1, f_.one()); }

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, const Elem& s) const;
  Poly shift(const Poly& a, int e) const;  // a * x^e
  /// Quotient and remainder; b must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  Poly monic(const Poly& a) const;
  Poly gcd(Poly a, Poly b) const;
  /// Returns (g, s, t) with s*a + t*b = g, g monic.
  std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) const;
  Poly derivative(const Poly& a) const;
  Poly pow_mod(Poly base, Integer e, const Poly& modulus) const;
  Elem eval(const Poly& a, const Elem& x) const;
  bool equal(const Poly& a, const Poly& b) const;

  /// x-adic valuation; -1 for the zero polynomial.
  int valuation(const Poly& a) const;
  /// Nonzero constant term, i.e. a unit of F[x] localised at (x).
  bool is_local_unit(const Poly& a) const { return !a.is_zero() && !f_.is_zero(a.c[0]); }

  /// Square-free decomposition: pairs (g_i, i) with a = lc * prod g_i^i and
  /// the g_i square-free, pairwise coprime, monic. Valid in any
  /// characteristic for prime fields and Q.
  std::vector<std::pair<Poly, int>> squarefree(const Poly& a) const;
  /// Roots in F. Exact for Q (rational root theorem) and for finite fields
  /// of size <= root_search_bound (exhaustive). Returns nullopt when the
  /// search is not possible.
  std::optional<std::vector<Elem>> roots(const Poly& a) const;
  /// Distinct-degree factorisation over a prime field: pairs (product of all
  /// irreducible factors of degree d, d). Input square-free and monic.
  std::vector<std::pair<Poly, int>> distinct_degree(const Poly& a) const;
  /// irreducible for degree <= 3 via roots; nullopt when undecidable here.
  std::optional<bool> irreducible_small(const Poly& a) const;

  std::string to_string(const Poly& a, const std::string& var = "x") const;

  static constexpr std::uint64_t root_search_bound = 1u << 16;

 private:
  Field f_;
};

/// Minimal polynomial of a square matrix given as row-major entries.
class Mat;
Poly minimal_polynomial(const Mat& a);
/// Evaluate p(A) for a square matrix A.
Mat eval_poly(const Field& f, const Poly& p, const Mat& a);

}  // namespace homascend
