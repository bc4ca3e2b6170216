#include "homascend/snf.hpp"

#include <stdexcept>

namespace homascend {

PolyMat::PolyMat(Field f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols) {}

PolyMat PolyMat::identity(const Field& f, std::size_t n) {
  PolyMat m(f, n, n);
  PolyRing r(f);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = r.one();
  return m;
}

bool PolyMat::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !at(i, j).is_zero()) return false;
  return true;
}

int PolyMat::max_degree() const {
  int d = -1;
  for (const auto& p : e_) d = std::max(d, p.degree());
  return d;
}

PolyMat operator*(const PolyMat& a, const PolyMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("PolyMat multiply: dimension mismatch");
  PolyRing r = a.ring();
  PolyMat m(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Poly acc;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
        acc = r.add(acc, r.mul(a.at(i, k), b.at(k, j)));
      }
      m.at(i, j) = std::move(acc);
    }
  return m;
}

bool operator==(const PolyMat& a, const PolyMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  PolyRing r = a.ring();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!r.equal(a.at(i, j), b.at(i, j))) return false;
  return true;
}

Poly determinant(const PolyMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square PolyMat");
  PolyRing r = a.ring();
  const std::size_t n = a.rows();
  if (n == 0) return r.one();
  PolyMat m = a;
  Poly prev = r.one();
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m.at(piv, k).is_zero()) ++piv;
      if (piv == n) return r.zero();
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = r.sub(r.mul(m.at(k, k), m.at(i, j)), r.mul(m.at(i, k), m.at(k, j)));
        auto [q, rem] = r.divmod(num, prev);
        if (!rem.is_zero()) throw std::logic_error("Bareiss: inexact division");
        m.at(i, j) = std::move(q);
      }
      m.at(i, k) = r.zero();
    }
    prev = m.at(k, k);
  }
  Poly d = m.at(n - 1, n - 1);
  return negate ? r.neg(d) : d;
}

LocalSnf snf_localized(const PolyMat& a) {
  const Field& f = a.field();
  PolyRing r(f);
  const std::size_t nr = a.rows(), nc = a.cols();
  PolyMat w = a;
  PolyMat u = PolyMat::identity(f, nr);
  PolyMat v = PolyMat::identity(f, nc);
  LocalSnf out;

  auto row_swap = [](PolyMat& m, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
  };
  auto col_swap = [](PolyMat& m, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < m.rows(); ++c) std::swap(m.at(c, i), m.at(c, j));
  };
  // row_i := s * row_i - t * row_k
  auto row_comb = [&](PolyMat& m, std::size_t i, std::size_t k, const Poly& s, const Poly& t) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) = r.sub(r.mul(s, m.at(i, c)), r.mul(t, m.at(k, c)));
  };
  auto col_comb = [&](PolyMat& m, std::size_t j, std::size_t k, const Poly& s, const Poly& t) {
    for (std::size_t c = 0; c < m.rows(); ++c) m.at(c, j) = r.sub(r.mul(s, m.at(c, j)), r.mul(t, m.at(c, k)));
  };
  // Split a nonzero polynomial as x^e * unit.
  auto split = [&](const Poly& p) {
    int e = r.valuation(p);
    return std::make_pair(e, r.make(std::vector<Elem>(p.c.begin() + e, p.c.end())));
  };

  const std::size_t steps = std::min(nr, nc);
  for (std::size_t k = 0; k < steps; ++k) {
    int best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = k; i < nr; ++i)
      for (std::size_t j = k; j < nc; ++j) {
        if (w.at(i, j).is_zero()) continue;
        int val = r.valuation(w.at(i, j));
        if (best < 0 || val < best) {
          best = val;
          bi = i;
          bj = j;
        }
      }
    if (best < 0) break;
    row_swap(w, k, bi);
    row_swap(u, k, bi);
    col_swap(w, k, bj);
    col_swap(v, k, bj);
    auto [e, unit] = split(w.at(k, k));
    // s * entry - t * pivot = 0 with s a divisor of the pivot's unit part
    auto multipliers = [&, e = e, unit = unit](const Poly& entry) {
      auto [fe, rest] = split(entry);
      Poly g = r.gcd(unit, rest);
      return std::make_pair(r.divmod(unit, g).first, r.shift(r.divmod(rest, g).first, fe - e));
    };
    for (std::size_t i = k + 1; i < nr; ++i) {
      if (w.at(i, k).is_zero()) continue;
      auto [s, t] = multipliers(w.at(i, k));
      row_comb(w, i, k, s, t);
      row_comb(u, i, k, s, t);
    }
    for (std::size_t j = k + 1; j < nc; ++j) {
      if (w.at(k, j).is_zero()) continue;
      auto [s, t] = multipliers(w.at(k, j));
      col_comb(w, j, k, s, t);
      col_comb(v, j, k, s, t);
    }
    out.exponents.push_back(e);
  }
  out.free_defect = nc - out.exponents.size();
  out.u = std::move(u);
  out.v = std::move(v);
  out.d = std::move(w);
  return out;
}

}  // namespace homascend
