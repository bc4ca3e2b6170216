#include "homascend/field.hpp"

#include "homascend/poly.hpp"

namespace homascend {

namespace {

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod_p(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw ArithmeticError("inverse of zero in GF(" + std::to_string(p) + ")");
  return mod_p(t, p);
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::shared_ptr<const FieldDesc> rationals_desc() {
  static const auto d = std::make_shared<const FieldDesc>();
  return d;
}

}  // namespace

Field::Field() : d_(rationals_desc()) {}

Field Field::rationals() { return Field(); }

Field Field::prime(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("GF(p) requires prime p, got " + std::to_string(p));
  if (p > (std::int64_t{1} << 31)) throw std::invalid_argument("prime too large for GF(p) arithmetic");
  auto d = std::make_shared<FieldDesc>();
  d->kind = FieldKind::PrimeField;
  d->p = p;
  return Field(std::move(d));
}

Field Field::extension(const Field& base, std::vector<Elem> minpoly, std::string generator) {
  PolyRing ring(base);
  Poly f = ring.make(std::move(minpoly));
  if (f.degree() < 2) throw std::invalid_argument("extension minimal polynomial must have degree >= 2");
  f = ring.monic(f);
  auto d = std::make_shared<FieldDesc>();
  d->kind = FieldKind::SimpleExtension;
  d->p = base.characteristic();
  d->base = std::shared_ptr<const FieldDesc>(base.d_);
  d->minpoly = f.c;
  d->generator = std::move(generator);
  if (f.degree() <= 3) {
    auto irr = ring.irreducible_small(f);
    if (irr && !*irr)
      throw std::invalid_argument("minimal polynomial " + ring.to_string(f, d->generator) +
                                  " is reducible over " + base.name());
    d->irreducibility_verified = irr.has_value();
  }
  return Field(std::move(d));
}

std::int64_t Field::characteristic() const { return d_->kind == FieldKind::Rationals ? 0 : d_->p; }

int Field::degree() const {
  return d_->kind == FieldKind::SimpleExtension ? static_cast<int>(d_->minpoly.size()) - 1 : 1;
}

int Field::absolute_degree() const {
  if (d_->kind != FieldKind::SimpleExtension) return 1;
  return degree() * base().absolute_degree();
}

Field Field::base() const {
  if (d_->kind != FieldKind::SimpleExtension) return *this;
  return Field(d_->base);
}

std::optional<std::uint64_t> Field::size() const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      return std::nullopt;
    case FieldKind::PrimeField:
      return static_cast<std::uint64_t>(d_->p);
    case FieldKind::SimpleExtension: {
      auto b = base().size();
      if (!b) return std::nullopt;
      std::uint64_t s = 1;
      for (int i = 0; i < degree(); ++i) {
        if (s > (std::uint64_t{1} << 62) / *b) return std::nullopt;
        s *= *b;
      }
      return s;
    }
  }
  return std::nullopt;
}

bool Field::same(const Field& other) const {
  if (d_ == other.d_) return true;
  if (d_->kind != other.d_->kind) return false;
  switch (d_->kind) {
    case FieldKind::Rationals:
      return true;
    case FieldKind::PrimeField:
      return d_->p == other.d_->p;
    case FieldKind::SimpleExtension: {
      Field b = base();
      if (!b.same(other.base())) return false;
      if (d_->minpoly.size() != other.d_->minpoly.size()) return false;
      for (std::size_t i = 0; i < d_->minpoly.size(); ++i)
        if (!b.equal(d_->minpoly[i], other.d_->minpoly[i])) return false;
      return true;
    }
  }
  return false;
}

std::string Field::name() const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::PrimeField:
      return "GF(" + std::to_string(d_->p) + ")";
    case FieldKind::SimpleExtension: {
      Field b = base();
      PolyRing ring(b);
      return b.name() + "[" + d_->generator + "]/(" + ring.to_string(Poly{d_->minpoly}, d_->generator) + ")";
    }
  }
  return "?";
}

Elem Field::zero() const {
  Elem e;
  if (d_->kind == FieldKind::SimpleExtension) e.c.assign(degree(), base().zero());
  return e;
}

Elem Field::one() const { return from_int(1); }

Elem Field::from_int(long v) const {
  Elem e;
  switch (d_->kind) {
    case FieldKind::Rationals:
      e.q = v;
      break;
    case FieldKind::PrimeField:
      e.r = mod_p(v, d_->p);
      break;
    case FieldKind::SimpleExtension: {
      Field b = base();
      e.c.assign(degree(), b.zero());
      e.c[0] = b.from_int(v);
      break;
    }
  }
  return e;
}

Elem Field::from_integer(const Integer& v) const {
  switch (d_->kind) {
    case FieldKind::Rationals: {
      Elem e;
      e.q = v;
      return e;
    }
    case FieldKind::PrimeField: {
      Integer m = v % Integer(d_->p);
      if (m < 0) m += d_->p;
      Elem e;
      e.r = m.get_si();
      return e;
    }
    case FieldKind::SimpleExtension:
      return embed(base().from_integer(v));
  }
  return zero();
}

Elem Field::from_rational(const Rational& v) const {
  if (d_->kind == FieldKind::Rationals) {
    Elem e;
    e.q = v;
    return e;
  }
  return div(from_integer(v.get_num()), from_integer(v.get_den()));
}

Elem Field::generator() const {
  if (d_->kind != FieldKind::SimpleExtension) throw std::logic_error("generator() on a prime field");
  Elem e = zero();
  e.c[1] = base().one();
  return e;
}

Elem Field::embed(const Elem& base_elem) const {
  if (d_->kind != FieldKind::SimpleExtension) return base_elem;
  Elem e = zero();
  e.c[0] = base_elem;
  return e;
}

Elem Field::from_coefficients(std::vector<Elem> coeffs) const {
  if (d_->kind != FieldKind::SimpleExtension) throw std::logic_error("from_coefficients on a prime field");
  Field b = base();
  PolyRing ring(b);
  Poly p = ring.rem(ring.make(std::move(coeffs)), Poly{d_->minpoly});
  Elem e = zero();
  for (std::size_t i = 0; i < p.c.size(); ++i) e.c[i] = p.c[i];
  return e;
}

Elem Field::add(const Elem& a, const Elem& b) const {
  Elem e = a;
  add_to(e, b);
  return e;
}

void Field::add_to(Elem& acc, const Elem& b) const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      acc.q += b.q;
      return;
    case FieldKind::PrimeField:
      acc.r += b.r;
      if (acc.r >= d_->p) acc.r -= d_->p;
      return;
    case FieldKind::SimpleExtension: {
      Field bf = base();
      for (std::size_t i = 0; i < acc.c.size(); ++i) bf.add_to(acc.c[i], b.c[i]);
      return;
    }
  }
}

void Field::add_mul(Elem& acc, const Elem& a, const Elem& b) const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      if (sgn(a.q) == 0 || sgn(b.q) == 0) return;
      acc.q += a.q * b.q;
      return;
    case FieldKind::PrimeField:
      acc.r = static_cast<std::int64_t>((static_cast<__int128>(a.r) * b.r + acc.r) % d_->p);
      return;
    case FieldKind::SimpleExtension:
      add_to(acc, mul(a, b));
      return;
  }
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::neg(const Elem& a) const {
  Elem e;
  switch (d_->kind) {
    case FieldKind::Rationals:
      e.q = -a.q;
      break;
    case FieldKind::PrimeField:
      e.r = a.r == 0 ? 0 : d_->p - a.r;
      break;
    case FieldKind::SimpleExtension: {
      Field b = base();
      e.c.reserve(a.c.size());
      for (const auto& x : a.c) e.c.push_back(b.neg(x));
      break;
    }
  }
  return e;
}

Elem Field::mul(const Elem& a, const Elem& b) const {
  Elem e;
  switch (d_->kind) {
    case FieldKind::Rationals:
      e.q = a.q * b.q;
      break;
    case FieldKind::PrimeField:
      e.r = static_cast<std::int64_t>(static_cast<__int128>(a.r) * b.r % d_->p);
      break;
    case FieldKind::SimpleExtension: {
      Field bf = base();
      const int n = degree();
      std::vector<Elem> prod(2 * n - 1, bf.zero());
      for (int i = 0; i < n; ++i) {
        if (bf.is_zero(a.c[i])) continue;
        for (int j = 0; j < n; ++j) bf.add_mul(prod[i + j], a.c[i], b.c[j]);
      }
      // reduce with the monic minimal polynomial: t^n = -sum m_i t^i
      const auto& m = d_->minpoly;
      for (int k = 2 * n - 2; k >= n; --k) {
        if (bf.is_zero(prod[k])) continue;
        Elem lead = prod[k];
        for (int i = 0; i < n; ++i) prod[k - n + i] = bf.sub(prod[k - n + i], bf.mul(lead, m[i]));
        prod[k] = bf.zero();
      }
      prod.resize(n);
      e.c = std::move(prod);
      break;
    }
  }
  return e;
}

Elem Field::inv(const Elem& a) const {
  switch (d_->kind) {
    case FieldKind::Rationals: {
      if (sgn(a.q) == 0) throw ArithmeticError("division by zero in Q");
      Elem e;
      e.q = 1 / a.q;
      return e;
    }
    case FieldKind::PrimeField: {
      if (a.r == 0) throw ArithmeticError("division by zero in GF(" + std::to_string(d_->p) + ")");
      Elem e;
      e.r = inv_mod(a.r, d_->p);
      return e;
    }
    case FieldKind::SimpleExtension: {
      if (is_zero(a)) throw ArithmeticError("division by zero in " + name());
      Field b = base();
      PolyRing ring(b);
      auto [g, s, t] = ring.xgcd(ring.make(a.c), Poly{d_->minpoly});
      if (g.degree() != 0)
        throw ArithmeticError("inversion failed in " + name() + ": minimal polynomial is reducible (common factor " +
                              ring.to_string(g, d_->generator) + ")");
      return from_coefficients(s.c);
    }
  }
  return zero();
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

bool Field::is_zero(const Elem& a) const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      return sgn(a.q) == 0;
    case FieldKind::PrimeField:
      return a.r == 0;
    case FieldKind::SimpleExtension: {
      Field b = base();
      for (const auto& x : a.c)
        if (!b.is_zero(x)) return false;
      return true;
    }
  }
  return true;
}

bool Field::equal(const Elem& a, const Elem& b) const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      return a.q == b.q;
    case FieldKind::PrimeField:
      return a.r == b.r;
    case FieldKind::SimpleExtension: {
      Field bf = base();
      for (std::size_t i = 0; i < a.c.size(); ++i)
        if (!bf.equal(a.c[i], b.c[i])) return false;
      return true;
    }
  }
  return false;
}

bool Field::in_base(const Elem& a) const {
  if (d_->kind != FieldKind::SimpleExtension) return true;
  Field b = base();
  for (std::size_t i = 1; i < a.c.size(); ++i)
    if (!b.is_zero(a.c[i])) return false;
  return true;
}

Elem Field::element_at(std::uint64_t index) const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      return grid_element(index);
    case FieldKind::PrimeField: {
      Elem e;
      e.r = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(d_->p));
      return e;
    }
    case FieldKind::SimpleExtension: {
      Field b = base();
      auto bs = b.size();
      if (!bs) throw std::logic_error("element_at on an infinite extension");
      Elem e = zero();
      for (int i = 0; i < degree(); ++i) {
        e.c[i] = b.element_at(index % *bs);
        index /= *bs;
      }
      return e;
    }
  }
  return zero();
}

Elem Field::grid_element(std::uint64_t index) const {
  if (d_->kind == FieldKind::Rationals) {
    long v = static_cast<long>((index + 1) / 2);
    return from_int(index % 2 == 1 ? v : -v);
  }
  auto s = size();
  if (!s) return embed(base().grid_element(index));
  return element_at(index % *s);
}

std::string Field::to_string(const Elem& a) const {
  switch (d_->kind) {
    case FieldKind::Rationals:
      return a.q.get_str();
    case FieldKind::PrimeField:
      return std::to_string(a.r);
    case FieldKind::SimpleExtension: {
      PolyRing ring(base());
      return ring.to_string(ring.make(a.c), d_->generator);
    }
  }
  return "?";
}

}  // namespace homascend
