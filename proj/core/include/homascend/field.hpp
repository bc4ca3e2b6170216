#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace homascend {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised for division by zero, and for inversion failures in a simple
/// extension (which expose a reducible minimal polynomial).
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field element. The active representation depends on the owning field:
/// a rational for Q, a residue in [0, p) for GF(p), or a coefficient vector
/// of length deg(minpoly) over the base field for a simple extension.
struct Elem {
  Rational q;
  std::int64_t r = 0;
  std::vector<Elem> c;
};

enum class FieldKind { Rationals, PrimeField, SimpleExtension };

class Field;

struct FieldDesc {
  FieldKind kind = FieldKind::Rationals;
  std::int64_t p = 0;                  // prime for PrimeField, else characteristic
  std::shared_ptr<const FieldDesc> base;  // SimpleExtension only
  std::vector<Elem> minpoly;           // monic, low-to-high, over base
  std::string generator = "t";         // printing name of the adjoined root
  bool irreducibility_verified = false;
};

/// Exact field handle. Cheap to copy; all arithmetic goes through it.
class Field {
 public:
  Field();  // the rationals
  explicit Field(std::shared_ptr<const FieldDesc> desc) : d_(std::move(desc)) {}

  static Field rationals();
  static Field prime(std::int64_t p);
  /// Adjoin a root of `minpoly` (monic after normalisation, degree >= 2).
  /// Degree <= 3 is checked by exhaustive root search for bases where that is
  /// possible (Q and finite fields); otherwise irreducibility is trusted.
  static Field extension(const Field& base, std::vector<Elem> minpoly, std::string generator = "t");

  FieldKind kind() const { return d_->kind; }
  std::int64_t characteristic() const;
  /// Degree over the prime field.
  int absolute_degree() const;
  /// Degree over the immediate base (1 for prime fields).
  int degree() const;
  Field base() const;
  const std::vector<Elem>& minpoly() const { return d_->minpoly; }
  const std::string& generator_name() const { return d_->generator; }
  bool irreducibility_verified() const { return d_->irreducibility_verified; }
  bool is_finite() const { return characteristic() != 0; }
  /// Number of elements, if finite and representable.
  std::optional<std::uint64_t> size() const;

  bool same(const Field& other) const;
  const FieldDesc* desc() const { return d_.get(); }
  std::string name() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(long v) const;
  Elem from_integer(const Integer& v) const;
  Elem from_rational(const Rational& v) const;
  /// The adjoined root t of a simple extension.
  Elem generator() const;
  /// Embed an element of the base field.
  Elem embed(const Elem& base_elem) const;
  /// Coefficient vector over the base field of an extension element.
  const std::vector<Elem>& coefficients(const Elem& a) const { return a.c; }
  Elem from_coefficients(std::vector<Elem> coeffs) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  void add_to(Elem& acc, const Elem& b) const;
  /// acc += a * b
  void add_mul(Elem& acc, const Elem& a, const Elem& b) const;

  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const { return equal(a, one()); }
  bool equal(const Elem& a, const Elem& b) const;
  /// True when the element lies in the base field (extension) or always.
  bool in_base(const Elem& a) const;

  /// Enumeration of a finite field (index < size()).
  Elem element_at(std::uint64_t index) const;
  /// Deterministic "small" element used for evaluation grids: distinct for
  /// distinct indices as long as index < size() (finite) or always (Q).
  Elem grid_element(std::uint64_t index) const;

  std::string to_string(const Elem& a) const;

 private:
  std::shared_ptr<const FieldDesc> d_;
};

}  // namespace homascend
