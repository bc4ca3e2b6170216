#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homascend/field.hpp"
#include "homascend/linalg.hpp"

namespace homascend {

/// Raised when a constructed object violates one of its structural
/// invariants (non-associative constants, phi(1) != 1, d^2 != 0, ...).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinates of an algebra element (or module element) in a k-basis.
using Vec = std::vector<Elem>;

bool vec_equal(const Field& f, const Vec& a, const Vec& b);

/// Multivariate polynomial with coefficients in a field: a list of
/// (exponent vector, coefficient) terms.
struct MPoly {
  std::vector<std::pair<std::vector<int>, Elem>> terms;
};

class AlgebraMap;

/// Finite-dimensional commutative local algebra over a field k, stored by
/// structure constants. Basis element 0 is the identity.
class LocalAlgebra {
 public:
  /// k[x_1..x_n] / (relations + (x_1..x_n)^trunc).
  static std::shared_ptr<const LocalAlgebra> from_presentation(const Field& f, std::vector<std::string> vars,
                                                               const std::vector<MPoly>& relations, int trunc);
  /// General constructor from left multiplication matrices (left[i] is
  /// multiplication by basis element i) and a basis of the radical.
  /// `residue_degree` is dim_k(A/m); for residue degree 1 locality is
  /// verified, larger values are trusted from the caller.
  static std::shared_ptr<const LocalAlgebra> from_structure(const Field& f, std::vector<std::string> labels,
                                                            std::vector<Mat> left, Mat radical, int residue_degree,
                                                            std::vector<std::pair<std::string, Vec>> named = {});

  const Field& field() const { return f_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Left multiplication by basis element i.
  const Mat& left(std::size_t i) const { return left_[i]; }
  /// Left multiplication by an arbitrary element.
  Mat left_of(const Vec& a) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec scale(const Vec& a, const Elem& s) const;
  Vec unit() const { return basis_vector(0); }
  Vec zero() const { return Vec(dim(), f_.zero()); }
  Vec basis_vector(std::size_t i) const;
  Vec from_scalar(const Elem& s) const;
  bool is_zero(const Vec& a) const;

  /// Columns form a k-basis of the maximal ideal.
  const Mat& radical() const { return radical_; }
  /// Least N with m^N = 0.
  int nilpotency() const { return nilpotency_; }
  int residue_degree() const { return residue_degree_; }
  /// Elements generating A as a k-algebra (greedy over the basis).
  const std::vector<Vec>& generators() const { return generators_; }
  /// Named elements (presentation variables, adjoined field generators).
  const std::vector<std::pair<std::string, Vec>>& named() const { return named_; }
  std::optional<Vec> named_element(const std::string& name) const;
  /// Variables of the presentation, if built by from_presentation.
  const std::vector<std::string>& variables() const { return vars_; }

  /// Basis of m^t.
  Mat radical_power(int t) const;
  /// Basis of the ideal generated by the given elements.
  Mat ideal(const std::vector<Vec>& gens) const;
  std::string element_to_string(const Vec& a) const;

 private:
  friend std::pair<std::shared_ptr<const LocalAlgebra>, AlgebraMap> algebra_tensor_extension(
      const Field& ext, const std::shared_ptr<const LocalAlgebra>& a);
  LocalAlgebra() = default;
  void finalize();

  Field f_;
  std::vector<std::string> labels_;
  std::vector<Mat> left_;
  Mat radical_;
  int nilpotency_ = 1;
  int residue_degree_ = 1;
  std::vector<Vec> generators_;
  std::vector<std::pair<std::string, Vec>> named_;
  std::vector<std::string> vars_;
};

using Algebra = std::shared_ptr<const LocalAlgebra>;

/// Local homomorphism of algebras over the same field, stored by the images
/// of all source basis vectors (columns).
class AlgebraMap {
 public:
  AlgebraMap() = default;
  /// Validates unit, multiplicativity and locality; throws InvariantError.
  AlgebraMap(Algebra source, Algebra target, Mat matrix);

  /// Map determined by images of elements that generate the source as a
  /// k-algebra; fails when no consistent multiplicative map exists.
  static AlgebraMap from_images(Algebra source, Algebra target, const std::vector<std::pair<Vec, Vec>>& images);
  /// Map sending each presentation variable of `source` to the equally named
  /// element of `target`.
  static AlgebraMap by_names(Algebra source, Algebra target);
  static AlgebraMap identity(Algebra a);

  const Algebra& source() const { return src_; }
  const Algebra& target() const { return tgt_; }
  const Mat& matrix() const { return m_; }
  Vec apply(const Vec& a) const;

  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }
  /// Basis (in the source) of the kernel.
  Mat kernel_basis() const;

 private:
  Algebra src_, tgt_;
  Mat m_;
};

AlgebraMap compose(const AlgebraMap& second, const AlgebraMap& first);

/// K (x)_k A as a k-algebra, with the inclusion a -> 1 (x) a. Basis index is
/// a * dim(A) + i for t^a (x) b_i.
std::pair<Algebra, AlgebraMap> algebra_tensor_extension(const Field& ext, const Algebra& a);

struct DaggerReport {
  bool ms_equals_n = false;
  bool residue_iso = false;
  bool dagger() const { return ms_equals_n && residue_iso; }
};

/// Basis of span(phi(m_R) * S).
Mat extended_ideal(const AlgebraMap& phi);
DaggerReport check_dagger(const AlgebraMap& phi);

struct FlatnessReport {
  bool flat = false;
  std::size_t rank = 0;        // number of minimal generators of S over R
  std::vector<Vec> basis;      // free basis when flat
};
/// Module-finite maps over Artinian local rings: flat iff free.
FlatnessReport is_flat(const AlgebraMap& phi);

/// For each target basis element s, an r with phi(r) - s in n^t. Throws if
/// some s has no such r.
std::vector<Vec> residue_lift_witness(const AlgebraMap& phi, int t);

}  // namespace homascend
