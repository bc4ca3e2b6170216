#pragma once

#include <map>
#include <vector>

#include "homascend/fmodule.hpp"

namespace homascend {

/// Chain complex X_lo .. X_hi with d_n : X_n -> X_{n-1}.
class BoundedComplex {
 public:
  BoundedComplex() = default;
  /// mods[i] sits in degree lo + i; diffs[i] is d_{lo+i+1} : X_{lo+i+1} -> X_{lo+i}.
  /// Validates d^2 = 0 and A-linearity.
  BoundedComplex(Algebra a, int lo, std::vector<FModule> mods, std::vector<Mat> diffs);
  static BoundedComplex concentrated(const FModule& m, int degree = 0);

  const Algebra& algebra() const { return a_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(mods_.size()) - 1; }
  /// Zero module outside [lo, hi].
  FModule at(int n) const;
  std::size_t dim(int n) const;
  /// d_n : X_n -> X_{n-1}, zero matrix of the right shape outside the range.
  Mat d(int n) const;
  bool is_degreewise_free() const;

 private:
  Algebra a_;
  int lo_ = 0;
  std::vector<FModule> mods_;
  std::vector<Mat> d_;
};

/// Chain map source -> target; f_n : X_n -> Y_n.
class ComplexMorphism {
 public:
  ComplexMorphism() = default;
  /// Validates the chain condition and A-linearity; missing degrees are zero.
  ComplexMorphism(BoundedComplex source, BoundedComplex target, std::map<int, Mat> comps);
  static ComplexMorphism identity(const BoundedComplex& x);

  const BoundedComplex& source() const { return src_; }
  const BoundedComplex& target() const { return tgt_; }
  Mat at(int n) const;

 private:
  BoundedComplex src_, tgt_;
  std::map<int, Mat> f_;
};

struct Homology {
  FModule module;
  Mat cycles;  // basis of Ker d_n in X_n
  Quotient q;  // cycle coordinates -> H_n
  /// Class of a cycle given in X_n coordinates.
  Mat class_of(const Mat& z) const;
  /// A cycle representing basis class j.
  Mat representative(std::size_t j) const;
};
Homology homology(const BoundedComplex& x, int n);
/// H_n(alpha) as a dim H_n(Y) x dim H_n(X) matrix.
Mat induced_homology_map(const ComplexMorphism& alpha, int n);

struct HomComplex {
  struct Slot {
    int p;
    std::size_t offset;
    HomSpace h;  // Hom(X_p, Y_{p+n})
  };
  BoundedComplex complex;
  std::map<int, std::vector<Slot>> slots;
  /// Components {f_p} of a Hom_n element given in coordinates.
  std::map<int, Mat> components(int n, const Mat& v) const;
  /// Coordinates of a family {f_p} in Hom_n.
  Mat coordinates(int n, const std::map<int, Mat>& family) const;
};
/// Hom_n = prod_p Hom(X_p, Y_{p+n}); d{f_p} = {d^Y_{p+n} f_p - (-1)^n f_{p-1} d^X_p}.
HomComplex hom_complex(const BoundedComplex& x, const BoundedComplex& y);
/// Basis of chain maps X -> Y read off Ker d_0 of the Hom complex.
std::vector<ComplexMorphism> morphisms_via_hom(const BoundedComplex& x, const BoundedComplex& y);
/// Basis of chain maps X -> Y from a direct linear system on raw matrices.
std::vector<ComplexMorphism> morphisms_direct(const BoundedComplex& x, const BoundedComplex& y);
/// Hom(P, alpha) : Hom(P, X) -> Hom(P, Y) by post-composition.
ComplexMorphism hom_postcompose(const HomComplex& px, const HomComplex& py, const ComplexMorphism& alpha);

struct Tensored {
  FModule module;
  Quotient q;  // M (x)_k N -> M (x)_A N
};
/// M (x)_A N with the action on the left factor.
Tensored tensor_modules(const FModule& m, const FModule& n);
/// X (x)_A M degreewise.
BoundedComplex tensor_complex(const BoundedComplex& x, const FModule& m);

struct BaseChangedComplex {
  BoundedComplex complex;       // S (x)_R X over S
  std::vector<BaseChange> parts;  // per degree lo..hi
  /// omega : X -> S (x)_R X as a chain map of R-complexes (target restricted).
  ComplexMorphism omega;
};
BaseChangedComplex tensor_complex(const AlgebraMap& phi, const BoundedComplex& x);
BoundedComplex restrict_complex(const AlgebraMap& phi, const BoundedComplex& y);

struct BaseChangeHomologyReport {
  struct Degree {
    int n;
    std::size_t dim_hx, dim_hsx, dim_s_tensor_hx;
    bool natural_map_bijective;
  };
  std::vector<Degree> degrees;
  bool all_bijective() const;
};
/// Checks the natural map S (x)_R H_n(X) -> H_n(S (x)_R X) in every degree.
BaseChangeHomologyReport base_change_homology(const AlgebraMap& phi, const BoundedComplex& x);

/// Koszul complex on the sequence; K_i has the lexicographic exterior basis.
BoundedComplex koszul(const Algebra& a, const std::vector<Vec>& xs);

/// Cone_n = X_{n-1} (+) Y_n, d(x, y) = (-dx, dy + f(x)).
BoundedComplex mapping_cone(const ComplexMorphism& alpha);
bool is_exact(const BoundedComplex& x);

struct QisReport {
  bool via_homology = false;
  bool via_cone = false;
  bool quasi_iso() const { return via_homology && via_cone; }
};
/// Both tests are always run; disagreement throws std::logic_error.
QisReport is_quasi_iso(const ComplexMorphism& alpha);

struct Prop24Report {
  bool hom_qis = false;    // Hom(P, alpha) is a quasi-isomorphism
  bool alpha_qis = false;  // alpha is a quasi-isomorphism
};
/// P must be degreewise free and not exact; throws InvariantError if
/// Hom(P, alpha) is a quasi-isomorphism while alpha is not.
Prop24Report prop24_harness(const ComplexMorphism& alpha, const BoundedComplex& p);

}  // namespace homascend
