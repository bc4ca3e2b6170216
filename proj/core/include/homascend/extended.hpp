#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homascend/fmodule.hpp"

namespace homascend {

/// Module-finite flat local map R -> S with a chosen free basis of S over R.
struct FiniteExtension {
  AlgebraMap phi;
  std::vector<Vec> basis;
  std::size_t rank = 0;
  /// Throws std::invalid_argument unless phi is flat.
  static FiniteExtension make(const AlgebraMap& phi);
  const Algebra& source() const { return phi.source(); }
  const Algebra& target() const { return phi.target(); }
};

/// N with S (x)_R M -> N given by iso.
struct ExtendedWitness {
  FModule m;
  Mat iso;
};
/// Throws std::invalid_argument when iso is not an invertible S-linear map
/// S (x)_R M -> N.
void verify_witness(const FiniteExtension& e, const FModule& n, const ExtendedWitness& w);

struct ExtendedResult {
  std::optional<ExtendedWitness> witness;
  bool certified = true;  // false when some isomorphism test stayed undecided
  std::size_t candidates = 0;
  bool extended() const { return witness.has_value(); }
};
/// Candidates are the sub-multisets of the KRS pieces of restrict(N) with the
/// right dimension; this is complete because restrict(S (x) M) = M^rank.
ExtendedResult is_extended(const FiniteExtension& e, const FModule& n, std::uint64_t seed = 0,
                           const CancelToken& tok = {});

/// Isomorphism classes of indecomposable summands with multiplicities.
struct KrsClass {
  FModule rep;
  std::size_t count = 0;
};
struct KrsClasses {
  std::vector<KrsClass> classes;
  bool certified = true;
};
KrsClasses krs_classes(const FModule& m, std::uint64_t seed = 0, const CancelToken& tok = {});
/// Whether a is isomorphic to a direct summand of b (KRS multiset inclusion).
bool is_summand(const FModule& a, const FModule& b, std::uint64_t seed = 0, const CancelToken& tok = {});

/// Q in Q(i), R = Q[X,Y]/(X,Y)^2, S = Q(i) (x) R.
struct Example37 {
  Field base, ext;
  Algebra r, s;
  FiniteExtension e;
  Elem gaussian(long a, long b) const;  // a + b i in ext
  /// The element c of Q(i) inside S.
  Vec scalar(const Elem& c) const;
};
Example37 example37();
/// S/(X + cY).
FModule example37_module(const Example37& ex, const Elem& c);

struct MatrixEquiv {
  bool equivalent = false;
  // u (r + sX + tY) = X + cY when equivalent
  std::optional<Vec> u;
  std::optional<Elem> r, s, t;
};
/// Whether the 1x1 matrix X + cY over S is equivalent to one over R.
MatrixEquiv matrix_equiv_1x1(const Example37& ex, const Elem& c);

struct TwoOfThree {
  int derived = -1;  // 0: N1, 1: N2, 2: N1 (+) N2
  ExtendedWitness witness;
};
/// Exactly two of the witnesses must be given; the third is constructed.
/// Throws std::invalid_argument for bad witnesses and std::logic_error when
/// the construction fails.
TwoOfThree two_of_three_sum(const FiniteExtension& e, const FModule& n1, const FModule& n2,
                            const std::optional<ExtendedWitness>& w1, const std::optional<ExtendedWitness>& w2,
                            const std::optional<ExtendedWitness>& w12, std::uint64_t seed = 0);

struct LevelReport {
  std::vector<bool> levels;  // level t = 1..: M1/m^t M1 | M/m^t M
  bool divides = false;      // M1 | M
};
/// Throws std::logic_error if the top level disagrees with M1 | M.
LevelReport guralnick_levels(const FModule& m1, const FModule& m, int t, std::uint64_t seed = 0);

/// S (x)_R S with multiplication.
class TensorSquare {
 public:
  explicit TensorSquare(const FiniteExtension& e);
  const BaseChange& tensor() const { return bc_; }
  std::size_t dim() const { return bc_.q.dim(); }
  Vec pure(const Vec& a, const Vec& b) const;
  Vec mul(const Vec& x, const Vec& y) const;
  /// s (x) 1 - 1 (x) s acting on the left.
  Mat commutator(const Vec& s) const;
  /// a (x) b -> ab.
  Mat mu() const { return mu_; }
  /// Coefficients e_jk with x = sum e_jk b_j (x) b_k.
  Mat lifted(const Vec& x) const;

 private:
  Algebra s_;
  BaseChange bc_;
  Mat mu_;
};

struct SeparabilityIdempotent {
  Vec e;  // in S (x)_R S coordinates
  bool unique = false;
};
std::optional<SeparabilityIdempotent> separability_idempotent(const FiniteExtension& e);

struct SummandWitness {
  FModule m;        // restrict(N)
  BaseChange tensor;  // S (x)_R M
  Mat j, pi;        // N -> S (x)_R M -> N, pi j = id
};
/// Throws std::invalid_argument when the extension is not separable.
SummandWitness summand_of_extended(const FiniteExtension& e, const FModule& n);

struct Prop32Data {
  // case 1: class of Ext^1_S(S (x) M2, S (x) M1) in the basis computed here
  FModule m1, m2;
  std::vector<Elem> xi;
  // case 2: f : m -> m2; case 3: f : m1 -> m
  FModule m;
  Mat f;
};
struct Prop32Report {
  std::size_t ext_r_dim = 0, ext_s_dim = 0, beta_span_dim = 0;
  bool beta_iso = false;
  bool in_alpha_image = false;
  std::size_t obstruction_dim = 0;  // dim coker alpha
  std::optional<FModule> third_r;   // middle, kernel or cokernel over R
  FModule third_s;                  // the same over S
  bool extended = false;
};
/// case 1: middle of the extension xi; 2: kernel of S (x) f; 3: cokernel of S (x) f.
Prop32Report prop32_finite(const FiniteExtension& e, int which, const Prop32Data& data, std::uint64_t seed = 0);
/// Dimension of Ext^1_S(S (x) M2, S (x) M1) in the basis used by prop32_finite.
std::size_t prop32_ext_dim(const FiniteExtension& e, const FModule& m1, const FModule& m2);

}  // namespace homascend
