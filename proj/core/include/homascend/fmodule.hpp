#pragma once

#include <memory>
#include <mutex>

#include <cstdint>
#include <optional>
#include <vector>

#include "homascend/algebra.hpp"
#include "homascend/cancel.hpp"

namespace homascend {

/// Finite-dimensional module over a LocalAlgebra, stored by the action of
/// every algebra basis element.
class FModule {
 public:
  FModule() = default;
  /// Validates unit, multiplicativity and commutativity of the actions.
  FModule(Algebra a, std::vector<Mat> actions);

  static FModule zero(Algebra a);
  /// A^n.
  static FModule free(Algebra a, std::size_t n);
  /// The residue field A/m.
  static FModule residue(Algebra a);
  /// A^n modulo the submodule generated by the given elements of A^n.
  /// Element g of A^n is a vector of length n * dim(A), block j = component j.
  static FModule presented(Algebra a, std::size_t n, const std::vector<Vec>& relations);
  /// A/I with I generated by the given elements.
  static FModule cyclic(Algebra a, const std::vector<Vec>& ideal_gens);

  const Algebra& algebra() const { return a_; }
  const Field& field() const { return a_->field(); }
  std::size_t dim() const { return dim_; }
  const Mat& action(std::size_t i) const { return act_[i]; }
  const std::vector<Mat>& actions() const { return act_; }
  /// Action of an arbitrary algebra element.
  Mat act(const Vec& a) const;
  /// Closure of the span of the columns of `vs` under the action.
  Mat generated(const Mat& vs) const;
  /// Basis of m * M.
  Mat radical_image() const;
  /// Basis of m * W for a submodule W (columns).
  Mat radical_image(const Mat& w) const;
  bool is_submodule(const Mat& w) const;

 private:
  Algebra a_;
  std::size_t dim_ = 0;
  std::vector<Mat> act_;
};

struct SubModule {
  FModule module;
  Mat inclusion;  // dim(M) x dim(W)
};
struct QuotientModule {
  FModule module;
  Quotient q;  // proj: M -> M/W, lift a k-linear section
};

/// W must be a submodule (columns span an action-stable subspace).
SubModule submodule(const FModule& m, const Mat& w);
QuotientModule quotient_module(const FModule& m, const Mat& w);
FModule direct_sum(const FModule& a, const FModule& b);
FModule direct_sum(const std::vector<FModule>& parts, const Algebra& a);
FModule power(const FModule& m, std::size_t r);
/// Module with basis changed by an invertible matrix p (new coords = p^-1 old).
FModule change_basis(const FModule& m, const Mat& p);

bool is_homomorphism(const FModule& m, const FModule& n, const Mat& f);

struct HomSpace {
  FModule source, target;
  std::vector<Mat> basis;  // each dim(target) x dim(source)
  std::size_t dim() const { return basis.size(); }
  /// Map sum c_i basis_i.
  Mat combine(const std::vector<Elem>& c) const;
  /// Coordinates of a homomorphism in `basis`; nullopt if not in the span.
  std::optional<std::vector<Elem>> coordinates(const Mat& f) const;
  /// Hom as a module over the algebra via post-composition.
  FModule as_module() const;

  struct Solver {
    std::once_flag once;
    std::vector<std::size_t> rows;  // entries of vec(f) that determine the coordinates
    Mat inv;                        // inverse of the basis restricted to `rows`
  };
  /// Built on first use of coordinates(); copies share it.
  std::shared_ptr<Solver> solver = std::make_shared<Solver>();
};

/// Maps commuting with the actions of the algebra generators.
HomSpace hom_space(const FModule& m, const FModule& n);
/// Hom over the source of phi, for modules over its target.
HomSpace hom_space_over(const AlgebraMap& phi, const FModule& m, const FModule& n);
/// Solution space of f * x_i = y_i * f for families of matrices.
std::vector<Mat> intertwiners(const std::vector<Mat>& xs, const std::vector<Mat>& ys);

struct BaseChange {
  FModule module;  // S (x)_R M over S
  Mat iota;        // M -> S (x)_R M, x -> 1 (x) x
  Quotient q;      // S (x)_k M -> S (x)_R M
  /// Image of s (x) x.
  Vec pure_tensor(const Vec& s, const Vec& x) const;
};
BaseChange base_change(const AlgebraMap& phi, const FModule& m);
/// Restriction of scalars along phi.
FModule restrict(const AlgebraMap& phi, const FModule& n);

struct Resolution {
  FModule module;
  std::vector<std::size_t> betti;  // beta_0..beta_L
  Mat augmentation;                // F_0 -> M
  std::vector<Mat> d;              // d[n-1] : F_n -> F_{n-1}, n = 1..L
  /// Element of A in position (row block h, generator g) of d_n.
  Vec entry(std::size_t n, std::size_t h, std::size_t g) const;
  std::size_t length() const { return betti.empty() ? 0 : betti.size() - 1; }
};
/// Minimal generators (columns, in ambient coordinates) of a submodule W.
Mat minimal_generators(const FModule& ambient, const Mat& w);
Resolution minimal_resolution(const FModule& m, std::size_t length, const CancelToken& tok = {});

struct ExtResult {
  std::size_t dim = 0;
  std::vector<Mat> cocycles;  // dim(N) x beta_i, column g = image of generator g
};
ExtResult ext_from(const Resolution& res, const FModule& n, std::size_t i);
ExtResult ext(const FModule& m, const FModule& n, std::size_t i, const CancelToken& tok = {});

struct AnnSupp {
  Mat annihilator;  // basis in algebra coordinates
  bool in_support = false;
};
AnnSupp ann_supp(const FModule& m);
/// M, mM, m^2 M, ..., 0 as column bases.
std::vector<Mat> radical_filtration(const FModule& m);

struct IsoResult {
  bool isomorphic = false;
  bool certified = false;  // false when search was randomized and found nothing
  std::optional<Mat> witness;
};
IsoResult is_isomorphic(const FModule& m, const FModule& n, std::uint64_t seed = 0, const CancelToken& tok = {});

// decompose.cpp

struct Indecomposability {
  bool indecomposable = false;
  bool certified = false;
  std::optional<Mat> idempotent;  // nontrivial idempotent when decomposable
};
Indecomposability check_indecomposable(const FModule& m, std::uint64_t seed = 0, const CancelToken& tok = {});

struct Piece {
  FModule module;
  Mat inclusion;  // dim(M) x dim(piece)
  bool certified = false;
};
struct Decomposition {
  std::vector<Piece> pieces;
  /// hcat of inclusions: iso from the direct sum of pieces onto M.
  Mat iso() const;
  bool certified() const;
};
Decomposition krs_decompose(const FModule& m, std::uint64_t seed = 0, const CancelToken& tok = {});

/// Isomorphism invariants: dim, radical filtration dims, dim End, dim Ann.
std::vector<std::size_t> fingerprint(const FModule& m);

}  // namespace homascend
