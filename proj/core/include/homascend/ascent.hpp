#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homascend/facts.hpp"
#include "homascend/fmodule.hpp"

namespace homascend {

/// Existence of an S-action on M extending the R-action through phi.
struct CompatibleStructure {
  std::optional<bool> exists;  // nullopt: undecided
  std::optional<FModule> structure;
  std::string method;
};
CompatibleStructure find_compatible_structure(const AlgebraMap& phi, const FModule& m, const CancelToken& tok = {});

/// S-module structure determined by actions of the algebra generators of S;
/// nullopt when the images do not define a module.
std::optional<FModule> module_from_generator_images(const Algebra& s, const std::vector<Mat>& images);

struct AscentReport {
  std::optional<bool> compatible;  // condition (1)
  bool iota_bijective = false;     // condition (2)
  bool epsilon_bijective = false;  // condition (3)
  bool tensor_fg = true;           // S (x)_R M finitely generated over R
  bool flat = false;
  std::vector<std::size_t> ext_dims;  // Ext^i_R(S, M), i = 0..L
  std::optional<FModule> structure;
  std::optional<Mat> iota_inverse;
  Facts facts() const;
};
/// Conditions computed independently, no hypothesis required.
AscentReport ascent_conditions(const AlgebraMap& phi, const FModule& m, std::size_t ext_range,
                               const CancelToken& tok = {});
/// Requires (dagger); throws InvariantError naming the failed clause
/// otherwise, and std::logic_error if (1), (2), (3) disagree.
AscentReport compatibility_report(const AlgebraMap& phi, const FModule& m, std::size_t ext_range,
                                  const CancelToken& tok = {});
/// Throws InvariantError naming the violated clause of (dagger).
void require_dagger(const AlgebraMap& phi);

/// S as an R-module through phi.
FModule target_as_source_module(const AlgebraMap& phi);
/// epsilon : Hom_R(S, M) -> M, f -> f(1), columns indexed by the Hom basis.
Mat evaluation_map(const HomSpace& hom);

struct VmaxReport {
  Mat definitional;  // {x : S x in M}
  Mat saturation;    // largest S-stable subspace of M
  Mat eps_image;     // image of Hom_R(S, M) -> N
  bool agree = false;
  const Mat& v() const { return definitional; }
};
/// n over S, m a basis of an R-stable subspace of n. Requires (dagger).
VmaxReport vmax(const AlgebraMap& phi, const FModule& n, const Mat& m);

struct Prop16Report {
  std::size_t dim_hom_v = 0, dim_hom_m = 0;
  bool equal = false;
};
Prop16Report prop16_check(const AlgebraMap& phi, const FModule& l, const FModule& n, const Mat& m);

enum class Verdict { Found, None, Undecided };
std::string to_string(Verdict v);

struct RetractResult {
  Verdict verdict = Verdict::Undecided;
  std::optional<AlgebraMap> psi;  // B -> A with psi * phi = id
  std::string method;
  std::size_t candidates_tried = 0;
};
/// Search bounds: finite fields with q^(dim A * generators) <= search_bound.
RetractResult ring_retract(const AlgebraMap& phi, std::uint64_t search_bound = 1u << 20, const CancelToken& tok = {});
/// psi(b) = b o 1_A for a compatible B-structure on A.
AlgebraMap retract_from_structure(const AlgebraMap& phi, const FModule& structure);
/// b o a = psi(b phi(a)).
FModule structure_from_retract(const AlgebraMap& phi, const AlgebraMap& psi);

struct ExactTriple {
  FModule sub, mid, quo;
  Mat f, g;  // sub -> mid -> quo
};
/// Verifies 0 -> sub -> mid -> quo -> 0 exact; throws std::invalid_argument otherwise.
void check_exact(const ExactTriple& t);
struct Lemma112Report {
  bool sub_compatible = false, mid_compatible = false, quo_compatible = false;
  bool holds = false;
};
/// Requires flat (dagger) phi; throws std::invalid_argument otherwise.
Lemma112Report lemma112_property(const AlgebraMap& phi, const ExactTriple& t);

struct Prop110Report {
  bool flat = false;
  std::size_t rank = 0;
  std::optional<Mat> retraction;  // R-linear pi : S -> R with pi * phi = id
  bool bijective = false;
};
/// Requires (dagger).
Prop110Report prop110_check(const AlgebraMap& phi);
/// For flat (dagger) phi and a faithful S-module n, phi must be bijective;
/// returns whether the instance satisfies the hypotheses.
bool thm19_check(const AlgebraMap& phi, const FModule& n);

// Gallery of counterexamples; each returns a flat fact record.
Facts gallery_2_8(std::size_t ext_range = 5);
Facts gallery_2_9(std::int64_t p = 2, int n = 2, std::size_t ext_range = 5);
Facts gallery_2_11(int n = 2, std::size_t ext_range = 5);

}  // namespace homascend
