#pragma once

// Independent reference computations for the test suites. Each one avoids
// the library routine it is used to check.

#include <optional>
#include <random>
#include <vector>

#include "homascend/ascent.hpp"
#include "homascend/complexes.hpp"
#include "homascend/extended.hpp"
#include "homascend/fmodule.hpp"
#include "homascend/pidmodel.hpp"
#include "homascend/snf.hpp"

namespace oracle {

using namespace homascend;
using Rng = std::mt19937_64;

Elem small(const Field& f, Rng& rng, long bound = 2);
Vec random_element(const Algebra& a, Rng& rng, bool in_radical);

/// A/(random radical elements), a quotient of a free module of rank <= 2, or
/// a submodule of one, kept at k-dimension <= max_dim.
FModule random_module(const Algebra& a, Rng& rng, std::size_t max_dim = 6);

/// Ext^i via dimension shifting on syzygies built from Hom-space counts:
/// Ext^1(M, N) = dim Hom(K, N) - dim Hom(F, N) + dim Hom(M, N).
std::size_t ext_dim_shift(const FModule& m, const FModule& n, std::size_t i);

/// Ext^i via the Hom complex of the truncated minimal resolution.
std::size_t ext_via_hom_complex(const FModule& m, const FModule& n, std::size_t i);

/// Jordan type (ascending block sizes) of a nilpotent matrix.
std::vector<int> jordan_type(const Mat& nil);

/// All extensions 0 -> k[x]/x^a -> E -> k[x]/x^b -> 0 over GF(2) as block
/// matrices [[J_a, C], [0, J_b]]. For the class x^c * generator, the Jordan
/// types of E reached by C with that class; `length` is dim Ext^1.
struct ExtensionCensus {
  std::size_t length = 0;
  std::vector<std::vector<std::vector<int>>> middles;  // per c, distinct types
};
ExtensionCensus nilpotent_extensions(int a, int b);

/// Searches R-modules of dimension dim(N)/rank whose X, Y actions have
/// entries in `grid`, returning one with S (x) M isomorphic to N.
std::optional<FModule> ex37_grid_search(const Example37& ex, const FModule& n, const std::vector<long>& grid);

/// x-adic valuation of the gcd of all k x k minors, or -1 when all vanish.
int determinantal_valuation(const PolyMat& a, std::size_t k);

/// Largest S-stable subspace of M by iterated pruning.
Mat saturation(const AlgebraMap& phi, const FModule& n, const Mat& m);

/// I * M = 0 for I = ker(phi).
bool killed_by_kernel(const AlgebraMap& phi, const FModule& m);

}  // namespace oracle
