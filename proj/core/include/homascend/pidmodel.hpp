#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homascend/facts.hpp"
#include "homascend/snf.hpp"

namespace homascend {

/// R = k[x] localised at (x); S = k[[x]], modelled by invariants only.
enum class Side { OverR, OverS };

/// Finitely generated module over a discrete valuation ring:
/// free rank plus sorted torsion exponents.
struct PIDModule {
  std::size_t free_rank = 0;
  std::vector<int> exponents;  // ascending, all positive
  Side side = Side::OverR;

  static PIDModule make(std::size_t a, std::vector<int> e, Side side = Side::OverR);
  bool is_torsion() const { return free_rank == 0; }
  bool is_zero() const { return free_rank == 0 && exponents.empty(); }
  std::size_t num_summands() const { return free_rank + exponents.size(); }
  std::string to_string() const;
  friend bool operator==(const PIDModule& a, const PIDModule& b) {
    return a.free_rank == b.free_rank && a.exponents == b.exponents && a.side == b.side;
  }
};
PIDModule direct_sum(const PIDModule& a, const PIDModule& b);

/// Cokernel of the relations: rows are relations, columns generators.
struct PIDPresentation {
  std::size_t generators = 0;
  PolyMat relations;
};
PIDModule classify(const PIDPresentation& p, Side side = Side::OverR);

struct PidAscentReport {
  bool compatible = false;         // (1) finite length
  bool iota_bijective = false;     // (2)
  bool tensor_fg = false;          // (4) S (x) M finitely generated over R
  bool ext_vanishing = false;      // Ext^i_R(S, M) = 0 for i >= 1, not computed
  std::string ext_provenance = "asserted-by-theorem";
  PIDModule base_changed;
  Facts facts() const;
};
/// Requires side OverR; throws std::logic_error if (1), (2), (4) disagree.
PidAscentReport completion_ascent(const PIDModule& m);

struct Thm113Report {
  bool decision = false;
  std::vector<std::string> min_primes;
  std::vector<bool> condition_holds;  // per prime in min_primes
};
Thm113Report thm113_decision(const PIDModule& m);

struct PidExt {
  PIDModule module;
  std::string note;
};
/// Ext^i over the common side; i >= 2 returns zero with a note.
PidExt ext_pid(const PIDModule& m, const PIDModule& n, int i);

/// Invariants of S (x)_R M.
PIDModule base_change_pid(const PIDModule& m);
/// R-module M with S (x)_R M matching N; throws std::invalid_argument unless N is over S.
PIDModule extend_pid(const PIDModule& n);

struct Prop32PidReport {
  std::size_t ext1_length = 0;  // length of Ext^1(M2, M1)
  PIDModule middle_r, middle_s, descended;
  bool extended = false;
};
/// m1 cyclic (free of rank 1 or R/(x^a)), m2 = R/(x^b); the class is
/// x^c times a generator of Ext^1(m2, m1), c in [0, ext1_length].
Prop32PidReport prop32_case1_pid(const PIDModule& m1, const PIDModule& m2, int c);

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of N = S^a (+) S/(x^e_1) (+) ...; free components must be
/// polynomials, torsion components are read modulo x^e_j.
struct PidElement {
  std::vector<Poly> free_part;
  std::vector<Poly> torsion_part;
};
struct VmaxPidReport {
  PIDModule v;
  std::size_t k_dim = 0;
  int precision = 0;
};
/// V(M) for M = R-span of the generators inside N (over S). Escalates the
/// truncation precision until two consecutive answers agree; throws
/// PrecisionError past max_precision.
VmaxPidReport vmax_pid(const Field& f, const PIDModule& n, const std::vector<PidElement>& gens,
                       int max_precision = 64);

/// Ext^i_R(R/(x), R) for i = 0, 1, 2.
Facts gallery_2_10();

}  // namespace homascend
