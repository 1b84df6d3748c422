#pragma once

// Modular-data model: validation of (S, theta) pairs, Verlinde fusion rules,
// Frobenius-Perron dimensions and global invariants.
//
// Convention: the S-matrix is unnormalized, s(0, i) = d_i, so Deligne
// products are plain Kronecker products. Inputs are required to be
// pseudo-unitary (every d_i a positive real).

#include <optional>
#include <string>
#include <vector>

#include "modkit/cyclotomic.hpp"

namespace modkit {

enum class Vcode {
  BadShape,
  NotSymmetric,
  NotPseudoUnitary,
  TwistNotRootOfUnity,
  DualityFailure,
  VerlindeNonInteger,
  VerlindeNegative,
  FusionUnitFailure,
  FusionDualFailure,
  FusionCommFailure,
  FusionAssocFailure,
  NonConvergence,
  MismatchWithSDims,
  ModReductionOnNonInteger,
};
const char* vcode_name(Vcode c);

struct ValidationError : Error {
  ValidationError(Vcode c, const std::string& msg)
      : Error(std::string(vcode_name(c)) + ": " + msg), code(c) {}
  Vcode code;
};

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

// Fusion coefficients N_{ij}^k stored as matrices (N_i)(j,k) = N_{ij}^k.
class FusionRing {
 public:
  FusionRing() = default;
  FusionRing(std::vector<IntMatrix> mats, std::vector<int> dual);

  int rank() const { return static_cast<int>(mats_.size()); }
  Int coeff(int i, int j, int k) const { return mats_[i](j, k); }
  const IntMatrix& matrix(int i) const { return mats_[i]; }
  int dual(int i) const { return dual_[i]; }
  const std::vector<int>& dual_perm() const { return dual_; }

  // unit row, duality column, commutativity and associativity; throws
  void check_invariants() const;

 private:
  std::vector<IntMatrix> mats_;
  std::vector<int> dual_;
};

// parsed or constructed data, before validation
struct RawModularData {
  int rank = 0;
  int conductor = 1;  // file-level N: all entries in Q(zeta_N), theta_i^N = 1
  std::vector<std::string> labels;
  CycMatrix s;
  CycVector theta;
  std::string name, source;
};

struct ModularData {
  int rank = 0;
  int conductor = 1;
  std::vector<std::string> labels;
  CycMatrix s;
  CycVector theta;
  CycVector dims;    // d_i = s(0, i)
  Cyc global_dim2;   // D2 = sum of d_i^2
  std::vector<int> dual;
  std::vector<Int> theta_root;  // theta_i = zeta_M^j, M = lcm(2, conductor)
  FusionRing fusion;
  std::string name, source;

  int root_order() const { return conductor % 2 == 0 ? conductor : 2 * conductor; }
  Int theta_order(int i) const;
  bool is_invertible(int i) const { return dims(i) == Cyc(1); }
};

// checks all modular-data invariants exactly and derives fusion/dims/duals
ModularData validate(const RawModularData& raw);

// N_{ij}^k = (1/D2) sum_a s_{ia} s_{ja} conj(s_{ka}) / d_a, exact
FusionRing verlinde(const CycMatrix& s, const Cyc& d2, const CycVector& dims,
                    const std::vector<int>& dual, int conductor);

// ribbon identity s_{ij} = theta_i^-1 theta_j^-1 sum_k N_{i*j}^k theta_k d_k
bool balancing_check(const ModularData& md);

struct GlobalInvariants {
  Cyc fpdim;
  std::optional<Int> fpdim_mod4;  // set only for weakly integral data
  bool integral = false;
  bool weakly_integral = false;
  int self_dual_count = 0;
};
GlobalInvariants global_invariants(const ModularData& md);
Int fpdim_mod(const GlobalInvariants& gi, Int modulus);  // ModReductionOnNonInteger

// Perron eigenvector of sum_i N_i by power iteration, fp[0] = 1
Eigen::VectorXd fp_dims(const FusionRing& fusion);

struct FpDimsReport {
  Eigen::VectorXd fp;
  bool integral_certified = false;   // exact integer eigen-equations hold
  std::vector<Int> integer_dims;     // set when certified
};
// cross-checks power-iteration dims against the s-matrix row; throws
// MismatchWithSDims when they disagree beyond the embedding tolerance
FpDimsReport fp_dims_certified(const ModularData& md);

}  // namespace modkit
