#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// Values are stored as sparse polynomials in zeta_N over Q, reduced modulo
// the N-th cyclotomic polynomial Phi_N, so the representation is canonical:
// two values are equal iff, after lifting to the least common conductor,
// their reduced coefficient lists coincide.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

namespace modkit {

using Rat = mpq_class;
using Int = long long;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct NotAnInteger : Error {
  using Error::Error;
};

// q mod 1, result in [0, 1)
Rat rat_mod1(const Rat& q);
// n/d in lowest terms
Rat make_rat(Int n, Int d);

// Float-embedding tolerance used by positivity/convergence guards only.
// Never used in exact equality tests. Overridable via MODKIT_TOLERANCE.
double embed_tolerance();
void set_embed_tolerance(double tol);

Int gcd_ll(Int a, Int b);
Int lcm_ll(Int a, Int b);

// Per-conductor data: Phi_N, reduction rows for powers above the basis,
// the set of roots of unity contained in Q(zeta_N), and float embeddings.
// Built once and cached; immutable afterwards, safe to share across threads.
struct ConductorTable {
  int n = 1;    // conductor
  int deg = 1;  // phi(n), size of the power basis
  // x^k mod Phi_n for k in [deg, limit), as sparse integer rows
  int limit = 0;
  std::vector<std::vector<std::pair<int, Int>>> rows;
  Int max_row_l1 = 1;  // max L1 norm over rows (engine overflow bounds)

  // roots of unity: all of them in Q(zeta_n) form the cyclic group of
  // order M = lcm(2, n); roots[j] is zeta_M^j reduced to the power basis
  int root_order = 2;
  std::vector<std::vector<std::pair<int, Int>>> roots;

  std::vector<std::complex<double>> zeta_pow;  // zeta_n^k, k < deg

  const std::vector<std::pair<int, Int>>& row(int k) const { return rows[k - deg]; }
};

std::shared_ptr<const ConductorTable> conductor_table(int n);

class Cyc {
 public:
  Cyc() : n_(1) {}
  Cyc(Int v);
  Cyc(const Rat& v);
  // zeta_n^k (k reduced mod n)
  static Cyc zeta(int n, Int k = 1);
  // sum of coeffs[k] * zeta_n^k over the raw power basis (any length)
  static Cyc from_powers(int n, const std::vector<std::pair<Int, Rat>>& powers);

  int conductor() const { return n_; }
  // reduced sparse form: (exponent, coefficient), exponents ascending < phi(n)
  const std::vector<std::pair<int, Rat>>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  std::optional<Rat> as_rational() const;
  // exact; throws NotAnInteger unless the reduced form is an integer rational
  Int as_integer() const;
  std::optional<Int> as_integer_opt() const;

  Cyc conj() const;          // zeta -> zeta^(n-1)
  Cyc galois(Int a) const;   // zeta -> zeta^a, gcd(a, n) must be 1
  Cyc inv() const;           // throws DivisionByZero on 0
  Cyc pow(Int e) const;

  bool is_real() const;           // exact: *this == conj()
  bool is_positive_real() const;  // exact reality + float embedding above tolerance
  std::complex<double> embed() const;

  // index j with *this == zeta_M^j for M = lcm(2, conductor), viewing the
  // value inside Q(zeta_conductor); nullopt if not a root of unity there
  std::optional<Int> root_of_unity_index(int conductor) const;

  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  Cyc operator-() const;
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  std::string to_string() const;  // debug form, z = zeta_conductor

 private:
  int n_;
  std::vector<std::pair<int, Rat>> terms_;
  std::shared_ptr<const ConductorTable> tab_;  // null for conductor 1

  const ConductorTable& table() const;
  // drop zero coefficients; rational values collapse to conductor 1
  void normalize();
  std::vector<std::pair<int, Rat>> lifted_terms(int to_conductor) const;
  friend Cyc lift_to(const Cyc& v, int n);
};

Cyc lift_to(const Cyc& v, int n);

// ---- cyclotomic literal grammar (wire format for matrix entries) ----
//   expr     := term (('+'|'-') term)*
//   term     := rational ('*' zpow)? | zpow
//   zpow     := 'z' ('^' integer)?
//   rational := integer ('/' positive-integer)?
// 'z' denotes zeta_N for the file-level conductor N; whitespace insignificant.
struct LiteralError : Error {
  LiteralError(const std::string& msg, std::size_t pos) : Error(msg), position(pos) {}
  std::size_t position;
};
Cyc parse_cyc_literal(std::string_view text, int conductor);
// deterministic inverse: terms ascending in the conductor-N basis
std::string format_cyc_literal(const Cyc& v, int conductor);

using CycMatrix = Eigen::Matrix<Cyc, Eigen::Dynamic, Eigen::Dynamic>;
using CycVector = Eigen::Matrix<Cyc, Eigen::Dynamic, 1>;

CycMatrix conj(const CycMatrix& m);
Eigen::MatrixXcd embed(const CycMatrix& m);

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace modkit

namespace Eigen {
template <>
struct NumTraits<modkit::Cyc> {
  using Real = modkit::Cyc;
  using NonInteger = modkit::Cyc;
  using Literal = modkit::Cyc;
  using Nested = modkit::Cyc;
  // IsComplex stays 0: conjugation is explicit (Cyc::conj), and Eigen's
  // real/complex mixing machinery expects Real to be a distinct type.
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 100,
  };
  static int digits10() { return 0; }
};
}  // namespace Eigen
