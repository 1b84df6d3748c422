#include "modkit/modular_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modkit {

const char* vcode_name(Vcode c) {
  switch (c) {
    case Vcode::BadShape: return "BadShape";
    case Vcode::NotSymmetric: return "NotSymmetric";
    case Vcode::NotPseudoUnitary: return "NotPseudoUnitary";
    case Vcode::TwistNotRootOfUnity: return "TwistNotRootOfUnity";
    case Vcode::DualityFailure: return "DualityFailure";
    case Vcode::VerlindeNonInteger: return "VerlindeNonInteger";
    case Vcode::VerlindeNegative: return "VerlindeNegative";
    case Vcode::FusionUnitFailure: return "FusionUnitFailure";
    case Vcode::FusionDualFailure: return "FusionDualFailure";
    case Vcode::FusionCommFailure: return "FusionCommFailure";
    case Vcode::FusionAssocFailure: return "FusionAssocFailure";
    case Vcode::NonConvergence: return "NonConvergence";
    case Vcode::MismatchWithSDims: return "MismatchWithSDims";
    case Vcode::ModReductionOnNonInteger: return "ModReductionOnNonInteger";
  }
  return "Unknown";
}

Int ModularData::theta_order(int i) const {
  const Int m = root_order();
  return m / gcd_ll(theta_root[i], m);
}

// ------------------------------------------------------------------
// Integer engine: when every quantum dimension is 1 and every s-entry has
// small integer coefficients, the Verlinde and duality sums run in int64
// over the raw power basis, with an a-priori overflow certificate. This is
// exact; the generic Cyc path below is used whenever the certificate fails.

namespace {

struct IntForm {
  bool ok = false;
  int n = 0;                                            // rank
  std::shared_ptr<const ConductorTable> tab;
  std::vector<std::vector<std::pair<int, Int>>> entry;  // row-major rank x rank
  Int d2 = 0;
  Int max_l1 = 0;
};

IntForm build_int_form(const CycMatrix& s, const Cyc& d2, const CycVector& dims,
                       int conductor) {
  IntForm f;
  f.n = static_cast<int>(s.rows());
  for (int i = 0; i < f.n; ++i)
    if (!(dims(i) == Cyc(1))) return f;
  auto d2i = d2.as_integer_opt();
  if (!d2i || *d2i <= 0) return f;
  f.d2 = *d2i;
  f.tab = conductor_table(conductor);
  f.entry.resize(static_cast<std::size_t>(f.n) * f.n);
  for (int i = 0; i < f.n; ++i)
    for (int j = 0; j < f.n; ++j) {
      const Cyc lifted = lift_to(s(i, j), conductor);
      Int l1 = 0;
      auto& dst = f.entry[static_cast<std::size_t>(i) * f.n + j];
      dst.reserve(lifted.terms().size());
      for (const auto& [e, c] : lifted.terms()) {
        if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return f;
        Int v = c.get_num().get_si();
        if (std::llabs(v) > (1LL << 20)) return f;
        dst.emplace_back(e, v);
        l1 += std::llabs(v);
      }
      f.max_l1 = std::max(f.max_l1, l1);
    }
  f.max_l1 = std::max<Int>(f.max_l1, 1);
  // bound for the triple sums: rank * B^3 * (row L1) must stay well inside int64
  if (f.n * f.max_l1 * f.max_l1 * f.max_l1 > (1LL << 58) / f.tab->max_row_l1) return f;
  f.ok = true;
  return f;
}

// folds buf (raw exponents) into the power basis; returns false unless the
// reduced value is the rational buf[0]
bool reduce_to_rational(const ConductorTable& tab, std::vector<Int>& buf, Int& out) {
  for (int e = tab.deg; e < tab.limit; ++e) {
    if (buf[e] == 0) continue;
    for (const auto& [i, c] : tab.row(e)) buf[i] += buf[e] * c;
    buf[e] = 0;
  }
  for (int e = 1; e < tab.deg; ++e)
    if (buf[e] != 0) return false;
  out = buf[0];
  return true;
}

FusionRing verlinde_int(const IntForm& f, const std::vector<int>& dual) {
  const int n = f.n;
  const ConductorTable& tab = *f.tab;
  const int nn = tab.n;
  std::vector<IntMatrix> mats(n, IntMatrix::Zero(n, n));
  std::vector<Int> buf(tab.limit, 0);
  auto E = [&](int i, int j) -> const std::vector<std::pair<int, Int>>& {
    return f.entry[static_cast<std::size_t>(i) * n + j];
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::fill(buf.begin(), buf.end(), 0);
        for (int a = 0; a < n; ++a) {
          for (const auto& [e1, c1] : E(i, a))
            for (const auto& [e2, c2] : E(j, a)) {
              const Int c12 = c1 * c2;
              const int e12 = e1 + e2;
              for (const auto& [e3, c3] : E(k, a))
                buf[e12 + (e3 ? nn - e3 : 0)] += c12 * c3;
            }
        }
        Int num = 0;
        if (!reduce_to_rational(tab, buf, num) || num % f.d2)
          throw ValidationError(Vcode::VerlindeNonInteger,
                                "N(" + std::to_string(i) + "," + std::to_string(j) + ";" +
                                    std::to_string(k) + ") is not an integer");
        const Int val = num / f.d2;
        if (val < 0)
          throw ValidationError(Vcode::VerlindeNegative,
                                "N(" + std::to_string(i) + "," + std::to_string(j) + ";" +
                                    std::to_string(k) + ") = " + std::to_string(val));
        mats[i](j, k) = val;
        mats[j](i, k) = val;
      }
  return FusionRing(std::move(mats), dual);
}

FusionRing verlinde_generic(const CycMatrix& s, const Cyc& d2, const CycVector& dims,
                            const std::vector<int>& dual) {
  const int n = static_cast<int>(s.rows());
  const Cyc inv_d2 = d2.inv();
  std::vector<Cyc> inv_d(n);
  for (int a = 0; a < n; ++a) inv_d[a] = dims(a).inv();
  std::vector<IntMatrix> mats(n, IntMatrix::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Cyc acc;
        for (int a = 0; a < n; ++a) acc += s(i, a) * s(j, a) * s(k, a).conj() * inv_d[a];
        acc *= inv_d2;
        auto val = acc.as_integer_opt();
        if (!val)
          throw ValidationError(Vcode::VerlindeNonInteger,
                                "N(" + std::to_string(i) + "," + std::to_string(j) + ";" +
                                    std::to_string(k) + ") = " + acc.to_string());
        if (*val < 0)
          throw ValidationError(Vcode::VerlindeNegative,
                                "N(" + std::to_string(i) + "," + std::to_string(j) + ";" +
                                    std::to_string(k) + ") = " + std::to_string(*val));
        mats[i](j, k) = *val;
        mats[j](i, k) = *val;
      }
  return FusionRing(std::move(mats), dual);
}

// Dual permutation from s * s = D2 * P, followed by the conjugation identity
// conj(s(i,j)) = s(i, P(j)). Together these also force s * conj(s) = D2 * Id,
// i.e. invertibility of the S-matrix.
std::vector<int> duality_permutation(const CycMatrix& s, const Cyc& d2,
                                     const CycVector& dims, int conductor) {
  const int n = static_cast<int>(s.rows());
  std::vector<int> perm(n, -1);
  auto match = [&](int i, int j) {
    if (perm[i] != -1 || (i != j && perm[j] != -1))
      throw ValidationError(Vcode::DualityFailure, "duplicate match in row " + std::to_string(i));
    perm[i] = j;
    perm[j] = i;
  };
  IntForm f = build_int_form(s, d2, dims, conductor);
  if (f.ok) {
    const ConductorTable& tab = *f.tab;
    std::vector<Int> buf(tab.limit, 0);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::fill(buf.begin(), buf.end(), 0);
        for (int a = 0; a < n; ++a)
          for (const auto& [e1, c1] : f.entry[static_cast<std::size_t>(i) * n + a])
            for (const auto& [e2, c2] : f.entry[static_cast<std::size_t>(j) * n + a])
              buf[e1 + e2] += c1 * c2;
        Int num = 0;
        if (!reduce_to_rational(tab, buf, num) || (num != 0 && num != f.d2))
          throw ValidationError(Vcode::DualityFailure,
                                "(s*s) entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is neither 0 nor D2");
        if (num == f.d2) match(i, j);
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Cyc acc;
        for (int a = 0; a < n; ++a) acc += s(i, a) * s(j, a);
        if (!acc.is_zero()) {
          if (!(acc == d2))
            throw ValidationError(Vcode::DualityFailure,
                                  "(s*s) entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is neither 0 nor D2");
          match(i, j);
        }
      }
  }
  for (int i = 0; i < n; ++i)
    if (perm[i] == -1)
      throw ValidationError(Vcode::DualityFailure, "row " + std::to_string(i) + " has no dual");
  if (perm[0] != 0)
    throw ValidationError(Vcode::DualityFailure, "unit is not self-dual");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(s(i, j).conj() == s(i, perm[j])))
        throw ValidationError(Vcode::DualityFailure,
                              "conj(s(" + std::to_string(i) + "," + std::to_string(j) +
                                  ")) != s(i, j*)");
  return perm;
}

}  // namespace

// ------------------------------------------------------------- FusionRing

FusionRing::FusionRing(std::vector<IntMatrix> mats, std::vector<int> dual)
    : mats_(std::move(mats)), dual_(std::move(dual)) {}

void FusionRing::check_invariants() const {
  const int n = rank();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (mats_[0](j, k) != (j == k ? 1 : 0))
        throw ValidationError(Vcode::FusionUnitFailure,
                              "N(0," + std::to_string(j) + ";" + std::to_string(k) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mats_[i](j, 0) != (j == dual_[i] ? 1 : 0))
        throw ValidationError(Vcode::FusionDualFailure,
                              "N(" + std::to_string(i) + "," + std::to_string(j) + ";0)");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (mats_[i](j, k) != mats_[j](i, k))
          throw ValidationError(Vcode::FusionCommFailure,
                                "N(" + std::to_string(i) + "," + std::to_string(j) + ")");

  // associativity: N_j N_k = sum_m N_{jk}^m N_m. Products of entries this
  // size are exact in doubles; fall back to int64 matrices otherwise.
  Int maxc = 0;
  for (const auto& m : mats_) maxc = std::max(maxc, m.maxCoeff());
  const bool in_double = maxc * maxc < (1LL << 52) / std::max(n, 1);
  auto fail = [](int j, int k) {
    throw ValidationError(Vcode::FusionAssocFailure,
                          "pair (" + std::to_string(j) + "," + std::to_string(k) + ")");
  };
  if (in_double) {
    std::vector<Eigen::MatrixXd> nd(n);
    for (int i = 0; i < n; ++i) nd[i] = mats_[i].cast<double>();
    Eigen::MatrixXd prod(n, n), rhs(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        prod.noalias() = nd[j] * nd[k];
        rhs.setZero();
        for (int m = 0; m < n; ++m)
          if (Int c = mats_[j](k, m); c != 0) rhs += static_cast<double>(c) * nd[m];
        if (!(prod.array() == rhs.array()).all()) fail(j, k);
      }
  } else {
    if (maxc * maxc > (1LL << 61) / std::max(n, 1))
      throw ValidationError(Vcode::FusionAssocFailure, "coefficients too large to verify");
    IntMatrix prod(n, n), rhs(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        prod.noalias() = mats_[j] * mats_[k];
        rhs.setZero();
        for (int m = 0; m < n; ++m)
          if (Int c = mats_[j](k, m); c != 0) rhs += c * mats_[m];
        if (!(prod.array() == rhs.array()).all()) fail(j, k);
      }
  }
}

// ---------------------------------------------------------------- validate

FusionRing verlinde(const CycMatrix& s, const Cyc& d2, const CycVector& dims,
                    const std::vector<int>& dual, int conductor) {
  IntForm f = build_int_form(s, d2, dims, conductor);
  if (f.ok) return verlinde_int(f, dual);
  return verlinde_generic(s, d2, dims, dual);
}

ModularData validate(const RawModularData& raw) {
  const int n = raw.rank;
  if (n < 1 || raw.s.rows() != n || raw.s.cols() != n || raw.theta.size() != n)
    throw ValidationError(Vcode::BadShape, "inconsistent rank/matrix shapes");
  if (raw.conductor < 1) throw ValidationError(Vcode::BadShape, "conductor must be positive");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (raw.conductor % raw.s(i, j).conductor() != 0)
        throw ValidationError(Vcode::BadShape, "s entry outside Q(zeta_N)");
    if (raw.conductor % raw.theta(i).conductor() != 0)
      throw ValidationError(Vcode::BadShape, "theta entry outside Q(zeta_N)");
  }

  if (!(raw.s(0, 0) == Cyc(1)))
    throw ValidationError(Vcode::BadShape, "s(0,0) must be 1");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(raw.s(i, j) == raw.s(j, i)))
        throw ValidationError(Vcode::NotSymmetric,
                              "s(" + std::to_string(i) + "," + std::to_string(j) + ")");

  CycVector dims(n);
  for (int i = 0; i < n; ++i) {
    dims(i) = raw.s(0, i);
    if (!dims(i).is_positive_real())
      throw ValidationError(Vcode::NotPseudoUnitary,
                            "d_" + std::to_string(i) + " = " + dims(i).to_string());
  }

  if (!(raw.theta(0) == Cyc(1)))
    throw ValidationError(Vcode::TwistNotRootOfUnity, "theta_0 must be 1");
  std::vector<Int> troot(n);
  const Int m = raw.conductor % 2 == 0 ? raw.conductor : 2 * raw.conductor;
  for (int i = 0; i < n; ++i) {
    auto j = raw.theta(i).root_of_unity_index(raw.conductor);
    if (!j || (*j * raw.conductor) % m != 0)
      throw ValidationError(Vcode::TwistNotRootOfUnity,
                            "theta_" + std::to_string(i) + " = " + raw.theta(i).to_string());
    troot[i] = *j;
  }

  Cyc d2;
  for (int i = 0; i < n; ++i) d2 += dims(i) * dims(i);

  std::vector<int> dual = duality_permutation(raw.s, d2, dims, raw.conductor);
  FusionRing fusion = verlinde(raw.s, d2, dims, dual, raw.conductor);
  fusion.check_invariants();

  ModularData md;
  md.rank = n;
  md.conductor = raw.conductor;
  md.labels = raw.labels;
  if (md.labels.empty())
    for (int i = 0; i < n; ++i) md.labels.push_back(std::to_string(i));
  if (static_cast<int>(md.labels.size()) != n)
    throw ValidationError(Vcode::BadShape, "label count mismatch");
  md.s = raw.s;
  md.theta = raw.theta;
  md.dims = std::move(dims);
  md.global_dim2 = std::move(d2);
  md.dual = std::move(dual);
  md.theta_root = std::move(troot);
  md.fusion = std::move(fusion);
  md.name = raw.name;
  md.source = raw.source;
  return md;
}

// ------------------------------------------------------- derived reports

// With s_{XY} = tr(c_{YX} c_{XY}) the double braiding acts on the X_k
// summand of X_i (x) X_j as theta_k / (theta_i theta_j), so
// s_{ij} theta_i theta_j = sum_k N_{ij}^k theta_k d_k.
bool balancing_check(const ModularData& md) {
  const int n = md.rank;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Cyc lhs = md.s(i, j) * md.theta(i) * md.theta(j);
      Cyc rhs;
      for (int k = 0; k < n; ++k)
        if (Int c = md.fusion.coeff(i, j, k); c != 0)
          rhs += Cyc(c) * md.theta(k) * md.dims(k);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

GlobalInvariants global_invariants(const ModularData& md) {
  GlobalInvariants gi;
  gi.fpdim = md.global_dim2;
  gi.integral = true;
  for (int i = 0; i < md.rank && gi.integral; ++i)
    gi.integral = md.dims(i).as_integer_opt().has_value();
  auto total = md.global_dim2.as_integer_opt();
  gi.weakly_integral = total.has_value();
  if (total) gi.fpdim_mod4 = ((*total % 4) + 4) % 4;
  gi.self_dual_count = 0;
  for (int i = 0; i < md.rank; ++i)
    if (md.dual[i] == i) ++gi.self_dual_count;
  return gi;
}

Int fpdim_mod(const GlobalInvariants& gi, Int modulus) {
  auto v = gi.fpdim.as_integer_opt();
  if (!v)
    throw ValidationError(Vcode::ModReductionOnNonInteger,
                          "FPdim = " + gi.fpdim.to_string());
  return ((*v % modulus) + modulus) % modulus;
}

Eigen::VectorXd fp_dims(const FusionRing& fusion) {
  const int n = fusion.rank();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m += fusion.matrix(i).cast<double>();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  constexpr int kMaxIter = 20000;
  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::VectorXd w = m * v;
    w /= w.maxCoeff();
    const double delta = (w - v).cwiseAbs().maxCoeff();
    v = std::move(w);
    if (delta < 1e-14) {
      if (v(0) <= 0)
        throw ValidationError(Vcode::NonConvergence, "degenerate Perron vector");
      return v / v(0);
    }
  }
  throw ValidationError(Vcode::NonConvergence, "power iteration hit the cap");
}

FpDimsReport fp_dims_certified(const ModularData& md) {
  FpDimsReport rep;
  rep.fp = fp_dims(md.fusion);
  const int n = md.rank;
  const double tol = embed_tolerance();
  for (int i = 0; i < n; ++i) {
    const double from_s = md.dims(i).embed().real();
    if (std::abs(rep.fp(i) - from_s) > tol)
      throw ValidationError(Vcode::MismatchWithSDims,
                            "index " + std::to_string(i) + ": power iteration " +
                                std::to_string(rep.fp(i)) + " vs s-row " + std::to_string(from_s));
  }
  // exact integrality certificate: N_i d = d_i d over the integers
  std::vector<Int> cand(n);
  bool near_integer = true;
  for (int i = 0; i < n && near_integer; ++i) {
    cand[i] = std::llround(rep.fp(i));
    near_integer = std::abs(rep.fp(i) - static_cast<double>(cand[i])) < 1e-6 && cand[i] >= 1;
  }
  if (near_integer) {
    Eigen::Matrix<Int, Eigen::Dynamic, 1> d(n);
    for (int i = 0; i < n; ++i) d(i) = cand[i];
    bool all = true;
    for (int i = 0; i < n && all; ++i) {
      Eigen::Matrix<Int, Eigen::Dynamic, 1> lhs = md.fusion.matrix(i) * d;
      all = (lhs.array() == (cand[i] * d).array()).all();
    }
    if (all) {
      rep.integral_certified = true;
      rep.integer_dims = std::move(cand);
    }
  }
  return rep;
}

}  // namespace modkit
