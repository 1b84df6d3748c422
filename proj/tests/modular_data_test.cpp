#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modkit/modular_data.hpp"
#include "test_support.hpp"

using namespace modkit;
using namespace testsup;

TEST_CASE("semion validates with D2 = 2 and identity duals") {
  ModularData md = validate(semion_raw());
  CHECK(md.global_dim2 == Cyc(2));
  CHECK(md.dual == std::vector<int>{0, 1});
  CHECK(md.dims(1) == Cyc(1));
  CHECK(md.theta_order(1) == 4);
}

TEST_CASE("rank-1 data validates with D2 = 1") {
  ModularData md = validate(rank1_raw());
  CHECK(md.global_dim2 == Cyc(1));
  CHECK(md.fusion.coeff(0, 0, 0) == 1);
}

TEST_CASE("semion with theta_1 = 1 passes validation, fails balancing") {
  RawModularData raw = semion_raw();
  raw.theta(1) = Cyc(1);  // still a root of unity, so the twist check passes
  ModularData md = validate(raw);
  CHECK(!balancing_check(md));
  CHECK(balancing_check(validate(semion_raw())));
}

TEST_CASE("verlinde coefficients: hand values") {
  ModularData semion = validate(semion_raw());
  // (1/2)(1*1*1 + (-1)(-1)*1) = 1
  CHECK(semion.fusion.coeff(1, 1, 0) == 1);
  CHECK(semion.fusion.coeff(1, 1, 1) == 0);

  ModularData ising = validate(ising_raw());
  CHECK(ising.fusion.coeff(2, 2, 0) == 1);
  CHECK(ising.fusion.coeff(2, 2, 1) == 1);
  CHECK(ising.fusion.coeff(2, 2, 2) == 0);
  CHECK(ising.fusion.coeff(1, 2, 2) == 1);
  CHECK(ising.fusion.coeff(1, 1, 0) == 1);
}

TEST_CASE("verlinde agrees with the numeric oracle") {
  for (const RawModularData& raw :
       {ising_raw(), toric_raw(), odd_cyclic_raw(7), odd_cyclic_raw(9, 2)}) {
    ModularData md = validate(raw);
    for (int i = 0; i < md.rank; ++i)
      for (int j = 0; j < md.rank; ++j)
        for (int k = 0; k < md.rank; ++k)
          CHECK(md.fusion.coeff(i, j, k) == verlinde_numeric(md.s, i, j, k));
  }
}

TEST_CASE("fp dims: pointed are ones, Ising has sqrt(2)") {
  ModularData semion = validate(semion_raw());
  auto rep = fp_dims_certified(semion);
  CHECK(rep.integral_certified);
  CHECK(rep.integer_dims == std::vector<Int>{1, 1});

  ModularData ising = validate(ising_raw());
  auto irep = fp_dims_certified(ising);
  CHECK(!irep.integral_certified);
  CHECK(std::abs(irep.fp(2) - std::sqrt(2.0)) < 1e-9);
  // weakly integral: d_s^2 = 2 exactly
  CHECK(ising.dims(2) * ising.dims(2) == Cyc(2));
}

TEST_CASE("global invariants") {
  GlobalInvariants semion = global_invariants(validate(semion_raw()));
  CHECK(semion.fpdim == Cyc(2));
  CHECK(semion.fpdim_mod4 == 2);
  CHECK(semion.integral);
  CHECK(semion.self_dual_count == 2);

  GlobalInvariants z5 = global_invariants(validate(odd_cyclic_raw(5)));
  CHECK(z5.fpdim == Cyc(5));
  CHECK(z5.fpdim_mod4 == 1);
  CHECK(z5.self_dual_count == 1);  // only the unit; x* = -x

  GlobalInvariants ising = global_invariants(validate(ising_raw()));
  CHECK(ising.fpdim == Cyc(4));
  CHECK(ising.fpdim_mod4 == 0);
  CHECK(!ising.integral);
  CHECK(ising.weakly_integral);
  CHECK(ising.self_dual_count == 3);
}

TEST_CASE("Z5 duals are negation") {
  ModularData md = validate(odd_cyclic_raw(5));
  CHECK(md.dual == std::vector<int>{0, 4, 3, 2, 1});
}

TEST_CASE("validation rejections") {
  {
    RawModularData raw = semion_raw();
    raw.s(0, 1) = Cyc(2);  // s(1,0) still 1
    CHECK_THROWS_WITH_AS(validate(raw), doctest::Contains("NotSymmetric"), ValidationError);
  }
  {
    RawModularData raw = semion_raw();
    raw.s(0, 1) = Cyc(-1);
    raw.s(1, 0) = Cyc(-1);
    try {
      validate(raw);
      FAIL("expected NotPseudoUnitary");
    } catch (const ValidationError& e) {
      CHECK(e.code == Vcode::NotPseudoUnitary);
    }
  }
  {
    RawModularData raw = semion_raw();
    raw.s(1, 1) = Cyc(1);  // rows no longer orthogonal
    try {
      validate(raw);
      FAIL("expected DualityFailure");
    } catch (const ValidationError& e) {
      CHECK(e.code == Vcode::DualityFailure);
    }
  }
  {
    // duality holds but a Verlinde coefficient is 3/2
    RawModularData raw;
    raw.rank = 2;
    raw.conductor = 1;
    raw.s = CycMatrix(2, 2);
    raw.s << Cyc(1), Cyc(2), Cyc(2), Cyc(-1);
    raw.theta = CycVector(2);
    raw.theta(0) = Cyc(1);
    raw.theta(1) = Cyc(1);
    try {
      validate(raw);
      FAIL("expected VerlindeNonInteger");
    } catch (const ValidationError& e) {
      CHECK(e.code == Vcode::VerlindeNonInteger);
    }
  }
  {
    RawModularData raw = semion_raw();
    raw.theta(1) = Cyc(2);
    try {
      validate(raw);
      FAIL("expected TwistNotRootOfUnity");
    } catch (const ValidationError& e) {
      CHECK(e.code == Vcode::TwistNotRootOfUnity);
    }
  }
  {
    // -1 is a root of unity but not a 5th root: theta^N = 1 must fail
    RawModularData raw = odd_cyclic_raw(5);
    raw.theta(1) = Cyc(-1);
    try {
      validate(raw);
      FAIL("expected TwistNotRootOfUnity");
    } catch (const ValidationError& e) {
      CHECK(e.code == Vcode::TwistNotRootOfUnity);
    }
  }
}

TEST_CASE("negative fusion coefficients are rejected") {
  CycMatrix s(2, 2);
  s << Cyc(1), Cyc(1), Cyc(1), Cyc(-3);
  CycVector dims(2);
  dims(0) = Cyc(1);
  dims(1) = Cyc(1);
  try {
    verlinde(s, Cyc(2), dims, {0, 1}, 1);
    FAIL("expected VerlindeNegative");
  } catch (const ValidationError& e) {
    CHECK(e.code == Vcode::VerlindeNegative);
  }
}

TEST_CASE("fp-dims cross-check rejects tampered dims") {
  ModularData md = validate(semion_raw());
  md.dims(1) = Cyc(3);
  try {
    fp_dims_certified(md);
    FAIL("expected MismatchWithSDims");
  } catch (const ValidationError& e) {
    CHECK(e.code == Vcode::MismatchWithSDims);
  }
}

TEST_CASE("fusion ring invariants hold on validated data") {
  for (const RawModularData& raw : {semion_raw(), ising_raw(), toric_raw(), odd_cyclic_raw(9)}) {
    ModularData md = validate(raw);
    CHECK_NOTHROW(md.fusion.check_invariants());
  }
}

TEST_CASE("fpdim_mod throws on non-integers") {
  GlobalInvariants gi;
  gi.fpdim = Cyc::zeta(8) + Cyc::zeta(8, 7);  // sqrt(2)
  CHECK_THROWS_AS(fpdim_mod(gi, 4), ValidationError);
}
