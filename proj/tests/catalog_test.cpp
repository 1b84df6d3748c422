#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modkit/catalog.hpp"
#include "modkit/structure.hpp"
#include "test_support.hpp"

using namespace modkit;
using namespace testsup;

namespace {

// brute-force polarization oracle: b(x, y) = q(x+y) - q(x) - q(y) computed
// through q alone, with component-wise addition in the group
Rat polarization(const MetricGroup& mg, const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> sum(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sum[i] = (x[i] + y[i]) % mg.orders[i];
  return rat_mod1(mg.q(sum) - mg.q(x) - mg.q(y));
}

}  // namespace

TEST_CASE("semion and anti-semion from Z_2 metric groups") {
  ModularData semion = metric_group_pointed(cyclic_form(2, 1));
  ModularData ref = validate(semion_raw());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(semion.s(i, j) == ref.s(i, j));
  CHECK(semion.theta(1) == Cyc::zeta(4));

  ModularData anti = metric_group_pointed(cyclic_form(2, 3));
  CHECK(anti.theta(1) == Cyc::zeta(4, 3));
  CHECK(anti.s(1, 1) == Cyc(-1));
}

TEST_CASE("bilinear form matches the brute-force polarization of q") {
  for (const MetricGroup& mg :
       {cyclic_form(2, 1), cyclic_form(9, 2), cyclic_form(4, 3),
        diagonal_form({3, 3}, {make_rat(1, 3), make_rat(2, 3)})}) {
    const int n = mg.order();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(mg.bilinear(mg.element(i), mg.element(j)) ==
              polarization(mg, mg.element(i), mg.element(j)));
  }
}

TEST_CASE("toric code arises from Z_2 x Z_2 with b(e,m) = 1/2") {
  MetricGroup mg = diagonal_form({2, 2}, {Rat(0), Rat(0)});
  mg.offdiag[0][0] = make_rat(1, 2);
  ModularData toric = metric_group_pointed(mg);
  ModularData ref = validate(toric_raw());
  for (int i = 0; i < 4; ++i) {
    CHECK(toric.theta(i) == ref.theta(i));
    for (int j = 0; j < 4; ++j) CHECK(toric.s(i, j) == ref.s(i, j));
  }
  // and the bundled fixture file carries the same data
  ModularData file = preset("toric");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(file.s(i, j) == toric.s(i, j));
}

TEST_CASE("bad forms are rejected") {
  // q(1) = 1/2 on Z_2: b(1,1) = 0, so the form is degenerate
  CHECK_THROWS_AS(metric_group_pointed(cyclic_form(2, 1 + 1)), CatalogError);
  try {
    metric_group_pointed(cyclic_form(2, 2));
    FAIL("expected DegenerateForm");
  } catch (const CatalogError& e) {
    CHECK(e.code == Ccode::DegenerateForm);
  }
  // q(1) = 1/4 on Z_3 is not well-defined: 9/4 is not an integer
  try {
    MetricGroup mg = diagonal_form({3}, {make_rat(1, 4)});
    metric_group_pointed(mg);
    FAIL("expected IllDefinedForm");
  } catch (const CatalogError& e) {
    CHECK(e.code == Ccode::IllDefinedForm);
  }
}

TEST_CASE("odd cyclic forms produce MNSD data with the right group") {
  ModularData z5 = metric_group_pointed(cyclic_form(5, 2));
  CHECK(is_mnsd(z5));
  CHECK(invertibles(z5).invariant_factors == std::vector<Int>{5});
  ModularData md = validate(odd_cyclic_raw(5, 2));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(z5.s(i, j) == md.s(i, j));
}

TEST_CASE("deligne products") {
  ModularData semion = preset("semion");
  ModularData one = standard_corpus(1).front();
  ModularData same = deligne_product(semion, one);
  CHECK(same.rank == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(same.s(i, j) == semion.s(i, j));

  ModularData z3 = metric_group_pointed(cyclic_form(3, 1));
  ModularData prod = deligne_product(semion, z3);
  CHECK(prod.rank == 6);
  CHECK(prod.global_dim2 == Cyc(6));
  CHECK(invertibles(prod).invariant_factors == std::vector<Int>{6});

  ModularData ising = preset("ising");
  ModularData ii = deligne_product(ising, ising);
  CHECK(ii.rank == 9);
  CHECK(ii.global_dim2 == Cyc(16));
}

TEST_CASE("product dimension is multiplicative, exactly") {
  ModularData a = metric_group_pointed(cyclic_form(7, 2));
  ModularData b = preset("antisemion");
  CHECK(deligne_product(a, b).global_dim2 == a.global_dim2 * b.global_dim2);
}

TEST_CASE("standard corpus contents and order") {
  auto base = standard_corpus(1);
  // rank-1, semion, anti-semion, toric, Ising, 4 x Z4 forms, 4 x Z3xZ3 forms
  REQUIRE(base.size() == 13);
  CHECK(base[0].name == "Trivial");
  CHECK(base[1].name == "Semion");
  CHECK(base[2].name == "AntiSemion");
  CHECK(base[3].name == "ToricCode");
  CHECK(base[4].name == "Ising");

  auto c5 = standard_corpus(5);
  // adds Z3 (a=1,2), Z5 (a=1..4) and their 12 semion/anti-semion products
  CHECK(c5.size() == 13 + 6 + 12);
  int z5 = 0, products = 0;
  for (const auto& md : c5) {
    if (md.name.rfind("Z5[", 0) == 0 && md.name.find(" x ") == std::string::npos) ++z5;
    if (md.name.find(" x Semion") != std::string::npos ||
        md.name.find(" x AntiSemion") != std::string::npos)
      ++products;
  }
  CHECK(z5 == 4);
  CHECK(products == 12);
}

TEST_CASE("every corpus entry passes balancing") {
  for (const ModularData& md : standard_corpus(7)) {
    CAPTURE(md.name);
    CHECK(balancing_check(md));
  }
}
