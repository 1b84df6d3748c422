#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "modkit/cyclotomic.hpp"

using namespace modkit;

namespace {

// random small cyclotomic values for the property tests
Cyc random_cyc(std::mt19937& rng, int conductor) {
  std::uniform_int_distribution<int> nterms(0, 3);
  std::uniform_int_distribution<Int> num(-6, 6);
  std::uniform_int_distribution<Int> den(1, 4);
  std::uniform_int_distribution<Int> expo(0, conductor - 1);
  std::vector<std::pair<Int, Rat>> powers;
  int k = nterms(rng);
  for (int i = 0; i <= k; ++i) powers.emplace_back(expo(rng), make_rat(num(rng), den(rng)));
  return Cyc::from_powers(conductor, powers);
}

}  // namespace

TEST_CASE("basic root of unity arithmetic") {
  // zeta_4 * zeta_4 = -1
  CHECK(Cyc::zeta(4) * Cyc::zeta(4) == Cyc(-1));
  // (zeta_8 + zeta_8^7)^2 = 2
  Cyc sqrt2 = Cyc::zeta(8) + Cyc::zeta(8, 7);
  CHECK(sqrt2 * sqrt2 == Cyc(2));
  CHECK(Cyc(2).inv() == Cyc(make_rat(1, 2)));
}

TEST_CASE("conjugation") {
  CHECK(Cyc::zeta(4).conj() == -Cyc::zeta(4));
  CHECK(Cyc(make_rat(3, 2)).conj() == Cyc(make_rat(3, 2)));
  CHECK(Cyc::zeta(3).conj() == Cyc::zeta(3, 2));
}

TEST_CASE("embedding and predicates") {
  Cyc sqrt2 = Cyc::zeta(8) + Cyc::zeta(8, 7);
  CHECK(std::abs(sqrt2.embed() - std::complex<double>(1.41421356237, 0)) < 1e-9);
  CHECK(!Cyc::zeta(4).is_real());
  CHECK(sqrt2.is_real());
  CHECK(sqrt2.is_positive_real());
  CHECK(!(-sqrt2).is_positive_real());
  // sum of all cube roots of unity
  Cyc zero = Cyc::zeta(3) + Cyc::zeta(3, 2) + Cyc(1);
  CHECK(zero.is_zero());
  CHECK(zero.as_integer() == 0);
  CHECK_THROWS_AS(Cyc::zeta(5).as_integer(), NotAnInteger);
  CHECK_THROWS_AS(Cyc(0).inv(), DivisionByZero);
}

TEST_CASE("cross-conductor canonical equality") {
  // zeta_8^2 = zeta_4
  CHECK(Cyc::zeta(8, 2) == Cyc::zeta(4));
  CHECK(Cyc::zeta(6, 3) == Cyc(-1));
  // rational values collapse to conductor 1
  CHECK((Cyc::zeta(5) * Cyc::zeta(5, 4)).conductor() == 1);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(20240817);
  const int conductors[] = {1, 2, 3, 4, 8, 9, 12, 15};
  for (int rep = 0; rep < 200; ++rep) {
    int n1 = conductors[rep % 8], n2 = conductors[(rep / 3) % 8];
    Cyc a = random_cyc(rng, n1), b = random_cyc(rng, n2), c = random_cyc(rng, n1);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inv() == Cyc(1));
    CHECK(a.conj().conj() == a);
  }
}

TEST_CASE("embedding is a ring homomorphism up to 1e-9") {
  std::mt19937 rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    Cyc a = random_cyc(rng, 12), b = random_cyc(rng, 20);
    CHECK(std::abs((a + b).embed() - (a.embed() + b.embed())) < 1e-9);
    CHECK(std::abs((a * b).embed() - (a.embed() * b.embed())) < 1e-9);
  }
}

TEST_CASE("roots of unity are recognized with exact order") {
  // theta = zeta_4 inside conductor 8: index 2 of the 8 roots
  auto ix = Cyc::zeta(8, 2).root_of_unity_index(8);
  REQUIRE(ix.has_value());
  CHECK(*ix == 2);
  // -1 at odd conductor is a root of order 2, not an n-th root
  auto jx = Cyc(-1).root_of_unity_index(5);
  REQUIRE(jx.has_value());
  CHECK(*jx == 5);  // zeta_10^5
  CHECK(!(Cyc::zeta(5) + Cyc(1)).root_of_unity_index(5).has_value());
  CHECK(!Cyc(2).root_of_unity_index(4).has_value());
  CHECK(!Cyc::zeta(3).root_of_unity_index(4).has_value());  // not in Q(zeta_4)
}

TEST_CASE("literal grammar round trips") {
  CHECK(parse_cyc_literal("z^2", 8) == Cyc::zeta(4));
  CHECK(parse_cyc_literal("-1", 8) == Cyc(-1));
  CHECK(parse_cyc_literal("3/2", 4) == Cyc(make_rat(3, 2)));
  CHECK(parse_cyc_literal("2*z^3 - z + 1/2", 12) ==
        Cyc(2) * Cyc::zeta(12, 3) - Cyc::zeta(12) + Cyc(make_rat(1, 2)));
  CHECK(parse_cyc_literal("z^-1", 6) == Cyc::zeta(6, 5));
  CHECK(parse_cyc_literal(" z ^ 2 + z ^ 14 ", 16) == Cyc::zeta(8) + Cyc::zeta(8, 7));
  CHECK_THROWS_AS(parse_cyc_literal("z^2 + ", 8), LiteralError);
  CHECK_THROWS_AS(parse_cyc_literal("3//2", 8), LiteralError);
  CHECK_THROWS_AS(parse_cyc_literal("", 8), LiteralError);
  CHECK_THROWS_AS(parse_cyc_literal("2 z", 8), LiteralError);

  std::mt19937 rng(99);
  for (int rep = 0; rep < 100; ++rep) {
    Cyc a = random_cyc(rng, 24);
    std::string text = format_cyc_literal(a, 24);
    CHECK(parse_cyc_literal(text, 24) == a);
  }
}

TEST_CASE("galois action permutes conjugates, norm is rational") {
  Cyc a = Cyc::zeta(7) + Cyc(make_rat(1, 3));
  Cyc prod(1);
  for (Int k = 1; k < 7; ++k) prod *= a.galois(k);
  CHECK(prod.as_rational().has_value());
  CHECK(a.galois(2).galois(4) == a.galois(8 % 7));
}
