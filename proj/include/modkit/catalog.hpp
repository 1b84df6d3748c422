#pragma once

// Corpus generation: pointed modular data from metric groups, Deligne
// products, and the bundled Ising / toric-code fixtures.

#include <string>
#include <vector>

#include "modkit/modular_data.hpp"

namespace modkit {

enum class Ccode { DegenerateForm, IllDefinedForm };
const char* ccode_name(Ccode c);

struct CatalogError : Error {
  CatalogError(Ccode c, const std::string& msg)
      : Error(std::string(ccode_name(c)) + ": " + msg), code(c) {}
  Ccode code;
};

// Finite abelian group Z_{n_1} x ... x Z_{n_r} with a quadratic form given by
// generator values q(e_i) and pair values b(e_i, e_j) in Q/Z, extended by
// q(sum x_i e_i) = sum x_i^2 q_i + sum_{i<j} x_i x_j b_ij (mod 1).
struct MetricGroup {
  std::vector<int> orders;
  std::vector<Rat> diag;                  // q(e_i)
  std::vector<std::vector<Rat>> offdiag;  // offdiag[i][j - i - 1] = b(e_i, e_j)

  int order() const;
  Rat q(const std::vector<int>& x) const;
  Rat bilinear(const std::vector<int>& x, const std::vector<int>& y) const;
  // well-definedness and non-degeneracy; throws CatalogError
  void check() const;
  std::vector<int> element(int index) const;  // lexicographic, 0 = identity
};

// q(x) = a x^2 / n for odd n, a x^2 / (2n) for even n
MetricGroup cyclic_form(int n, Int a);
MetricGroup diagonal_form(const std::vector<int>& orders, const std::vector<Rat>& qs);

// simples = group elements, theta_a = e^(2 pi i q(a)), s_{ab} = e^(2 pi i b(a,b))
ModularData metric_group_pointed(const MetricGroup& mg);

// Kronecker product of s, outer product of twists
ModularData deligne_product(const ModularData& a, const ModularData& b);

// Deterministic corpus: rank-1, semion, anti-semion, toric code, Ising,
// Z_n pointed for odd 3 <= n <= limit over all gcd(a, n) = 1, the Z_4 forms,
// the Z_3 x Z_3 diagonal forms, and every odd pointed x (anti)semion product.
std::vector<ModularData> standard_corpus(int limit);

// semion | antisemion | ising | toric
ModularData preset(const std::string& name);

const char* ising_fixture_text();
const char* toric_fixture_text();

}  // namespace modkit
