#pragma once

// Fusion-subcategory machinery over validated modular data: generated
// subcategories, adjoint/pointed, the group of invertibles, the universal
// grading, Mueger centralizers and the symmetric/modular classification.

#include <string>
#include <vector>

#include "modkit/modular_data.hpp"

namespace modkit {

enum class Scode {
  NonGroupFusion,
  GradingInconsistent,
  TwistNotPlusMinusOneOnSymmetric,
};
const char* scode_name(Scode c);

struct StructureError : Error {
  StructureError(Scode c, const std::string& msg)
      : Error(std::string(scode_name(c)) + ": " + msg), code(c) {}
  Scode code;
};

// a fusion subcategory, as the sorted set of its simple indices
struct Subcat {
  const ModularData* owner = nullptr;
  std::vector<int> members;

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int i) const {
    return std::binary_search(members.begin(), members.end(), i);
  }
  bool operator==(const Subcat& o) const { return members == o.members; }
  bool operator!=(const Subcat& o) const { return !(*this == o); }
};

Subcat trivial_subcat(const ModularData& md);
Subcat whole_category(const ModularData& md);
Subcat intersect(const Subcat& a, const Subcat& b);
bool subset_of(const Subcat& a, const Subcat& b);

// least fusion- and dual-closed superset of seed plus the unit
Subcat generated(const ModularData& md, const std::vector<int>& seed);

// closure of the simple summands of X (x) X* over all simples
Subcat adjoint_subcategory(const ModularData& md);
// same computation restricted to the members of k
Subcat adjoint_within(const ModularData& md, const Subcat& k);
Subcat pointed_subcategory(const ModularData& md);

struct AbelianGroupTable {
  std::vector<int> elements;  // invertible simple indices, ascending; 0 first
  Eigen::MatrixXi table;      // positions into elements
  std::vector<Int> invariant_factors;  // ascending divisor chain

  int order() const { return static_cast<int>(elements.size()); }
  int position(int simple_index) const;
  int mul(int a, int b) const { return table(a, b); }
  int inverse(int a) const;
  int element_order(int a) const;
};
AbelianGroupTable invertibles(const ModularData& md);

// universal grading via characters g -> s(g, X) / d_X of the invertibles
struct GradingAssignment {
  // degree of each simple as a character of G(C): root-of-unity exponents
  // (base zeta_M, M = md.root_order()) over the invertibles in table order
  std::vector<std::vector<Int>> degree;
  std::vector<int> component;                // component id per simple; 0 = trivial
  std::vector<std::vector<int>> components;  // partition of the simples

  int group_order() const { return static_cast<int>(components.size()); }
};
GradingAssignment universal_grading(const ModularData& md);
// order of the degree character attached to a component
Int grading_character_order(const ModularData& md, const GradingAssignment& g, int comp);

// { Y : s(X, Y) = d_X d_Y for all X in k }
Subcat centralizer(const ModularData& md, const Subcat& k);

enum class SubcatClass {
  Modular,
  SymmetricTannakian,
  SymmetricSuperTannakian,
  NonDegenerateOther,
  Degenerate,
};
const char* subcat_class_name(SubcatClass c);
SubcatClass classify_subcategory(const ModularData& md, const Subcat& k);

bool is_fermion(const ModularData& md, int i);
int self_dual_count(const ModularData& md);
bool is_mnsd(const ModularData& md);
Cyc subcat_fpdim(const ModularData& md, const Subcat& k);

// Lattice sample for verification: closures of invertible subsets (i.e. the
// subgroup lattice of G(C)) plus single non-invertible generators; the full
// powerset of simples when rank <= 12. Deduplicated, deterministic order.
std::vector<Subcat> subcategory_lattice(const ModularData& md);

}  // namespace modkit
