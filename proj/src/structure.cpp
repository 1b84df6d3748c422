#include "modkit/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace modkit {

const char* scode_name(Scode c) {
  switch (c) {
    case Scode::NonGroupFusion: return "NonGroupFusion";
    case Scode::GradingInconsistent: return "GradingInconsistent";
    case Scode::TwistNotPlusMinusOneOnSymmetric: return "TwistNotPlusMinusOneOnSymmetric";
  }
  return "Unknown";
}

Subcat trivial_subcat(const ModularData& md) { return Subcat{&md, {0}}; }

Subcat whole_category(const ModularData& md) {
  Subcat k{&md, {}};
  k.members.resize(md.rank);
  std::iota(k.members.begin(), k.members.end(), 0);
  return k;
}

Subcat intersect(const Subcat& a, const Subcat& b) {
  Subcat out{a.owner, {}};
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(out.members));
  return out;
}

bool subset_of(const Subcat& a, const Subcat& b) {
  return std::includes(b.members.begin(), b.members.end(), a.members.begin(),
                       a.members.end());
}

Subcat generated(const ModularData& md, const std::vector<int>& seed) {
  std::vector<char> in(md.rank, 0);
  std::vector<int> work;
  auto add = [&](int i) {
    if (!in[i]) {
      in[i] = 1;
      work.push_back(i);
    }
  };
  add(0);
  for (int i : seed) {
    add(i);
    add(md.dual[i]);
  }
  // fixed point over fusion products of the current members
  for (std::size_t w = 0; w < work.size(); ++w) {
    const int i = work[w];
    for (std::size_t v = 0; v <= w; ++v) {
      const int j = work[v];
      for (int k = 0; k < md.rank; ++k)
        if (md.fusion.coeff(i, j, k) > 0) {
          add(k);
          add(md.dual[k]);
        }
    }
  }
  Subcat out{&md, {}};
  for (int i = 0; i < md.rank; ++i)
    if (in[i]) out.members.push_back(i);
  return out;
}

Subcat adjoint_within(const ModularData& md, const Subcat& k) {
  std::vector<int> seed;
  for (int x : k.members) {
    const int xs = md.dual[x];
    for (int m = 0; m < md.rank; ++m)
      if (md.fusion.coeff(x, xs, m) > 0) seed.push_back(m);
  }
  return generated(md, seed);
}

Subcat adjoint_subcategory(const ModularData& md) {
  return adjoint_within(md, whole_category(md));
}

Subcat pointed_subcategory(const ModularData& md) {
  Subcat out{&md, {}};
  for (int i = 0; i < md.rank; ++i)
    if (md.is_invertible(i)) out.members.push_back(i);
  return out;
}

// ------------------------------------------------------------- invertibles

int AbelianGroupTable::position(int simple_index) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), simple_index);
  if (it == elements.end() || *it != simple_index) return -1;
  return static_cast<int>(it - elements.begin());
}

int AbelianGroupTable::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (table(a, b) == 0) return b;
  throw StructureError(Scode::NonGroupFusion, "element without inverse");
}

int AbelianGroupTable::element_order(int a) const {
  int ord = 1, cur = a;
  while (cur != 0) {
    cur = table(cur, a);
    ++ord;
  }
  return ord;
}

namespace {

// Primary-part partition of the p-Sylow subgroup from element orders.
// With m_j = #{x : p-part of ord(x) divides p^j} one has log_p(m_j) =
// sum_i min(lambda_i, j), so mu_j := log_p(m_j / m_{j-1}) counts the parts
// of size >= j and lambda is the conjugate partition of mu.
std::vector<int> sylow_partition(const std::vector<int>& orders, Int p) {
  auto vp = [&](int n) {
    int v = 0;
    while (n % p == 0) {
      n /= static_cast<int>(p);
      ++v;
    }
    return v;
  };
  int vmax = 0;
  for (int o : orders) vmax = std::max(vmax, vp(o));
  std::vector<int> mu;
  Int prev = 0;
  for (int j = 0; j <= vmax; ++j) {
    Int cnt = 0;
    for (int o : orders)
      if (vp(o) <= j) ++cnt;
    if (j > 0) {
      if (prev == 0 || cnt % prev)
        throw StructureError(Scode::NonGroupFusion, "inconsistent p-group order counts");
      Int ratio = cnt / prev;
      int log = 0;
      while (ratio % p == 0) {
        ratio /= p;
        ++log;
      }
      if (ratio != 1)
        throw StructureError(Scode::NonGroupFusion, "inconsistent p-group order counts");
      mu.push_back(log);
    }
    prev = cnt;
  }
  std::vector<int> lambda;
  for (int i = 1; i <= (mu.empty() ? 0 : mu[0]); ++i) {
    int parts = 0;
    for (int m : mu)
      if (m >= i) ++parts;
    lambda.push_back(parts);
  }
  return lambda;
}

std::vector<Int> prime_factors_of(Int n) {
  std::vector<Int> primes;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) primes.push_back(n);
  return primes;
}

}  // namespace

AbelianGroupTable invertibles(const ModularData& md) {
  AbelianGroupTable g;
  for (int i = 0; i < md.rank; ++i)
    if (md.is_invertible(i)) g.elements.push_back(i);
  const int n = g.order();
  g.table = Eigen::MatrixXi::Constant(n, n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int hit = -1;
      for (int k = 0; k < md.rank; ++k) {
        const Int c = md.fusion.coeff(g.elements[a], g.elements[b], k);
        if (c == 0) continue;
        if (c != 1 || hit != -1)
          throw StructureError(Scode::NonGroupFusion, "invertible product not simple");
        hit = k;
      }
      const int pos = g.position(hit);
      if (pos < 0)
        throw StructureError(Scode::NonGroupFusion, "invertible product not invertible");
      g.table(a, b) = pos;
    }

  std::vector<int> orders(n);
  for (int a = 0; a < n; ++a) orders[a] = g.element_order(a);
  std::vector<std::vector<Int>> chains;  // one descending prime-power list per prime
  for (Int p : prime_factors_of(n)) {
    auto lambda = sylow_partition(orders, p);
    std::vector<Int> powers;
    for (int e : lambda) {
      Int v = 1;
      for (int t = 0; t < e; ++t) v *= p;
      powers.push_back(v);
    }
    chains.push_back(std::move(powers));
  }
  std::size_t width = 0;
  for (const auto& c : chains) width = std::max(width, c.size());
  std::vector<Int> inv(width, 1);
  for (const auto& c : chains)
    for (std::size_t i = 0; i < c.size(); ++i) inv[i] *= c[i];
  std::reverse(inv.begin(), inv.end());  // ascending divisor chain
  g.invariant_factors = std::move(inv);
  return g;
}

// ---------------------------------------------------------------- grading

GradingAssignment universal_grading(const ModularData& md) {
  const AbelianGroupTable g = invertibles(md);
  const int ng = g.order();
  const Int m = md.root_order();
  GradingAssignment out;
  out.degree.resize(md.rank);

  std::vector<Cyc> inv_dim(md.rank);
  for (int x = 0; x < md.rank; ++x)
    inv_dim[x] = md.is_invertible(x) ? Cyc(1) : md.dims(x).inv();

  for (int x = 0; x < md.rank; ++x) {
    out.degree[x].resize(ng);
    for (int a = 0; a < ng; ++a) {
      Cyc val = md.s(g.elements[a], x);
      if (!md.is_invertible(x)) val *= inv_dim[x];
      auto j = val.root_of_unity_index(md.conductor);
      if (!j)
        throw StructureError(Scode::GradingInconsistent,
                             "s(g, X)/d_X is not a root of unity at X = " + std::to_string(x));
      out.degree[x][a] = *j;
    }
  }

  std::map<std::vector<Int>, int> comp_of;
  out.component.resize(md.rank);
  for (int x = 0; x < md.rank; ++x) {
    auto [it, fresh] = comp_of.emplace(out.degree[x], static_cast<int>(out.components.size()));
    if (fresh) out.components.emplace_back();
    out.component[x] = it->second;
    out.components[it->second].push_back(x);
  }
  // trivial character first
  const std::vector<Int> trivial(ng, 0);
  auto tv = comp_of.find(trivial);
  if (tv == comp_of.end())
    throw StructureError(Scode::GradingInconsistent, "no trivial component");
  if (tv->second != 0) {
    const int t = tv->second;
    std::swap(out.components[0], out.components[t]);
    for (int& c : out.component)
      c = (c == 0) ? t : (c == t ? 0 : c);
  }

  if (static_cast<int>(out.components.size()) != ng)
    throw StructureError(Scode::GradingInconsistent,
                         "distinct degrees " + std::to_string(out.components.size()) +
                             " != |G(C)| = " + std::to_string(ng));
  // degree is multiplicative on every fusion summand
  for (int x = 0; x < md.rank; ++x)
    for (int y = x; y < md.rank; ++y)
      for (int k = 0; k < md.rank; ++k) {
        if (md.fusion.coeff(x, y, k) == 0) continue;
        for (int a = 0; a < ng; ++a)
          if ((out.degree[x][a] + out.degree[y][a]) % m != out.degree[k][a])
            throw StructureError(Scode::GradingInconsistent, "degree not multiplicative");
      }
  // trivial component is the adjoint subcategory, computed independently
  Subcat adj = adjoint_subcategory(md);
  if (out.components[0] != adj.members)
    throw StructureError(Scode::GradingInconsistent,
                         "trivial component differs from the adjoint subcategory");
  return out;
}

Int grading_character_order(const ModularData& md, const GradingAssignment& g, int comp) {
  const Int m = md.root_order();
  Int ord = 1;
  const int x = g.components[comp].front();
  for (Int e : g.degree[x]) ord = lcm_ll(ord, m / gcd_ll(e, m));
  return ord;
}

// ------------------------------------------------------------- centralizer

Subcat centralizer(const ModularData& md, const Subcat& k) {
  Subcat out{&md, {}};
  for (int y = 0; y < md.rank; ++y) {
    bool central = true;
    for (int x : k.members) {
      if (!(md.s(x, y) == md.dims(x) * md.dims(y))) {
        central = false;
        break;
      }
    }
    if (central) out.members.push_back(y);
  }
  return out;
}

const char* subcat_class_name(SubcatClass c) {
  switch (c) {
    case SubcatClass::Modular: return "Modular";
    case SubcatClass::SymmetricTannakian: return "SymmetricTannakian";
    case SubcatClass::SymmetricSuperTannakian: return "SymmetricSuperTannakian";
    case SubcatClass::NonDegenerateOther: return "NonDegenerateOther";
    case SubcatClass::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

SubcatClass classify_subcategory(const ModularData& md, const Subcat& k) {
  const Subcat cent = centralizer(md, k);
  const Subcat inter = intersect(k, cent);
  if (inter.size() == 1) return SubcatClass::Modular;
  if (subset_of(k, cent)) {
    bool all_one = true;
    for (int i : k.members) {
      if (md.theta(i) == Cyc(1)) continue;
      all_one = false;
      if (!(md.theta(i) == Cyc(-1)))
        throw StructureError(Scode::TwistNotPlusMinusOneOnSymmetric,
                             "theta_" + std::to_string(i) + " on symmetric subcategory");
    }
    return all_one ? SubcatClass::SymmetricTannakian : SubcatClass::SymmetricSuperTannakian;
  }
  return SubcatClass::Degenerate;
}

bool is_fermion(const ModularData& md, int i) {
  return md.fusion.coeff(i, i, 0) == 1 && md.is_invertible(i) && md.theta(i) == Cyc(-1);
}

int self_dual_count(const ModularData& md) {
  int count = 0;
  for (int i = 0; i < md.rank; ++i)
    if (md.dual[i] == i) ++count;
  return count;
}

bool is_mnsd(const ModularData& md) { return self_dual_count(md) == 1; }

Cyc subcat_fpdim(const ModularData& md, const Subcat& k) {
  Cyc acc;
  for (int i : k.members) acc += md.dims(i) * md.dims(i);
  return acc;
}

// ----------------------------------------------------------------- lattice

std::vector<Subcat> subcategory_lattice(const ModularData& md) {
  std::set<std::vector<int>> seen;
  std::vector<Subcat> out;
  auto push = [&](Subcat k) {
    if (seen.insert(k.members).second) out.push_back(std::move(k));
  };

  // subgroups of G(C) by closing under one added generator at a time;
  // every closure of a set of invertibles is one of these
  const AbelianGroupTable g = invertibles(md);
  std::set<std::vector<int>> groups;  // element positions
  std::vector<std::vector<int>> work{{0}};
  groups.insert({0});
  while (!work.empty()) {
    std::vector<int> h = std::move(work.back());
    work.pop_back();
    for (int add = 0; add < g.order(); ++add) {
      if (std::binary_search(h.begin(), h.end(), add)) continue;
      std::vector<char> in(g.order(), 0);
      for (int e : h) in[e] = 1;
      std::vector<int> queue(h);
      queue.push_back(add);
      in[add] = 1;
      for (std::size_t w = 0; w < queue.size(); ++w)
        for (std::size_t v = 0; v <= w; ++v) {
          const int prod = g.mul(queue[w], queue[v]);
          if (!in[prod]) {
            in[prod] = 1;
            queue.push_back(prod);
          }
        }
      std::vector<int> closed;
      for (int e = 0; e < g.order(); ++e)
        if (in[e]) closed.push_back(e);
      if (groups.insert(closed).second) work.push_back(std::move(closed));
    }
  }
  for (const auto& h : groups) {
    Subcat k{&md, {}};
    for (int pos : h) k.members.push_back(g.elements[pos]);
    std::sort(k.members.begin(), k.members.end());
    push(std::move(k));
  }

  for (int x = 0; x < md.rank; ++x)
    if (!md.is_invertible(x)) push(generated(md, {x}));

  if (md.rank <= 12) {
    for (unsigned mask = 0; mask < (1u << md.rank); ++mask) {
      std::vector<int> seed;
      for (int i = 0; i < md.rank; ++i)
        if (mask & (1u << i)) seed.push_back(i);
      push(generated(md, seed));
    }
  }

  std::sort(out.begin(), out.end(), [](const Subcat& a, const Subcat& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members < b.members;
  });
  return out;
}

}  // namespace modkit
