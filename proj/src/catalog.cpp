#include "modkit/catalog.hpp"

#include <numeric>

#include "modkit/mdio.hpp"
#include "modkit_fixture_data.hpp"

namespace modkit {

const char* ccode_name(Ccode c) {
  switch (c) {
    case Ccode::DegenerateForm: return "DegenerateForm";
    case Ccode::IllDefinedForm: return "IllDefinedForm";
  }
  return "Unknown";
}

int MetricGroup::order() const {
  int n = 1;
  for (int o : orders) n *= o;
  return n;
}

std::vector<int> MetricGroup::element(int index) const {
  std::vector<int> x(orders.size());
  for (int i = static_cast<int>(orders.size()); i-- > 0;) {
    x[i] = index % orders[i];
    index /= orders[i];
  }
  return x;
}

Rat MetricGroup::q(const std::vector<int>& x) const {
  Rat acc(0);
  const int r = static_cast<int>(orders.size());
  for (int i = 0; i < r; ++i) {
    acc += Rat(static_cast<long>(x[i]) * x[i]) * diag[i];
    for (int j = i + 1; j < r; ++j)
      acc += Rat(static_cast<long>(x[i]) * x[j]) * offdiag[i][j - i - 1];
  }
  return rat_mod1(acc);
}

Rat MetricGroup::bilinear(const std::vector<int>& x, const std::vector<int>& y) const {
  Rat acc(0);
  const int r = static_cast<int>(orders.size());
  for (int i = 0; i < r; ++i) {
    acc += Rat(2 * static_cast<long>(x[i]) * y[i]) * diag[i];
    for (int j = i + 1; j < r; ++j)
      acc += Rat(static_cast<long>(x[i]) * y[j] + static_cast<long>(x[j]) * y[i]) *
             offdiag[i][j - i - 1];
  }
  return rat_mod1(acc);
}

void MetricGroup::check() const {
  const int r = static_cast<int>(orders.size());
  if (static_cast<int>(diag.size()) != r || static_cast<int>(offdiag.size()) != r)
    throw CatalogError(Ccode::IllDefinedForm, "coefficient shape mismatch");
  auto integral = [](const Rat& v) { return v.get_den() == 1; };
  // q(x + n_i e_i) = q(x) for all x reduces to these generator conditions
  for (int i = 0; i < r; ++i) {
    const long n = orders[i];
    if (!integral(Rat(n * n) * diag[i]) || !integral(Rat(2 * n) * diag[i]))
      throw CatalogError(Ccode::IllDefinedForm,
                         "q(e_" + std::to_string(i) + ") incompatible with order " +
                             std::to_string(n));
    for (int j = i + 1; j < r; ++j) {
      const Rat b = offdiag[i][j - i - 1];
      if (!integral(Rat(n) * b) || !integral(Rat(static_cast<long>(orders[j])) * b))
        throw CatalogError(Ccode::IllDefinedForm,
                           "b(e_" + std::to_string(i) + ",e_" + std::to_string(j) + ")");
    }
  }
  // non-degeneracy: b(x, .) vanishes only at x = 0
  const int n = order();
  for (int ix = 1; ix < n; ++ix) {
    const std::vector<int> x = element(ix);
    bool radical = true;
    for (int g = 0; g < r && radical; ++g) {
      std::vector<int> e(r, 0);
      e[g] = 1;
      radical = bilinear(x, e) == 0;
    }
    if (radical)
      throw CatalogError(Ccode::DegenerateForm, "element " + std::to_string(ix) +
                                                    " pairs trivially with everything");
  }
}

MetricGroup cyclic_form(int n, Int a) {
  MetricGroup mg;
  mg.orders = {n};
  mg.diag = {make_rat(a, n % 2 ? n : 2LL * n)};
  mg.offdiag = {{}};
  return mg;
}

MetricGroup diagonal_form(const std::vector<int>& orders, const std::vector<Rat>& qs) {
  MetricGroup mg;
  mg.orders = orders;
  mg.diag = qs;
  mg.offdiag.resize(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i)
    mg.offdiag[i].assign(orders.size() - i - 1, Rat(0));
  return mg;
}

namespace {

std::string element_label(const std::vector<int>& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x[i]);
  }
  return out;
}

ModularData fixture(const char* text) { return validate(parse_mdfile(text)); }

}  // namespace

ModularData metric_group_pointed(const MetricGroup& mg) {
  mg.check();
  const int n = mg.order();
  std::vector<std::vector<int>> elems(n);
  std::vector<Rat> qv(n);
  for (int i = 0; i < n; ++i) {
    elems[i] = mg.element(i);
    qv[i] = mg.q(elems[i]);
  }
  Int conductor = 1;
  std::vector<std::vector<Rat>> bv(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i) {
    if (!qv[i].get_den().fits_slong_p())
      throw CatalogError(Ccode::IllDefinedForm, "denominator overflow");
    conductor = lcm_ll(conductor, qv[i].get_den().get_si());
    for (int j = i; j < n; ++j) {
      bv[i][j] = mg.bilinear(elems[i], elems[j]);
      bv[j][i] = bv[i][j];
      conductor = lcm_ll(conductor, bv[i][j].get_den().get_si());
    }
  }
  // v in [0,1) with denominator dividing the conductor -> exponent of zeta_N
  auto exponent = [conductor](const Rat& v) {
    Rat t = v * Rat(static_cast<long>(conductor));
    return t.get_num().get_si();
  };
  RawModularData raw;
  raw.rank = n;
  raw.conductor = static_cast<int>(conductor);
  raw.s = CycMatrix(n, n);
  raw.theta = CycVector(n);
  raw.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    raw.labels[i] = element_label(elems[i]);
    raw.theta(i) = Cyc::zeta(raw.conductor, exponent(qv[i]));
    for (int j = 0; j < n; ++j) raw.s(i, j) = Cyc::zeta(raw.conductor, exponent(bv[i][j]));
  }
  return validate(raw);
}

ModularData deligne_product(const ModularData& a, const ModularData& b) {
  RawModularData raw;
  raw.rank = a.rank * b.rank;
  raw.conductor = static_cast<int>(lcm_ll(a.conductor, b.conductor));
  raw.s = kron<Cyc>(a.s, b.s);
  raw.theta = CycVector(raw.rank);
  raw.labels.resize(raw.rank);
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < b.rank; ++j) {
      raw.theta(i * b.rank + j) = a.theta(i) * b.theta(j);
      raw.labels[i * b.rank + j] = a.labels[i] + "*" + b.labels[j];
    }
  if (!a.name.empty() || !b.name.empty()) raw.name = a.name + " x " + b.name;
  return validate(raw);
}

std::vector<ModularData> standard_corpus(int limit) {
  std::vector<ModularData> out;

  RawModularData rank1;
  rank1.rank = 1;
  rank1.conductor = 1;
  rank1.s = CycMatrix(1, 1);
  rank1.s(0, 0) = Cyc(1);
  rank1.theta = CycVector(1);
  rank1.theta(0) = Cyc(1);
  rank1.name = "Trivial";
  out.push_back(validate(rank1));

  ModularData semion = preset("semion");
  ModularData antisemion = preset("antisemion");
  out.push_back(semion);
  out.push_back(antisemion);
  out.push_back(preset("toric"));
  out.push_back(preset("ising"));

  std::vector<ModularData> odd_pointed;
  for (int n = 3; n <= limit; n += 2)
    for (Int a = 1; a < n; ++a)
      if (gcd_ll(a, n) == 1) {
        ModularData md = metric_group_pointed(cyclic_form(n, a));
        md.name = "Z" + std::to_string(n) + "[a=" + std::to_string(a) + "]";
        odd_pointed.push_back(md);
      }
  for (const ModularData& md : odd_pointed) out.push_back(md);

  for (Int a : {1, 3, 5, 7}) {
    ModularData md = metric_group_pointed(cyclic_form(4, a));
    md.name = "Z4[a=" + std::to_string(a) + "]";
    out.push_back(md);
  }
  for (Int a : {1, 2})
    for (Int b : {1, 2}) {
      ModularData md = metric_group_pointed(
          diagonal_form({3, 3}, {make_rat(a, 3), make_rat(b, 3)}));
      md.name = "Z3xZ3[" + std::to_string(a) + "," + std::to_string(b) + "]";
      out.push_back(md);
    }

  for (const ModularData& md : odd_pointed) {
    ModularData p1 = deligne_product(md, semion);
    p1.name = md.name + " x Semion";
    out.push_back(std::move(p1));
    ModularData p2 = deligne_product(md, antisemion);
    p2.name = md.name + " x AntiSemion";
    out.push_back(std::move(p2));
  }
  return out;
}

ModularData preset(const std::string& name) {
  if (name == "semion") {
    ModularData md = metric_group_pointed(cyclic_form(2, 1));
    md.name = "Semion";
    return md;
  }
  if (name == "antisemion") {
    ModularData md = metric_group_pointed(cyclic_form(2, 3));
    md.name = "AntiSemion";
    return md;
  }
  if (name == "ising") return fixture(fixture_data::kIsing);
  if (name == "toric") return fixture(fixture_data::kToric);
  throw Error("unknown preset: " + name);
}

const char* ising_fixture_text() { return fixture_data::kIsing; }
const char* toric_fixture_text() { return fixture_data::kToric; }

}  // namespace modkit
