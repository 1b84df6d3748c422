#include "modkit/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace modkit {

namespace {

constexpr int kMaxConductor = 100000;
constexpr double kPi = 3.14159265358979323846;

std::vector<int> divisors_of(int n) {
  std::vector<int> out;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// exact polynomial division over Z, coefficients lowest first; remainder must vanish
std::vector<mpz_class> exact_div(const std::vector<mpz_class>& num,
                                 const std::vector<mpz_class>& den) {
  std::vector<mpz_class> rem = num;
  const std::size_t dd = den.size() - 1;
  if (num.size() <= dd) throw Error("exact_div: degree underflow");
  std::vector<mpz_class> quot(num.size() - dd);
  for (std::size_t qi = quot.size(); qi-- > 0;) {
    mpz_class c = rem[qi + dd] / den[dd];
    if (c * den[dd] != rem[qi + dd]) throw Error("exact_div: not divisible");
    quot[qi] = c;
    for (std::size_t i = 0; i <= dd; ++i) rem[qi + i] -= c * den[i];
  }
  for (const auto& r : rem)
    if (r != 0) throw Error("exact_div: nonzero remainder");
  return quot;
}

// memoized Phi_n over Z, coefficients lowest first
const std::vector<mpz_class>& cyclo_poly(int n) {
  static std::map<int, std::vector<mpz_class>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  std::function<const std::vector<mpz_class>&(int)> get = [&](int m) -> const std::vector<mpz_class>& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<mpz_class> p(m + 1);
    p[0] = -1;
    p[m] = 1;  // x^m - 1
    for (int d : divisors_of(m))
      if (d != m) p = exact_div(p, get(d));
    return cache.emplace(m, std::move(p)).first->second;
  };
  return get(n);
}

Int narrow(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error("cyclotomic table coefficient exceeds 64 bits");
  return z.get_si();
}

std::shared_ptr<const ConductorTable> build_table(int n) {
  if (n < 1 || n > kMaxConductor) throw Error("conductor out of range: " + std::to_string(n));
  auto t = std::make_shared<ConductorTable>();
  t->n = n;
  const auto& phi = cyclo_poly(n);
  t->deg = static_cast<int>(phi.size()) - 1;
  t->limit = n + 2 * t->deg + 2;

  // rows: x^k mod Phi_n for k in [deg, limit)
  std::vector<mpz_class> cur(t->deg);
  for (int i = 0; i < t->deg; ++i) cur[i] = -phi[i];  // x^deg
  t->rows.reserve(t->limit - t->deg);
  auto push_row = [&](const std::vector<mpz_class>& v) {
    std::vector<std::pair<int, Int>> row;
    Int l1 = 0;
    for (int i = 0; i < t->deg; ++i)
      if (v[i] != 0) {
        Int c = narrow(v[i]);
        row.emplace_back(i, c);
        l1 += std::llabs(c);
      }
    t->max_row_l1 = std::max(t->max_row_l1, std::max<Int>(l1, 1));
    t->rows.push_back(std::move(row));
  };
  push_row(cur);
  for (int k = t->deg + 1; k < t->limit; ++k) {
    std::vector<mpz_class> next(t->deg);
    for (int i = 1; i < t->deg; ++i) next[i] = cur[i - 1];
    const mpz_class top = cur[t->deg - 1];
    if (top != 0)
      for (int i = 0; i < t->deg; ++i) next[i] -= top * phi[i];
    cur = std::move(next);
    push_row(cur);
  }

  // roots of unity: zeta_M^j for M = lcm(2, n)
  t->root_order = (n % 2 == 0) ? n : 2 * n;
  auto monomial = [&](bool negate, int e) {
    std::vector<std::pair<int, Int>> v;
    Int sign = negate ? -1 : 1;
    if (e < t->deg) {
      v.emplace_back(e, sign);
    } else {
      for (const auto& [i, c] : t->row(e)) v.emplace_back(i, sign * c);
    }
    return v;
  };
  t->roots.reserve(t->root_order);
  for (int j = 0; j < t->root_order; ++j) {
    if (n % 2 == 0) {
      t->roots.push_back(monomial(false, j));
    } else if (j % 2 == 0) {
      t->roots.push_back(monomial(false, (j / 2) % n));
    } else {
      t->roots.push_back(monomial(true, ((j + n) % (2 * n)) / 2 % n));
    }
  }

  t->zeta_pow.resize(t->deg);
  for (int k = 0; k < t->deg; ++k)
    t->zeta_pow[k] = std::polar(1.0, 2.0 * kPi * k / n);
  return t;
}

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> tol = [] {
    if (const char* env = std::getenv("MODKIT_TOLERANCE")) {
      double v = std::atof(env);
      if (v > 0) return v;
    }
    return 1e-9;
  }();
  return tol;
}

}  // namespace

Rat rat_mod1(const Rat& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return q - Rat(fl);
}

Rat make_rat(Int n, Int d) {
  if (d == 0) throw DivisionByZero("rational with zero denominator");
  Rat r(static_cast<long>(n), static_cast<long>(d));
  r.canonicalize();
  return r;
}

double embed_tolerance() { return tolerance_slot().load(); }
void set_embed_tolerance(double tol) { tolerance_slot().store(tol); }

Int gcd_ll(Int a, Int b) { return std::gcd(a, b); }
Int lcm_ll(Int a, Int b) { return a / std::gcd(a, b) * b; }

std::shared_ptr<const ConductorTable> conductor_table(int n) {
  static std::map<int, std::shared_ptr<const ConductorTable>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto t = build_table(n);
  cache.emplace(n, t);
  return t;
}

// ---------------------------------------------------------------- Cyc

namespace {

// fold raw (exponent, coeff) pairs, exponents within [0, limit), into the
// reduced sparse basis form
std::vector<std::pair<int, Rat>> reduce_raw(const ConductorTable& t,
                                            std::vector<std::pair<int, Rat>>&& raw) {
  std::vector<std::pair<int, Rat>> flat;
  flat.reserve(raw.size());
  for (auto& [e, c] : raw) {
    if (c == 0) continue;
    if (e < t.deg) {
      flat.emplace_back(e, std::move(c));
    } else {
      for (const auto& [i, f] : t.row(e)) flat.emplace_back(i, c * static_cast<long>(f));
    }
  }
  std::sort(flat.begin(), flat.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, Rat>> out;
  out.reserve(flat.size());
  for (auto& [e, c] : flat) {
    if (!out.empty() && out.back().first == e)
      out.back().second += c;
    else
      out.emplace_back(e, std::move(c));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& p) { return p.second == 0; }),
            out.end());
  return out;
}

const std::shared_ptr<const ConductorTable>& table_one() {
  static const std::shared_ptr<const ConductorTable> t = conductor_table(1);
  return t;
}

}  // namespace

const ConductorTable& Cyc::table() const { return *tab_; }

void Cyc::normalize() {
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const auto& p) { return p.second == 0; }),
               terms_.end());
  if (n_ != 1 && (terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0))) {
    n_ = 1;
    tab_ = table_one();
  }
}

Cyc::Cyc(Int v) : n_(1), tab_(table_one()) {
  if (v != 0) terms_.emplace_back(0, Rat(static_cast<long>(v)));
}

Cyc::Cyc(const Rat& v) : n_(1), tab_(table_one()) {
  if (v != 0) terms_.emplace_back(0, v);
}

Cyc Cyc::zeta(int n, Int k) {
  Cyc v;
  v.n_ = n;
  v.tab_ = conductor_table(n);
  k %= n;
  if (k < 0) k += n;
  std::vector<std::pair<int, Rat>> raw;
  raw.emplace_back(static_cast<int>(k), Rat(1));
  v.terms_ = reduce_raw(*v.tab_, std::move(raw));
  v.normalize();
  return v;
}

Cyc Cyc::from_powers(int n, const std::vector<std::pair<Int, Rat>>& powers) {
  Cyc v;
  v.n_ = n;
  v.tab_ = conductor_table(n);
  std::vector<std::pair<int, Rat>> raw;
  raw.reserve(powers.size());
  for (const auto& [e, c] : powers) {
    Int em = e % n;
    if (em < 0) em += n;
    raw.emplace_back(static_cast<int>(em), c);
  }
  v.terms_ = reduce_raw(*v.tab_, std::move(raw));
  v.normalize();
  return v;
}

std::vector<std::pair<int, Rat>> Cyc::lifted_terms(int to_conductor) const {
  if (to_conductor == n_) return terms_;
  const auto tab = conductor_table(to_conductor);
  const int scale = to_conductor / n_;
  std::vector<std::pair<int, Rat>> raw;
  raw.reserve(terms_.size());
  for (const auto& [e, c] : terms_) raw.emplace_back(e * scale, c);
  return reduce_raw(*tab, std::move(raw));
}

Cyc lift_to(const Cyc& v, int n) {
  Cyc out;
  out.n_ = n;
  out.tab_ = conductor_table(n);
  out.terms_ = v.lifted_terms(n);
  out.normalize();
  return out;
}

std::optional<Rat> Cyc::as_rational() const {
  if (terms_.empty()) return Rat(0);
  if (terms_.size() == 1 && terms_[0].first == 0) return terms_[0].second;
  return std::nullopt;
}

std::optional<Int> Cyc::as_integer_opt() const {
  auto r = as_rational();
  if (!r || (*r).get_den() != 1) return std::nullopt;
  if (!(*r).get_num().fits_slong_p()) return std::nullopt;
  return (*r).get_num().get_si();
}

Int Cyc::as_integer() const {
  auto v = as_integer_opt();
  if (!v) throw NotAnInteger("value is not a rational integer: " + to_string());
  return *v;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  const int n = static_cast<int>(lcm_ll(n_, o.n_));
  auto tab = (n == n_ && tab_) ? tab_ : (n == o.n_ && o.tab_ ? o.tab_ : conductor_table(n));
  auto a = lifted_terms(n);
  auto b = o.lifted_terms(n);
  std::vector<std::pair<int, Rat>> merged;
  merged.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      merged.push_back(std::move(a[i++]));
    else if (i == a.size() || b[j].first < a[i].first)
      merged.push_back(std::move(b[j++]));
    else {
      merged.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  n_ = n;
  tab_ = std::move(tab);
  terms_ = std::move(merged);
  normalize();
  return *this;
}

Cyc Cyc::operator-() const {
  Cyc v = *this;
  for (auto& [e, c] : v.terms_) c = -c;
  return v;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc& Cyc::operator*=(const Cyc& o) {
  if (is_zero() || o.is_zero()) {
    *this = Cyc();
    return *this;
  }
  const int n = static_cast<int>(lcm_ll(n_, o.n_));
  auto tab = (n == n_ && tab_) ? tab_ : (n == o.n_ && o.tab_ ? o.tab_ : conductor_table(n));
  auto a = lifted_terms(n);
  auto b = o.lifted_terms(n);
  std::vector<std::pair<int, Rat>> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) raw.emplace_back(ea + eb, ca * cb);
  n_ = n;
  tab_ = tab;
  terms_ = reduce_raw(*tab, std::move(raw));
  normalize();
  return *this;
}

bool Cyc::operator==(const Cyc& o) const {
  if (n_ == o.n_) return terms_ == o.terms_;
  const int n = static_cast<int>(lcm_ll(n_, o.n_));
  return lifted_terms(n) == o.lifted_terms(n);
}

Cyc Cyc::conj() const { return galois(n_ - 1 <= 0 ? 1 : n_ - 1); }

Cyc Cyc::galois(Int a) const {
  if (n_ == 1) return *this;
  a %= n_;
  if (a < 0) a += n_;
  if (gcd_ll(a, n_) != 1) throw Error("galois exponent not coprime to conductor");
  Cyc v;
  v.n_ = n_;
  v.tab_ = tab_ ? tab_ : conductor_table(n_);
  std::vector<std::pair<int, Rat>> raw;
  raw.reserve(terms_.size());
  for (const auto& [e, c] : terms_) raw.emplace_back(static_cast<int>((e * a) % n_), c);
  v.terms_ = reduce_raw(*v.tab_, std::move(raw));
  v.normalize();
  return v;
}

Cyc Cyc::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (auto r = as_rational()) return Cyc(Rat(1) / *r);
  // product of the nontrivial Galois conjugates; self * prod is the field
  // norm, a nonzero rational
  Cyc prod(1);
  for (Int a = 2; a < n_; ++a)
    if (gcd_ll(a, n_) == 1) prod *= galois(a);
  Cyc norm = *this * prod;
  auto r = norm.as_rational();
  if (!r || *r == 0) throw Error("norm computation failed");  // unreachable on reduced input
  prod *= Cyc(Rat(1) / *r);
  return prod;
}

Cyc Cyc::pow(Int e) const {
  if (e < 0) return inv().pow(-e);
  Cyc acc(1), base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base = (e >>= 1) ? base * base : base;
  }
  return acc;
}

bool Cyc::is_real() const { return *this == conj(); }

bool Cyc::is_positive_real() const {
  return is_real() && embed().real() > embed_tolerance();
}

std::complex<double> Cyc::embed() const {
  std::complex<double> acc(0, 0);
  if (terms_.empty()) return acc;
  const auto& t = table();
  for (const auto& [e, c] : terms_) acc += c.get_d() * t.zeta_pow[e];
  return acc;
}

std::optional<Int> Cyc::root_of_unity_index(int conductor) const {
  if (terms_.empty()) return std::nullopt;
  if (conductor % n_ != 0) return std::nullopt;  // value not in Q(zeta_conductor)
  const auto tab = conductor_table(conductor);
  const auto lifted = lifted_terms(conductor);
  const auto z = embed();
  if (std::abs(std::abs(z) - 1.0) > 0.1) return std::nullopt;
  const int m = tab->root_order;
  double ang = std::arg(z) / (2.0 * kPi) * m;
  Int j = std::llround(ang);
  j %= m;
  if (j < 0) j += m;
  const auto& root = tab->roots[j];
  if (root.size() != lifted.size()) return std::nullopt;
  for (std::size_t i = 0; i < root.size(); ++i)
    if (lifted[i].first != root[i].first ||
        lifted[i].second != static_cast<long>(root[i].second))
      return std::nullopt;
  return j;
}

std::string Cyc::to_string() const { return format_cyc_literal(*this, n_); }

// ------------------------------------------------------- literal grammar

namespace {

struct Lexer {
  std::string_view s;
  std::size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw LiteralError(what + " at position " + std::to_string(pos), pos);
  }
  mpz_class integer(bool allow_sign) {
    skip_ws();
    std::size_t start = pos;
    if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) fail("expected integer");
    return mpz_class(std::string(s.substr(start, pos - start)));
  }
};

}  // namespace

Cyc parse_cyc_literal(std::string_view text, int conductor) {
  if (conductor < 1) throw LiteralError("conductor must be positive", 0);
  Lexer lx{text};
  std::vector<std::pair<Int, Rat>> powers;

  auto parse_zpow = [&]() -> Int {
    ++lx.pos;  // 'z'
    if (lx.eat('^')) {
      mpz_class e = lx.integer(true);
      mpz_class em = e % conductor;
      if (em < 0) em += conductor;
      return em.get_si();
    }
    return 1;
  };

  bool first = true;
  while (true) {
    lx.skip_ws();
    int sign = 1;
    if (first) {
      if (lx.eat('-'))
        sign = -1;
      else
        lx.eat('+');
    } else {
      if (lx.pos >= lx.s.size()) break;
      if (lx.eat('-'))
        sign = -1;
      else if (lx.eat('+'))
        sign = 1;
      else
        lx.fail("expected '+' or '-'");
    }
    lx.skip_ws();
    if (lx.pos >= lx.s.size()) lx.fail("expected term");
    Rat coeff(sign);
    Int expo = 0;
    if (lx.s[lx.pos] == 'z') {
      expo = parse_zpow();
    } else {
      mpz_class num = lx.integer(true);
      mpz_class den = 1;
      if (lx.eat('/')) {
        den = lx.integer(false);
        if (den <= 0) lx.fail("expected positive denominator");
      }
      Rat r(num, den);
      r.canonicalize();
      coeff = sign < 0 ? Rat(-r) : r;
      if (lx.eat('*')) {
        lx.skip_ws();
        if (lx.pos >= lx.s.size() || lx.s[lx.pos] != 'z') lx.fail("expected 'z'");
        expo = parse_zpow();
      }
    }
    powers.emplace_back(expo, coeff);
    first = false;
  }
  lx.skip_ws();
  if (lx.pos != lx.s.size()) lx.fail("trailing input");
  if (powers.empty()) throw LiteralError("empty expression", 0);
  return Cyc::from_powers(conductor, powers);
}

std::string format_cyc_literal(const Cyc& v, int conductor) {
  if (conductor % v.conductor() != 0)
    throw Error("conductor " + std::to_string(conductor) + " does not contain value field");
  const Cyc lifted = lift_to(v, conductor);
  if (lifted.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : lifted.terms()) {
    const bool neg = c < 0;
    const Rat mag = neg ? Rat(-c) : c;
    std::string core;
    if (e == 0) {
      core = mag.get_str();
    } else {
      std::string zp = (e == 1) ? "z" : "z^" + std::to_string(e);
      core = (mag == 1) ? zp : mag.get_str() + "*" + zp;
    }
    if (first) {
      if (neg) out << (e == 0 ? "-" + core : (mag == 1 ? "-1*" : "-") + core);
      else out << core;
      first = false;
    } else {
      out << (neg ? " - " : " + ") << core;
    }
  }
  return out.str();
}

CycMatrix conj(const CycMatrix& m) {
  CycMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).conj();
  return out;
}

Eigen::MatrixXcd embed(const CycMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).embed();
  return out;
}

}  // namespace modkit
