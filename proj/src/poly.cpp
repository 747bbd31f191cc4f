#include "renhopf/poly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace renhopf {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("malformed rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) throw bad();
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
  };
  Rational r;
  if (slash == std::string::npos) {
    check_int(s);
    r = Rational(mpz_class(s[0] == '+' ? s.substr(1) : s));
  } else {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    mpz_class d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) throw bad();
    r = Rational(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
  }
  r.canonicalize();
  return r;
}

namespace {

struct VarTable {
  std::mutex mu;
  std::unordered_map<std::string, VarId> ids;
  std::deque<std::string> names;
};

VarTable& vars() {
  static VarTable table;
  return table;
}

}  // namespace

VarId var_id(const std::string& name) {
  auto& t = vars();
  std::lock_guard lock(t.mu);
  auto it = t.ids.find(name);
  if (it != t.ids.end()) return it->second;
  VarId id = static_cast<VarId>(t.names.size());
  t.names.push_back(name);
  t.ids.emplace(name, id);
  return id;
}

const std::string& var_name(VarId id) {
  auto& t = vars();
  std::lock_guard lock(t.mu);
  return t.names.at(id);
}

PowerProduct PowerProduct::of(VarId v, int exp) {
  PowerProduct p;
  if (exp != 0) p.factors_.emplace_back(v, exp);
  return p;
}

int PowerProduct::degree(VarId v) const {
  for (auto& [id, e] : factors_)
    if (id == v) return e;
  return 0;
}

int PowerProduct::total_degree() const {
  int d = 0;
  for (auto& f : factors_) d += f.second;
  return d;
}

PowerProduct PowerProduct::operator*(const PowerProduct& other) const {
  PowerProduct out;
  auto a = factors_.begin(), b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      int e = a->second + b->second;
      if (e != 0) out.factors_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return out;
}

PowerProduct PowerProduct::without(VarId v) const {
  PowerProduct out;
  for (auto& f : factors_)
    if (f.first != v) out.factors_.push_back(f);
  return out;
}

bool PowerProduct::divide(const PowerProduct& other, PowerProduct& out) const {
  PowerProduct q = *this;
  for (auto& [v, e] : other.factors_) {
    auto it = std::find_if(q.factors_.begin(), q.factors_.end(),
                           [v = v](auto& f) { return f.first == v; });
    if (it == q.factors_.end() || it->second < e) return false;
    it->second -= e;
    if (it->second == 0) q.factors_.erase(it);
  }
  out = std::move(q);
  return true;
}

PowerProduct PowerProduct::gcd(const PowerProduct& other) const {
  PowerProduct out;
  for (auto& [v, e] : factors_) {
    int o = other.degree(v);
    if (o > 0) out.factors_.emplace_back(v, std::min(e, o));
  }
  return out;
}

std::string PowerProduct::str() const {
  std::vector<std::pair<std::string, int>> named;
  for (auto& [v, e] : factors_) named.emplace_back(var_name(v), e);
  std::sort(named.begin(), named.end());
  std::string out;
  for (auto& [n, e] : named) {
    if (!out.empty()) out += '*';
    out += n;
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(PowerProduct{}, c);
}

Poly Poly::var(const std::string& name) { return var(var_id(name)); }

Poly Poly::var(VarId v) { return term(Rational(1), PowerProduct::of(v)); }

Poly Poly::term(const Rational& c, const PowerProduct& m) {
  Poly p;
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const PowerProduct& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
  auto it = terms_.find(PowerProduct{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree(VarId v) const {
  int d = 0;
  for (auto& t : terms_) d = std::max(d, t.first.degree(v));
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (auto& t : terms_) d = std::max(d, t.first.total_degree());
  return d;
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

Poly Poly::coefficient(VarId v, int k) const {
  Poly out;
  for (auto& [m, c] : terms_)
    if (m.degree(v) == k) out.add_term(m.without(v), c);
  return out;
}

Poly Poly::substitute(VarId v, const Poly& value) const {
  return substitute(std::map<VarId, Poly>{{v, value}});
}

Poly Poly::substitute(const std::map<VarId, Poly>& values) const {
  Poly out;
  std::map<std::pair<VarId, int>, Poly> powers;
  for (auto& [m, c] : terms_) {
    Poly t(c);
    PowerProduct rest;
    for (auto& [v, e] : m.factors()) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest = rest * PowerProduct::of(v, e);
        continue;
      }
      auto key = std::make_pair(v, e);
      auto pit = powers.find(key);
      if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(e)).first;
      t *= pit->second;
    }
    out += t * Poly::term(Rational(1), rest);
  }
  return out;
}

Poly Poly::derivative(VarId v) const {
  Poly out;
  for (auto& [m, c] : terms_) {
    int e = m.degree(v);
    if (e == 0) continue;
    out.add_term(m.without(v) * PowerProduct::of(v, e - 1), c * e);
  }
  return out;
}

std::vector<VarId> Poly::variables() const {
  std::vector<VarId> out;
  for (auto& t : terms_)
    for (auto& f : t.first.factors()) out.push_back(f.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Poly Poly::primitive_part() const {
  if (terms_.empty()) return {};
  PowerProduct g = terms_.begin()->first;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (auto& [m, c] : terms_) {
    g = g.gcd(m);
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Poly out;
  for (auto& [m, c] : terms_) {
    PowerProduct q;
    m.divide(g, q);
    out.add_term(q, c * Rational(den_lcm, num_gcd));
  }
  // Sign: make the coefficient of the first term in printed order positive.
  std::string s = out.str();
  if (!s.empty() && s[0] == '-') out *= Rational(-1);
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<PowerProduct, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](auto& a, auto& b) {
    int da = a.first.total_degree(), db = b.first.total_degree();
    if (da != db) return da > db;
    return a.first.str() < b.first.str();
  });
  std::string out;
  bool first = true;
  for (auto& [m, c] : ordered) {
    Rational mag = abs(c);
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string ms = m.str();
    if (ms.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + '*';
      out += ms;
    }
  }
  return out;
}

}  // namespace renhopf
