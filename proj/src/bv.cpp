#include "renhopf/bv.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace renhopf {

SymbolTable::SymbolTable(const TheorySpec& spec) {
  for (const auto& f : spec.fields) {
    names_.push_back(f.name);
    form_.push_back(f.form_degree);
    ghost_.push_back(f.ghost_degree);
    source_.push_back(f.is_source);
  }
  partner_.assign(names_.size(), -1);
  for (std::size_t i = 0; i < spec.fields.size(); ++i) {
    const auto& f = spec.fields[i];
    if (!f.is_source || !f.partner) continue;
    int j = index(*f.partner);
    partner_[i] = j;
    partner_[j] = static_cast<int>(i);
  }
}

int SymbolTable::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown BV symbol '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

Atom SymbolTable::parse_atom(const std::string& token) const {
  auto it = std::find(names_.begin(), names_.end(), token);
  if (it != names_.end()) return {static_cast<int>(it - names_.begin()), false};
  if (token.size() > 1 && token[0] == 'd') {
    Atom a{index(token.substr(1)), true};
    if (is_source(a.sym)) throw std::invalid_argument("sources are never differentiated: '" + token + "'");
    return a;
  }
  throw std::invalid_argument("unknown BV symbol '" + token + "'");
}

int SymbolTable::parity(const Word& w) const {
  int p = 0;
  for (Atom a : w) p ^= parity(a);
  return p;
}

int SymbolTable::form(const Word& w) const {
  int f = 0;
  for (Atom a : w) f += form(a);
  return f;
}

// ---------------------------------------------------------------- LieExpr

LieExpr LieExpr::atom(Atom a, const Poly& c) {
  LieExpr x;
  x.add({a}, c);
  return x;
}

void LieExpr::add(const Word& w, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LieExpr& LieExpr::operator+=(const LieExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

LieExpr& LieExpr::operator-=(const LieExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

LieExpr operator*(const Poly& c, const LieExpr& x) {
  LieExpr out;
  for (const auto& [w, v] : x.terms_) out.add(w, c * v);
  return out;
}

LieExpr LieExpr::operator-() const { return Poly(-1) * *this; }

LieExpr LieExpr::substitute(const std::map<VarId, Poly>& values) const {
  LieExpr out;
  for (const auto& [w, c] : terms_) out.add(w, c.substitute(values));
  return out;
}

std::string LieExpr::str(const SymbolTable& t) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    std::string word;
    for (Atom a : w) word += (word.empty() ? "" : " ") + t.name(a);
    out += (out.empty() ? "" : " + ") + ("(" + c.str() + ") " + word);
  }
  return out;
}

LieExpr product(const LieExpr& x, const LieExpr& y) {
  LieExpr out;
  for (const auto& [wx, cx] : x.terms())
    for (const auto& [wy, cy] : y.terms()) {
      Word w = wx;
      w.insert(w.end(), wy.begin(), wy.end());
      out.add(w, cx * cy);
    }
  return out;
}

LieExpr bracket(const SymbolTable& t, const LieExpr& x, const LieExpr& y) {
  LieExpr out;
  for (const auto& [wx, cx] : x.terms())
    for (const auto& [wy, cy] : y.terms()) {
      Word xy = wx, yx = wy;
      xy.insert(xy.end(), wy.begin(), wy.end());
      yx.insert(yx.end(), wx.begin(), wx.end());
      Poly c = cx * cy;
      out.add(xy, c);
      out.add(yx, (t.parity(wx) & t.parity(wy)) ? c : -c);
    }
  return out;
}

LieExpr exterior_d(const SymbolTable& t, const LieExpr& x) {
  LieExpr out;
  for (const auto& [w, c] : x.terms()) {
    int p = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].d && !t.is_source(w[i].sym)) {
        Word v = w;
        v[i].d = true;
        out.add(v, p ? -c : c);
      }
      p ^= t.parity(w[i]);
    }
  }
  return out;
}

// ------------------------------------------------------------ trace words

namespace {

int tag_form(const SymbolTable& t, const TraceWord& w, Tag tag) {
  int f = 0;
  for (const auto& a : w)
    if (a.tag == tag) f += t.form(a.atom);
  return f;
}

// Positions of w in component order: 0-forms, then Left, then Right.
std::vector<int> component_order(const TraceWord& w) {
  std::vector<int> out;
  for (Tag tag : {Tag::Zero, Tag::Left, Tag::Right})
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i].tag == tag) out.push_back(static_cast<int>(i));
  return out;
}

// Sign relating the product of the atoms listed in `from` to the same atoms
// listed in `to` (atoms named by ids, odd[id] their parity).
int koszul(const std::vector<int>& from, const std::vector<int>& to, const std::vector<int>& odd) {
  std::vector<int> rank(odd.size(), -1);
  for (std::size_t i = 0; i < from.size(); ++i) rank[from[i]] = static_cast<int>(i);
  int inversions = 0;
  for (std::size_t i = 0; i < to.size(); ++i) {
    if (!odd[to[i]]) continue;
    for (std::size_t j = i + 1; j < to.size(); ++j)
      if (odd[to[j]] && rank[to[i]] > rank[to[j]]) ++inversions;
  }
  return (inversions % 2) ? -1 : 1;
}

std::vector<int> parities(const SymbolTable& t, const TraceWord& w) {
  std::vector<int> odd(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) odd[i] = t.parity(w[i].atom);
  return odd;
}

Tag flip(Tag tag) {
  if (tag == Tag::Left) return Tag::Right;
  if (tag == Tag::Right) return Tag::Left;
  return tag;
}

// Same term with the pairing sides exchanged: the word and the sign such
// that coefficient * value(w) = sign * coefficient * value(result).
std::pair<TraceWord, int> swap_sides(const SymbolTable& t, const TraceWord& w) {
  TraceWord v = w;
  for (auto& a : v) a.tag = flip(a.tag);
  std::vector<int> odd = parities(t, w);
  int sign = koszul(component_order(w), component_order(v), odd);
  if (tag_form(t, w, Tag::Left) % 2) sign = -sign;
  return {v, sign};
}

std::string trace_word_str(const SymbolTable& t, const TraceWord& w) {
  std::string out;
  for (const auto& a : w) {
    std::string s = t.name(a.atom);
    if (a.tag == Tag::Left) s += "<";
    if (a.tag == Tag::Right) s += ">";
    out += (out.empty() ? "" : " ") + s;
  }
  return "tr(" + out + ")";
}

}  // namespace

std::pair<TraceWord, int> canonical_trace_word(const SymbolTable& t, const TraceWord& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return {w, 1};
  if (tag_form(t, w, Tag::Left) != tag_form(t, w, Tag::Right)) return {{}, 0};
  for (const auto& a : w)
    if ((a.tag == Tag::Zero) != (t.form(a.atom) == 0))
      throw std::logic_error("trace word with a form atom outside the pairing");
  const std::vector<int> odd = parities(t, w);
  const std::vector<int> base = component_order(w);
  const int swap_sign = (tag_form(t, w, Tag::Left) % 2) ? -1 : 1;
  TraceWord best;
  int best_sign = 0;
  bool found = false, vanishes = false;
  for (int swap = 0; swap < 2; ++swap)
    for (int r = 0; r < n; ++r) {
      TraceWord cand(n);
      for (int j = 0; j < n; ++j) {
        cand[j] = w[(j + r) % n];
        if (swap) cand[j].tag = flip(cand[j].tag);
      }
      std::vector<int> seq;
      for (int j : component_order(cand)) seq.push_back((j + r) % n);
      int sign = koszul(base, seq, odd) * (swap ? swap_sign : 1);
      if (!found || cand < best) {
        best = std::move(cand);
        best_sign = sign;
        found = true;
        vanishes = false;
      } else if (cand == best && sign != best_sign) {
        vanishes = true;
      }
    }
  if (vanishes) return {best, 0};
  return {best, best_sign};
}

void Functional::add(const SymbolTable& t, const TraceWord& w, const Poly& c) {
  if (c.is_zero()) return;
  auto [key, sign] = canonical_trace_word(t, w);
  if (sign == 0) return;
  Poly v = sign > 0 ? c : -c;
  auto [it, inserted] = terms_.emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Functional& Functional::operator+=(const Functional& o) {
  for (const auto& [w, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Functional& Functional::operator-=(const Functional& o) {
  Functional neg = Poly(-1) * o;
  return *this += neg;
}

Functional operator*(const Poly& c, const Functional& f) {
  Functional out;
  if (c.is_zero()) return out;
  for (const auto& [w, v] : f.terms_) out.terms_.emplace(w, c * v);
  return out;
}

Functional Functional::substitute(const std::map<VarId, Poly>& values) const {
  Functional out;
  for (const auto& [w, c] : terms_) {
    Poly v = c.substitute(values);
    if (!v.is_zero()) out.terms_.emplace(w, v);
  }
  return out;
}

std::string Functional::str(const SymbolTable& t) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) out += (out.empty() ? "" : " + ") + ("(" + c.str() + ") " + trace_word_str(t, w));
  return out;
}

Functional trace_word(const SymbolTable& t, const TraceWord& w, const Poly& c) {
  std::vector<int> natural(w.size());
  std::iota(natural.begin(), natural.end(), 0);
  int sign = koszul(natural, component_order(w), parities(t, w));
  Functional f;
  f.add(t, w, sign > 0 ? c : -c);
  return f;
}

Functional pairing(const SymbolTable& t, const LieExpr& u, const LieExpr& v) {
  Functional out;
  for (const auto& [wu, cu] : u.terms())
    for (const auto& [wv, cv] : v.terms()) {
      TraceWord w;
      for (Atom a : wu) w.push_back({a, t.form(a) ? Tag::Left : Tag::Zero});
      for (Atom a : wv) w.push_back({a, t.form(a) ? Tag::Right : Tag::Zero});
      out += trace_word(t, w, cu * cv);
    }
  return out;
}

// ------------------------------------------------------------ derivatives

namespace {

// Remainder X of a term linear in `source`, written as tr(X K) with the
// components of X in word order; returns false if the term lacks K.
bool split_source(const SymbolTable& t, const TraceWord& w0, const Poly& c0, int source, Word& rest, Poly& coeff) {
  int count = 0;
  for (const auto& a : w0)
    if (a.atom.sym == source) ++count;
  if (count == 0) return false;
  if (count > 1) throw std::invalid_argument("source " + t.name(source) + " appears nonlinearly");
  TraceWord w = w0;
  int sign = 1;
  auto pos = [&] {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i].atom.sym == source) return static_cast<int>(i);
    return -1;
  };
  if (w[pos()].tag == Tag::Left) {
    auto [v, s] = swap_sides(t, w);
    w = v;
    sign *= s;
  }
  Tag ktag = w[pos()].tag;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (static_cast<int>(i) == pos()) continue;
    if (ktag == Tag::Right && w[i].tag == Tag::Right)
      throw std::invalid_argument("unsupported word shape: source shares its pairing side");
    if (ktag == Tag::Zero && w[i].tag != Tag::Zero)
      throw std::invalid_argument("unsupported word shape: 0-form source with a form pairing");
  }
  const int n = static_cast<int>(w.size());
  const int k = pos();
  // Rotate so the source is last; ids are positions in w.
  std::vector<int> seq;
  for (int j = 1; j <= n; ++j) seq.push_back((k + j) % n);
  sign *= koszul(component_order(w), seq, parities(t, w));
  rest.clear();
  for (int j = 0; j + 1 < n; ++j) rest.push_back(w[seq[j]].atom);
  coeff = sign > 0 ? c0 : -c0;
  return true;
}

}  // namespace

LieExpr right_source_derivative(const SymbolTable& t, const Functional& f, int source) {
  LieExpr out;
  for (const auto& [w, c] : f.terms()) {
    Word rest;
    Poly coeff;
    if (split_source(t, w, c, source, rest, coeff)) out.add(rest, coeff);
  }
  return out;
}

LieExpr left_source_derivative(const SymbolTable& t, const Functional& g, int source) {
  LieExpr out;
  const int pk = t.parity(Atom{source, false});
  for (const auto& [w, c] : g.terms()) {
    Word rest;
    Poly coeff;
    if (!split_source(t, w, c, source, rest, coeff)) continue;
    out.add(rest, (pk & t.parity(rest)) ? -coeff : coeff);
  }
  return out;
}

Functional variation(const SymbolTable& t, const Functional& g, int field, const LieExpr& y, bool left) {
  Functional out;
  const LieExpr dy = exterior_d(t, y);
  for (const auto& [w, c] : g.terms()) {
    const int n = static_cast<int>(w.size());
    const std::vector<int> order = component_order(w);
    const std::vector<int> odd = parities(t, w);
    for (int ci = 0; ci < n; ++ci) {
      const int i = order[ci];
      const TaggedAtom& target = w[i];
      if (target.atom.sym != field) continue;
      int p = 0;
      if (left) {
        for (int j = 0; j < ci; ++j) p ^= odd[order[j]];
      } else {
        for (int j = ci + 1; j < n; ++j) p ^= odd[order[j]];
      }
      const LieExpr& sub = target.atom.d ? dy : y;
      for (const auto& [yw, cy] : sub.terms()) {
        const int e = t.parity(yw) ^ t.parity(target.atom);
        int sign = (p & e) ? -1 : 1;
        // phi + eps*Y with eps on the left: d(eps*Y) = (-1)^e eps*dY.
        if (target.atom.d && left && e) sign = -sign;
        const int m = static_cast<int>(yw.size());
        TraceWord v(w.begin(), w.begin() + i);
        for (Atom a : yw) {
          Tag tag = t.form(a) ? target.tag : Tag::Zero;
          if (tag == Tag::Zero && t.form(a)) throw std::invalid_argument("form substituted into a 0-form slot");
          v.push_back({a, tag});
        }
        v.insert(v.end(), w.begin() + i + 1, w.end());
        std::vector<int> seq;
        for (int j : order) {
          if (j == i) {
            for (int q = 0; q < m; ++q) seq.push_back(i + q);
          } else {
            seq.push_back(j < i ? j : j + m - 1);
          }
        }
        sign *= koszul(seq, component_order(v), parities(t, v));
        Poly coeff = c * cy;
        out.add(t, v, sign > 0 ? coeff : -coeff);
      }
    }
  }
  return out;
}

Functional antibracket(const SymbolTable& t, const Functional& f, const Functional& g) {
  Functional out;
  for (int k = 0; k < t.size(); ++k) {
    if (!t.is_source(k) || t.partner(k) < 0) continue;
    const int phi = t.partner(k);
    LieExpr lk = left_source_derivative(t, g, k);
    if (!lk.is_zero()) out += variation(t, f, phi, lk, false);
    LieExpr rk = right_source_derivative(t, f, k);
    if (!rk.is_zero()) out -= variation(t, g, phi, rk, true);
  }
  return out;
}

// -------------------------------------------------------------------- s

BrstRules brst_from_action(const SymbolTable& t, const ActionSpec& s) {
  Functional f = s.functional(t);
  bool any = false;
  for (const auto& [w, c] : f.terms()) {
    int sources = 0;
    for (const auto& a : w)
      if (t.is_source(a.atom.sym)) ++sources;
    if (sources > 1) throw std::invalid_argument("source appears nonlinearly in " + trace_word_str(t, w));
    any = any || sources == 1;
  }
  BrstRules rules;
  if (!any) return rules;
  for (int k = 0; k < t.size(); ++k) {
    if (!t.is_source(k) || t.partner(k) < 0) continue;
    rules[t.partner(k)] = right_source_derivative(t, f, k);
  }
  return rules;
}

LieExpr apply_s(const SymbolTable& t, const LieExpr& x, const BrstRules& rules) {
  LieExpr out;
  for (const auto& [w, c] : x.terms()) {
    int p = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto it = rules.find(w[i].sym);
      if (it == rules.end()) throw std::invalid_argument("no BRST rule for " + t.name(w[i].sym));
      LieExpr image = w[i].d ? -exterior_d(t, it->second) : it->second;
      for (const auto& [iw, ic] : image.terms()) {
        Word v(w.begin(), w.begin() + static_cast<long>(i));
        v.insert(v.end(), iw.begin(), iw.end());
        v.insert(v.end(), w.begin() + static_cast<long>(i) + 1, w.end());
        Poly coeff = c * ic;
        out.add(v, p ? -coeff : coeff);
      }
      p ^= t.parity(w[i]);
    }
  }
  return out;
}

Functional apply_s(const SymbolTable& t, const Functional& f, const BrstRules& rules) {
  Functional out;
  for (const auto& [field, rule] : rules) out += variation(t, f, field, rule, true);
  return out;
}

// ---------------------------------------------------------------- action

Functional ActionSpec::functional(const SymbolTable& t) const {
  Functional out;
  for (const auto& term : terms) out += term.coefficient * pairing(t, term.left, term.right);
  return out;
}

ActionSpec ActionSpec::substitute(const std::map<VarId, Poly>& values) const {
  ActionSpec out = *this;
  for (auto& term : out.terms) term.coefficient = term.coefficient.substitute(values);
  return out;
}

std::vector<VarId> ActionSpec::couplings() const {
  std::vector<VarId> out;
  for (const auto& term : terms)
    for (VarId v : term.coefficient.variables())
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

std::vector<Poly> master_constraints(const SymbolTable& t, const ActionSpec& s) {
  Functional f = s.functional(t);
  Functional ss = antibracket(t, f, f);
  std::vector<Poly> out;
  for (const auto& [w, c] : ss.terms()) {
    Poly p = c.primitive_part();
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return a.str() < b.str(); });
  return out;
}

SquareDecomposition decompose_s2_gauge(const SymbolTable& t, const BrstRules& rules, const std::string& gauge,
                                       const std::string& ghost) {
  LieExpr a = LieExpr::atom(t.parse_atom(gauge));
  LieExpr w = LieExpr::atom(t.parse_atom(ghost));
  LieExpr dw = exterior_d(t, w);
  LieExpr s2 = apply_s(t, apply_s(t, a, rules), rules);
  LieExpr b1 = bracket(t, dw, w);
  LieExpr b2 = bracket(t, a, bracket(t, w, w));
  SquareDecomposition out;
  auto solve = [](const LieExpr& target, const LieExpr& basis, const LieExpr& other) {
    for (const auto& [word, c] : basis.terms()) {
      if (other.terms().count(word)) continue;
      auto it = target.terms().find(word);
      if (it == target.terms().end()) return Poly();
      Rational inv = c.constant_term();
      return it->second * Rational(1 / inv);
    }
    return Poly();
  };
  out.first = solve(s2, b1, b2);
  LieExpr rest = s2 - out.first * b1;
  out.second = solve(rest, b2, b1);
  rest -= out.second * b2;
  out.exact = rest.is_zero();
  return out;
}

}  // namespace renhopf
