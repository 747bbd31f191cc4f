#include "renhopf/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace renhopf {

namespace {

int clamp_prec(long p) { return static_cast<int>(std::min<long>(p, LaurentSeries::kExact)); }

}  // namespace

LaurentSeries::LaurentSeries(const Poly& c, int precision) : prec_(precision) {
  if (!c.is_zero()) coeffs_[0] = c;
  clip();
}

LaurentSeries LaurentSeries::monomial(const Poly& c, int power, int precision) {
  LaurentSeries s;
  s.prec_ = precision;
  if (!c.is_zero()) s.coeffs_[power] = c;
  s.clip();
  return s;
}

LaurentSeries LaurentSeries::exp_linear(const Poly& a, int precision) {
  LaurentSeries s;
  s.prec_ = precision;
  Poly term = 1;
  for (int n = 0; n < precision; ++n) {
    if (!term.is_zero()) s.coeffs_[n] = term;
    term = term * a * Rational(1, n + 1);
  }
  return s;
}

void LaurentSeries::clip() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    if (it->first >= prec_ || it->second.is_zero())
      it = coeffs_.erase(it);
    else
      ++it;
}

Poly LaurentSeries::coefficient(int k) const {
  if (k >= prec_)
    throw std::out_of_range("z^" + std::to_string(k) + " beyond series precision " + std::to_string(prec_));
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Poly() : it->second;
}

int LaurentSeries::valuation() const { return coeffs_.empty() ? prec_ : coeffs_.begin()->first; }

LaurentSeries LaurentSeries::pole_part() const {
  if (prec_ <= 0) throw std::runtime_error("truncation exceeded: pole part needs precision above z^-1");
  LaurentSeries s;
  for (const auto& [k, c] : coeffs_)
    if (k < 0) s.coeffs_[k] = c;
  return s;
}

LaurentSeries LaurentSeries::regular_part() const {
  LaurentSeries s;
  s.prec_ = prec_;
  for (const auto& [k, c] : coeffs_)
    if (k >= 0) s.coeffs_[k] = c;
  return s;
}

LaurentSeries LaurentSeries::truncated(int precision) const {
  LaurentSeries s = *this;
  s.prec_ = std::min(prec_, precision);
  s.clip();
  return s;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  prec_ = std::min(prec_, o.prec_);
  for (const auto& [k, c] : o.coeffs_) coeffs_[k] += c;
  clip();
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) {
  prec_ = std::min(prec_, o.prec_);
  for (const auto& [k, c] : o.coeffs_) coeffs_[k] -= c;
  clip();
  return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  LaurentSeries s;
  long pa = a.exact() ? LaurentSeries::kExact : static_cast<long>(a.prec_) + b.valuation();
  long pb = b.exact() ? LaurentSeries::kExact : static_cast<long>(b.prec_) + a.valuation();
  s.prec_ = clamp_prec(std::min(pa, pb));
  for (const auto& [i, x] : a.coeffs_)
    for (const auto& [j, y] : b.coeffs_)
      if (i + j < s.prec_) s.coeffs_[i + j] += x * y;
  s.clip();
  return s;
}

LaurentSeries operator*(LaurentSeries a, const Rational& c) {
  for (auto& [k, x] : a.coeffs_) x *= c;
  a.clip();
  return a;
}

bool LaurentSeries::agrees(const LaurentSeries& o) const {
  LaurentSeries d = *this - o;
  return d.is_zero();
}

LaurentSeries LaurentSeries::substitute(const std::map<VarId, Poly>& values) const {
  LaurentSeries s;
  s.prec_ = prec_;
  for (const auto& [k, c] : coeffs_) s.coeffs_[k] = c.substitute(values);
  s.clip();
  return s;
}

bool LaurentSeries::depends_on(VarId v) const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [v](const auto& kv) { return kv.second.degree(v) > 0; });
}

std::string LaurentSeries::str() const {
  std::string out;
  for (const auto& [k, c] : coeffs_) out += "z^" + std::to_string(k) + ": " + c.str() + "\n";
  if (!exact()) out += "O(z^" + std::to_string(prec_) + ")\n";
  if (out.empty()) out = "0\n";
  return out;
}

}  // namespace renhopf
