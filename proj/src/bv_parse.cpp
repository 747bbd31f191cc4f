#include "renhopf/bv.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace renhopf {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits at the first top-level occurrence of `sep` outside [ ] and < >.
bool split_top(const std::string& s, char sep, std::string& a, std::string& b) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == sep && depth == 0) {
      a = trim(s.substr(0, i));
      b = trim(s.substr(i + 1));
      return true;
    }
  }
  return false;
}

Poly parse_coefficient(const std::string& text) {
  std::string s = trim(text);
  Poly out(1);
  if (s.empty()) return out;
  if (s[0] == '-' || s[0] == '+') {
    if (s[0] == '-') out = Poly(-1);
    s = trim(s.substr(1));
    if (s.empty()) return out;
  }
  std::stringstream in(s);
  std::string factor;
  while (std::getline(in, factor, '*')) {
    factor = trim(factor);
    if (factor.empty()) throw std::invalid_argument("malformed coefficient '" + text + "'");
    if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
      out *= parse_rational(factor);
      continue;
    }
    unsigned power = 1;
    auto caret = factor.find('^');
    if (caret != std::string::npos) {
      power = static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
      factor = trim(factor.substr(0, caret));
    }
    out *= Poly::var(factor).pow(power);
  }
  return out;
}

}  // namespace

LieExpr parse_factor(const SymbolTable& t, const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty factor");
  if (s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("unbalanced bracket in '" + text + "'");
    std::string a, b;
    if (!split_top(s.substr(1, s.size() - 2), ',', a, b)) throw std::invalid_argument("bracket needs two factors: '" + text + "'");
    return bracket(t, parse_factor(t, a), parse_factor(t, b));
  }
  if (s.size() > 2 && s[0] == 'd' && (s[1] == ' ' || s[1] == '[')) return exterior_d(t, parse_factor(t, s.substr(1)));
  for (char c : s)
    if (c == ' ' || c == '[' || c == ']' || c == ',') throw std::invalid_argument("malformed factor '" + text + "'");
  return LieExpr::atom(t.parse_atom(s));
}

ActionSpec parse_action(const SymbolTable& t, const std::string& text) {
  ActionSpec out;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return std::invalid_argument("action line " + std::to_string(lineno) + ": " + why);
    };
    auto at = line.find("int tr(");
    if (at == std::string::npos || line.back() != ')') throw fail("expected '<coefficient> int tr( ... )'");
    ActionTerm term;
    term.text = line;
    term.coefficient = parse_coefficient(line.substr(0, at));
    std::string inner = trim(line.substr(at + 7, line.size() - at - 8));
    std::string a, b;
    if (!inner.empty() && inner.front() == '<') {
      if (inner.back() != '>') throw fail("unbalanced pairing");
      if (!split_top(inner.substr(1, inner.size() - 2), ',', a, b)) throw fail("pairing needs two factors");
    } else if (!split_top(inner, '*', a, b)) {
      throw fail("expected a Hodge pairing 'f * g'");
    }
    term.left = parse_factor(t, a);
    term.right = parse_factor(t, b);
    out.terms.push_back(std::move(term));
  }
  return out;
}

ActionSpec load_action(const SymbolTable& t, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open action file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_action(t, buf.str());
}

std::string resolve_action_path(const std::string& theory_path) {
  std::filesystem::path p(theory_path);
  std::filesystem::path candidate = p.parent_path() / (p.stem().string() + "_action.txt");
  return std::filesystem::exists(candidate) ? candidate.string() : "";
}

}  // namespace renhopf
