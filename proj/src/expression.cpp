#include "gslab/expression.hpp"

#include <algorithm>
#include <stdexcept>

namespace gslab {

Monomial::Monomial(Symbol s, unsigned exponent) {
  if (exponent > 0) {
    factors_.emplace_back(s, exponent);
    degree_ = exponent;
  }
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [sym, exp] : factors) {
    if (exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == sym)
      m.factors_.back().second += exp;
    else
      m.factors_.emplace_back(sym, exp);
    m.degree_ += exp;
  }
  return m;
}

unsigned Monomial::exponent(Symbol s) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), s,
                             [](const Factor& f, Symbol key) { return f.first < key; });
  return (it != factors_.end() && it->first == s) ? it->second : 0;
}

Monomial Monomial::with_exponent(Symbol s, unsigned exponent) const {
  Monomial m;
  m.factors_.reserve(factors_.size() + 1);
  bool placed = false;
  for (const auto& f : factors_) {
    if (!placed && s <= f.first) {
      placed = true;
      if (exponent > 0) {
        m.factors_.emplace_back(s, exponent);
        m.degree_ += exponent;
      }
      if (s == f.first) continue;
    }
    m.factors_.push_back(f);
    m.degree_ += f.second;
  }
  if (!placed && exponent > 0) {
    m.factors_.emplace_back(s, exponent);
    m.degree_ += exponent;
  }
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  m.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first < b->first) {
      m.factors_.push_back(*a++);
    } else if (b->first < a->first) {
      m.factors_.push_back(*b++);
    } else {
      m.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  m.factors_.insert(m.factors_.end(), a, factors_.end());
  m.factors_.insert(m.factors_.end(), b, other.factors_.end());
  m.degree_ = degree_ + other.degree_;
  return m;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [sym, exp] : factors_) {
    if (!s.empty()) s += '*';
    s += sym.name();
    if (exp != 1) s += '^' + std::to_string(exp);
  }
  return s;
}

bool DegLexLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    // An earlier symbol present only in one monomial makes that one larger.
    if (fa[i].first != fb[i].first) return fb[i].first < fa[i].first;
    if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
  }
  // Equal degree and equal common prefix forces equal factor lists.
  return false;
}

JetExpression::JetExpression(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

JetExpression JetExpression::symbol(Symbol s) { return term(Rational(1), Monomial(s)); }

JetExpression JetExpression::term(const Rational& coefficient, Monomial m) {
  JetExpression e;
  if (coefficient != 0) e.terms_.emplace(std::move(m), coefficient);
  return e;
}

JetExpression JetExpression::from_terms(const std::vector<std::pair<Monomial, Rational>>& terms) {
  Builder b;
  for (const auto& [m, c] : terms) b.add(m, c);
  return std::move(b).build();
}

bool JetExpression::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational JetExpression::constant_term() const { return coefficient(Monomial()); }

Rational JetExpression::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned JetExpression::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

std::set<Symbol> JetExpression::symbols() const {
  std::set<Symbol> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

bool JetExpression::contains(Symbol s) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(s) > 0) return true;
  return false;
}

JetExpression JetExpression::operator-() const {
  JetExpression e = *this;
  for (auto& [m, c] : e.terms_) c = -c;
  return e;
}

JetExpression JetExpression::pow(unsigned exponent) const {
  JetExpression result(Rational(1));
  JetExpression base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

JetExpression& JetExpression::operator+=(const JetExpression& other) {
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

JetExpression& JetExpression::operator-=(const JetExpression& other) {
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

JetExpression operator+(const JetExpression& a, const JetExpression& b) {
  if (a.size() < b.size()) {
    JetExpression r = b;
    r += a;
    return r;
  }
  JetExpression r = a;
  r += b;
  return r;
}

JetExpression operator-(const JetExpression& a, const JetExpression& b) {
  JetExpression r = a;
  r -= b;
  return r;
}

JetExpression operator*(const JetExpression& a, const JetExpression& b) {
  JetExpression::Builder builder;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) builder.add(ma * mb, ca * cb);
  return std::move(builder).build();
}

JetExpression operator*(const Rational& k, const JetExpression& a) {
  if (k == 0) return {};
  JetExpression r = a;
  for (auto& [m, c] : r.terms_) c *= k;
  return r;
}

std::string JetExpression::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool negative = c < 0;
    Rational mag = abs(c);
    if (s.empty())
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    if (m.is_one()) {
      s += gslab::to_string(mag);
    } else if (mag == 1) {
      s += m.to_string();
    } else {
      s += gslab::to_string(mag) + "*" + m.to_string();
    }
  }
  return s;
}

void JetExpression::Builder::add(const Monomial& m, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coefficient);
  if (!inserted) it->second += coefficient;
}

void JetExpression::Builder::add(Monomial&& m, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(m), coefficient);
  if (!inserted) it->second += coefficient;
}

void JetExpression::Builder::add(const JetExpression& e, const Rational& scale) {
  for (const auto& [m, c] : e.terms()) add(m, c * scale);
}

void JetExpression::Builder::add_product(const JetExpression& e, const Monomial& m,
                                         const Rational& scale) {
  for (const auto& [em, c] : e.terms()) add(em * m, c * scale);
}

JetExpression JetExpression::Builder::build() && {
  JetExpression e;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
  e.terms_ = std::move(terms_);
  return e;
}

}  // namespace gslab
