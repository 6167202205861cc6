#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gslab/jet.hpp"
#include "gslab/rational.hpp"

namespace gslab {

/// Product of symbols with positive integer exponents, stored sorted by symbol.
class Monomial {
 public:
  using Factor = std::pair<Symbol, unsigned>;

  Monomial() = default;
  explicit Monomial(Symbol s, unsigned exponent = 1);
  /// Factors may be unsorted and repeat symbols; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  unsigned exponent(Symbol s) const;

  /// Same monomial with the exponent of `s` replaced (0 removes it).
  Monomial with_exponent(Symbol s, unsigned exponent) const;
  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial& other) const { return factors_ == other.factors_; }

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

/// Degree-lexicographic order over the fixed symbol enumeration.
struct DegLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Polynomial over jet coordinates with exact rational coefficients, always in
/// canonical form: no zero coefficients, unique monomials, deglex iteration.
class JetExpression {
 public:
  using Terms = std::map<Monomial, Rational, DegLexLess>;

  JetExpression() = default;
  JetExpression(const Rational& constant);  // NOLINT(google-explicit-constructor)
  JetExpression(long constant) : JetExpression(Rational(constant)) {}  // NOLINT
  JetExpression(int constant) : JetExpression(Rational(constant)) {}   // NOLINT

  static JetExpression symbol(Symbol s);
  static JetExpression coordinate(JetCoordinate c) { return symbol(Symbol::jet(c)); }
  static JetExpression coordinate(Dependent d, unsigned t_order = 0, unsigned x_order = 0) {
    return coordinate(JetCoordinate{d, t_order, x_order});
  }
  static JetExpression term(const Rational& coefficient, Monomial m);
  /// Canonicalizes an arbitrary collection of terms (merges, drops zeros).
  static JetExpression from_terms(const std::vector<std::pair<Monomial, Rational>>& terms);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (coefficient of the monomial 1).
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  unsigned degree() const;
  std::set<Symbol> symbols() const;
  bool contains(Symbol s) const;

  JetExpression operator-() const;
  JetExpression pow(unsigned exponent) const;

  friend JetExpression operator+(const JetExpression& a, const JetExpression& b);
  friend JetExpression operator-(const JetExpression& a, const JetExpression& b);
  friend JetExpression operator*(const JetExpression& a, const JetExpression& b);
  friend JetExpression operator*(const Rational& k, const JetExpression& a);
  friend JetExpression operator*(const JetExpression& a, const Rational& k) { return k * a; }
  friend JetExpression operator*(long k, const JetExpression& a) { return Rational(k) * a; }
  friend JetExpression operator*(const JetExpression& a, long k) { return Rational(k) * a; }
  friend bool operator==(const JetExpression& a, const JetExpression& b) {
    return a.terms_ == b.terms_;
  }

  JetExpression& operator+=(const JetExpression& other);
  JetExpression& operator-=(const JetExpression& other);
  JetExpression& operator*=(const JetExpression& other) { return *this = *this * other; }

  /// Text in the expression grammar, leading (largest) term first.
  std::string to_string() const;

  /// Accumulates terms and canonicalizes once; used by the calculus routines.
  class Builder {
   public:
    void add(const Monomial& m, const Rational& coefficient);
    void add(Monomial&& m, const Rational& coefficient);
    void add(const JetExpression& e, const Rational& scale = Rational(1));
    /// Adds e * m * scale.
    void add_product(const JetExpression& e, const Monomial& m, const Rational& scale);
    JetExpression build() &&;

   private:
    Terms terms_;
  };

 private:
  Terms terms_;
};

}  // namespace gslab
