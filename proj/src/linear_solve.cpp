#include "gslab/linear_solve.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace gslab {

namespace {

using IntegerRow = std::vector<Integer>;

IntegerRow to_primitive_integers(const RationalVector& row) {
  Integer lcm = 1;
  for (const auto& q : row)
    if (q != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  IntegerRow out(row.size());
  Integer g = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    Rational scaled = row[j] * lcm;
    out[j] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
  }
  if (g == 0) return out;
  int sign = 0;
  for (const auto& z : out)
    if (z != 0) {
      sign = sgn(z);
      break;
    }
  for (auto& z : out) {
    mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    if (sign < 0) z = -z;
  }
  return out;
}

bool is_zero_row(const IntegerRow& row) {
  for (const auto& z : row)
    if (z != 0) return false;
  return true;
}

struct Echelon {
  std::vector<IntegerRow> rows;  // first `pivots.size()` rows are in echelon form
  std::vector<std::size_t> pivots;
};

Echelon bareiss(const RationalMatrix& input, std::size_t columns) {
  std::set<IntegerRow> unique;
  for (const auto& row : input) {
    if (row.size() != columns) throw std::invalid_argument("row length mismatch");
    IntegerRow z = to_primitive_integers(row);
    if (!is_zero_row(z)) unique.insert(std::move(z));
  }
  Echelon ech;
  ech.rows.assign(unique.begin(), unique.end());
  auto& a = ech.rows;
  const std::size_t m = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  Integer t1, t2;
  for (std::size_t col = 0; col < columns && r < m; ++col) {
    std::size_t best = m;
    for (std::size_t i = r; i < m; ++i) {
      if (a[i][col] == 0) continue;
      if (best == m || mpz_cmpabs(a[i][col].get_mpz_t(), a[best][col].get_mpz_t()) < 0) best = i;
    }
    if (best == m) continue;
    std::swap(a[r], a[best]);
    const Integer& pivot = a[r][col];
    for (std::size_t i = r + 1; i < m; ++i) {
      const Integer factor = a[i][col];
      for (std::size_t j = col + 1; j < columns; ++j) {
        mpz_mul(t1.get_mpz_t(), pivot.get_mpz_t(), a[i][j].get_mpz_t());
        mpz_mul(t2.get_mpz_t(), factor.get_mpz_t(), a[r][j].get_mpz_t());
        mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        if (!mpz_divisible_p(t1.get_mpz_t(), prev.get_mpz_t()))
          throw std::logic_error("fraction-free elimination: inexact division");
        mpz_divexact(a[i][j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = pivot;
    ech.pivots.push_back(col);
    ++r;
  }
  return ech;
}

}  // namespace

RationalVector primitive(const RationalVector& v) {
  IntegerRow z = to_primitive_integers(v);
  RationalVector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = Rational(z[i]);
  return out;
}

Nullspace nullspace(const RationalMatrix& rows, std::size_t columns) {
  Echelon ech = bareiss(rows, columns);
  Nullspace ns;
  ns.rank = ech.pivots.size();
  ns.pivot_columns = ech.pivots;
  std::vector<bool> is_pivot(columns, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(columns, Rational(0));
    x[free] = 1;
    for (std::size_t k = ns.rank; k-- > 0;) {
      const std::size_t pc = ech.pivots[k];
      Rational acc = 0;
      for (std::size_t j = pc + 1; j < columns; ++j)
        if (x[j] != 0 && ech.rows[k][j] != 0) acc += Rational(ech.rows[k][j]) * x[j];
      x[pc] = -acc / Rational(ech.rows[k][pc]);
    }
    ns.basis.push_back(primitive(x));
  }
  return ns;
}

std::size_t matrix_rank(const RationalMatrix& rows, std::size_t columns) {
  return bareiss(rows, columns).pivots.size();
}

std::optional<RationalVector> solve_in_span(const RationalMatrix& basis, const RationalVector& target) {
  // Unknown coefficients y_i: sum_i y_i basis[i][j] = target[j] for every j.
  // Nullspace of the augmented system [B^T | -target] with last entry 1.
  const std::size_t k = basis.size();
  RationalMatrix rows(target.size(), RationalVector(k + 1));
  for (std::size_t j = 0; j < target.size(); ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      if (basis[i].size() != target.size()) throw std::invalid_argument("dimension mismatch");
      rows[j][i] = basis[i][j];
    }
    rows[j][k] = -target[j];
  }
  Nullspace ns = nullspace(rows, k + 1);
  for (const auto& v : ns.basis) {
    if (v[k] == 0) continue;
    // Any nullspace vector with nonzero last entry gives a solution.
    RationalVector y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = v[i] / v[k];
    return y;
  }
  return std::nullopt;
}

RationalMatrix collect_linear_equations(const std::vector<JetExpression>& residuals,
                                        std::size_t unknown_count) {
  RationalMatrix rows;
  for (const auto& e : residuals) {
    // Each residual is split separately; equal monomials in different
    // residuals are different equations.
    std::map<Monomial, std::map<std::size_t, Rational>, DegLexLess> grouped;
    for (const auto& [m, c] : e.terms()) {
      std::vector<Monomial::Factor> rest;
      std::optional<std::size_t> unknown;
      for (const auto& [sym, k] : m.factors()) {
        if (!sym.is_unknown()) {
          rest.emplace_back(sym, k);
          continue;
        }
        if (unknown || k != 1) throw std::logic_error("residual is not linear in the unknowns");
        unknown = sym.unknown_index();
      }
      if (!unknown) throw std::logic_error("residual has a term free of unknowns");
      if (*unknown >= unknown_count) throw std::logic_error("unknown index out of range");
      grouped[Monomial::from_factors(std::move(rest))][*unknown] += c;
    }
    for (const auto& [m, coeffs] : grouped) {
      RationalVector row(unknown_count, Rational(0));
      bool nonzero = false;
      for (const auto& [i, c] : coeffs) {
        row[i] = c;
        nonzero = nonzero || c != 0;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  return rows;
}

bool LinearSolveProblem::verify() const {
  const std::size_t n = unknowns.size();
  for (const auto& v : solution_basis) {
    if (v.size() != n) return false;
    for (const auto& row : equations) {
      Rational acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
      if (acc != 0) return false;
    }
  }
  if (matrix_rank(solution_basis, n) != solution_basis.size()) return false;
  return matrix_rank(equations, n) == rank && rank + solution_basis.size() == n;
}

}  // namespace gslab
