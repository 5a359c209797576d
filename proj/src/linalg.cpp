#include "mns/linalg.hpp"

#include "mns/error.hpp"

namespace mns {

namespace {

std::size_t column_count(const Matrix& rows) {
  std::size_t n = rows.empty() ? 0 : rows.front().size();
  for (const auto& row : rows)
    if (row.size() != n) throw PreconditionError("ragged matrix");
  return n;
}

}  // namespace

std::size_t rank_fraction_free(const Matrix& rows) {
  const std::size_t ncols = column_count(rows);
  std::vector<std::vector<BigInt>> m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    BigInt den = 1;
    for (const Scalar& s : row) {
      const auto* q = std::get_if<Rational>(&s.value());
      if (!q) throw PreconditionError("fraction-free elimination needs rational entries");
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q->denominator().get_mpz_t());
    }
    std::vector<BigInt> ints;
    ints.reserve(ncols);
    for (const Scalar& s : row) {
      const Rational& q = std::get<Rational>(s.value());
      ints.push_back(q.numerator() * (den / q.denominator()));
    }
    m.push_back(std::move(ints));
  }

  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        BigInt v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

EliminationResult eliminate(const Matrix& rows, const Field& field) {
  const std::size_t ncols = column_count(rows);
  struct Pivot {
    std::size_t column;
    std::vector<Scalar> row;      // leading entry 1 at column
    std::vector<Scalar> combo;    // row = sum combo_i rows_i
  };
  std::vector<Pivot> basis;
  EliminationResult result;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Scalar> row = rows[i];
    std::vector<Scalar> combo(rows.size(), field.zero());
    combo[i] = field.one();
    for (const Pivot& p : basis) {
      const Scalar f = row[p.column];
      if (f.is_zero()) continue;
      for (std::size_t j = p.column; j < ncols; ++j)
        if (!p.row[j].is_zero()) row[j] = row[j] - f * p.row[j];
      for (std::size_t j = 0; j <= i; ++j)
        if (!p.combo[j].is_zero()) combo[j] = combo[j] - f * p.combo[j];
    }
    std::size_t lead = 0;
    while (lead < ncols && row[lead].is_zero()) ++lead;
    if (lead == ncols) {
      if (!result.dependency) result.dependency = combo;
      continue;
    }
    const Scalar inv = row[lead].inverse();
    for (std::size_t j = lead; j < ncols; ++j) row[j] = row[j] * inv;
    for (Scalar& c : combo) c = c * inv;
    // keep every pivot row reduced in the columns of later pivots
    Pivot fresh{lead, std::move(row), std::move(combo)};
    for (Pivot& p : basis) {
      const Scalar f = p.row[lead];
      if (f.is_zero()) continue;
      for (std::size_t j = lead; j < ncols; ++j) p.row[j] = p.row[j] - f * fresh.row[j];
      for (std::size_t j = 0; j <= i; ++j) p.combo[j] = p.combo[j] - f * fresh.combo[j];
    }
    basis.push_back(std::move(fresh));
    ++result.rank;
  }
  return result;
}

std::size_t matrix_rank(const Matrix& rows, const Field& field) {
  if (field.kind == Field::Kind::rational) return rank_fraction_free(rows);
  return eliminate(rows, field).rank;
}

}  // namespace mns
