#include "projdyn/error.hpp"
#include "projdyn/mpoly.hpp"

namespace projdyn {

Polynomial interpolate(std::span<const Sample> samples, unsigned degree_bound, std::size_t num_vars,
                       const Field& field) {
  std::vector<Monomial> basis;
  for (unsigned k = degree_bound + 1; k-- > 0;) {
    auto layer = monomials_of_degree(num_vars, k);
    basis.insert(basis.end(), layer.begin(), layer.end());
  }
  const std::size_t unknowns = basis.size();
  if (samples.size() < unknowns) {
    throw InterpolationError(InterpolationError::Reason::kInsufficient,
                             "interpolation needs " + std::to_string(unknowns) + " samples, got " +
                                 std::to_string(samples.size()));
  }

  // Augmented system, one row per sample.
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.point.size() != num_vars) throw InvalidInput("interpolate: sample arity mismatch");
    std::vector<Scalar> row;
    row.reserve(unknowns + 1);
    for (const auto& m : basis) {
      Scalar v = Scalar::one(field);
      for (std::size_t i = 0; i < num_vars; ++i) {
        if (m[i]) v *= s.point[i].pow(long(m[i]));
      }
      row.push_back(std::move(v));
    }
    row.push_back(s.value);
    rows.push_back(std::move(row));
  }

  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Scalar inv = rows[rank][col].inverse();
    for (std::size_t j = col; j <= unknowns; ++j) rows[rank][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      const Scalar f = rows[i][col];
      for (std::size_t j = col; j <= unknowns; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (!rows[i][unknowns].is_zero()) {
      throw InterpolationError(InterpolationError::Reason::kInconsistent,
                               "samples are inconsistent with total degree <= " + std::to_string(degree_bound));
    }
  }
  if (rank < unknowns) {
    throw InterpolationError(InterpolationError::Reason::kUnderdetermined,
                             "samples determine only " + std::to_string(rank) + " of " + std::to_string(unknowns) +
                                 " coefficients");
  }
  std::vector<Term> terms;
  for (std::size_t r = 0; r < rank; ++r) terms.push_back(Term{basis[pivot_col[r]], rows[r][unknowns]});
  return Polynomial::from_terms(num_vars, field, std::move(terms));
}

}  // namespace projdyn
