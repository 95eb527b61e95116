#include "projdyn/error.hpp"
#include "projdyn/mpoly.hpp"

namespace projdyn {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, const Polynomial& fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw InvalidInput("PolyMatrix: entry count does not match shape");
  for (const auto& e : entries_) e.check_same_ring(entries_.front());
}

namespace {

void check_square(const PolyMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidInput("determinant of a non-square " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       " matrix");
  }
  if (m.rows() == 0) throw InvalidInput("determinant of an empty matrix");
}

Polynomial cofactor_rec(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (cols.size() == 1) return m(row, cols[0]);
  const Polynomial& any = m(0, 0);
  Polynomial total(any.num_vars(), any.field());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Polynomial& entry = m(row, cols[k]);
    if (entry.is_zero()) continue;
    std::size_t col = cols[k];
    cols.erase(cols.begin() + std::ptrdiff_t(k));
    Polynomial minor = entry * cofactor_rec(m, cols, row + 1);
    cols.insert(cols.begin() + std::ptrdiff_t(k), col);
    if (k % 2) total -= minor;
    else total += minor;
  }
  return total;
}

}  // namespace

Polynomial determinant_cofactor(const PolyMatrix& m) {
  check_square(m);
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return cofactor_rec(m, cols, 0);
}

Polynomial determinant_bareiss(const PolyMatrix& m) {
  check_square(m);
  const std::size_t n = m.rows();
  PolyMatrix a = m;
  const Polynomial& any = m(0, 0);
  Polynomial prev = Polynomial::constant(any.num_vars(), Scalar::one(any.field()));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && a(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return Polynomial(any.num_vars(), any.field());
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        if (prev.is_constant()) {
          a(i, j) = num * prev.constant_value().inverse();
        } else {
          auto q = divide_exact(num, prev);
          if (!q) throw Error(ErrorCode::kInvalidInput, "Bareiss step produced an inexact division");
          a(i, j) = std::move(*q);
        }
      }
    }
    prev = a(k, k);
  }
  Polynomial det = a(n - 1, n - 1);
  return negate ? -det : det;
}

Polynomial determinant(const PolyMatrix& m) {
  check_square(m);
  return m.rows() <= 4 ? determinant_cofactor(m) : determinant_bareiss(m);
}

}  // namespace projdyn
