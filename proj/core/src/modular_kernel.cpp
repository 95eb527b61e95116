#include "modular_kernel.hpp"

#include <utility>

#include "projdyn/coeff.hpp"

namespace projdyn::detail {

std::uint64_t det_mod(std::vector<std::uint64_t>& a, std::size_t n, std::uint64_t p) {
  // Fraction-free elimination: rows are scaled instead of divided, and the
  // accumulated scale is removed with a single inverse at the end.
  std::uint64_t det = 1;
  std::uint64_t scale = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv * n + k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = det ? p - det : 0;
    }
    const std::uint64_t pivot = a[k * n + k];
    det = mul_mod(det, pivot, p);
    const std::uint64_t* rk = &a[k * n];
    for (std::size_t i = k + 1; i < n; ++i) {
      std::uint64_t* ri = &a[i * n];
      const std::uint64_t f = ri[k];
      if (f == 0) continue;
      // row_i <- pivot * row_i - f * row_k
      scale = mul_mod(scale, pivot, p);
      const std::uint64_t nf = p - f;
      for (std::size_t j = k + 1; j < n; ++j) {
        unsigned __int128 v = static_cast<unsigned __int128>(pivot) * ri[j] + static_cast<unsigned __int128>(nf) * rk[j];
        ri[j] = static_cast<std::uint64_t>(v % p);
      }
      ri[k] = 0;
    }
  }
  return mul_mod(det, inv_mod(scale, p), p);
}

namespace {

// In place: values at nodes -> monomial coefficients, for one fiber.
void newton_fiber(std::vector<std::uint64_t>& v, const std::vector<std::uint64_t>& z,
                  const std::vector<std::vector<std::uint64_t>>& inv_diff, std::uint64_t p) {
  const std::size_t m = v.size();
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t i = m - 1; i >= j; --i) {
      v[i] = mul_mod(sub_mod(v[i], v[i - 1], p), inv_diff[i][i - j], p);
    }
  }
  // Horner expansion of the Newton form.
  std::vector<std::uint64_t> c(m, 0);
  c[0] = v[m - 1];
  std::size_t len = 1;
  for (std::size_t j = m - 1; j-- > 0;) {
    // c <- c * (t - z_j) + v_j
    const std::uint64_t neg = z[j] ? p - z[j] : 0;
    c[len] = 0;
    for (std::size_t k = len; k > 0; --k) c[k] = add_mod(c[k - 1], mul_mod(c[k], neg, p), p);
    c[0] = add_mod(mul_mod(c[0], neg, p), v[j], p);
    ++len;
  }
  v = std::move(c);
}

}  // namespace

void grid_to_coefficients(std::vector<std::uint64_t>& values, const std::vector<std::size_t>& dims,
                          const std::vector<std::vector<std::uint64_t>>& nodes, std::uint64_t p) {
  const std::size_t r = dims.size();
  std::size_t stride = values.size();
  for (std::size_t axis = 0; axis < r; ++axis) {
    const std::size_t m = dims[axis];
    stride /= m;
    if (m == 1) continue;
    const auto& z = nodes[axis];
    std::vector<std::vector<std::uint64_t>> inv_diff(m, std::vector<std::uint64_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < i; ++k) inv_diff[i][k] = inv_mod(sub_mod(z[i], z[k], p), p);
    }
    const std::size_t block = m * stride;
    std::vector<std::uint64_t> fiber(m);
    for (std::size_t base = 0; base < values.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t i = 0; i < m; ++i) fiber[i] = values[base + off + i * stride];
        newton_fiber(fiber, z, inv_diff, p);
        for (std::size_t i = 0; i < m; ++i) values[base + off + i * stride] = fiber[i];
      }
    }
  }
}

}  // namespace projdyn::detail
