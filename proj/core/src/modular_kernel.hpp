#pragma once

// Word-size modular linear algebra and grid interpolation used by the
// parametric resultant path.

#include <cstdint>
#include <vector>

namespace projdyn::detail {

/// Determinant of the n x n row-major matrix a over F_p. Destroys a.
std::uint64_t det_mod(std::vector<std::uint64_t>& a, std::size_t n, std::uint64_t p);

/// Converts values on a tensor grid into monomial coefficients in place.
/// values is row-major over dims (last axis fastest); nodes[axis] lists the
/// dims[axis] distinct evaluation points of that axis. Afterwards entry
/// (e_0, ..., e_{r-1}) is the coefficient of t_0^e_0 ... t_{r-1}^e_{r-1}.
void grid_to_coefficients(std::vector<std::uint64_t>& values, const std::vector<std::size_t>& dims,
                          const std::vector<std::vector<std::uint64_t>>& nodes, std::uint64_t p);

}  // namespace projdyn::detail
