#pragma once

#include <vector>

#include "projdyn/dynamics.hpp"

namespace projdyn::detail {

/// Zeros of a binary form in x0, x1 (other ring variables absent) that are
/// rational over the field: finite points ascending, then (1:0).
std::vector<ProjectivePoint> binary_zeros(const Polynomial& form);

}  // namespace projdyn::detail
