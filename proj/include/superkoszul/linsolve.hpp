#pragma once

#include <optional>
#include <vector>

#include "superkoszul/scalar.hpp"

namespace superkoszul {

/// Solves A x = b exactly over the rationals by Gaussian elimination.
/// A is row-major with rows.size() rows; returns a particular solution or
/// nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear(
    std::vector<std::vector<Rational>> A, std::vector<Rational> b);

}  // namespace superkoszul
