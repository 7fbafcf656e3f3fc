#pragma once

#include <random>

#include "superkoszul/superpoly.hpp"

namespace superkoszul {

using Rng = std::mt19937;

/// Random polynomial built from generators satisfying `pred`, with monomials
/// of total degree <= max_degree and small rational coefficients. When a
/// parity is given the result is homogeneous of that parity.
SuperPoly random_poly_in(Rng& rng, ChartPtr chart, int max_degree,
                         const std::function<bool(const Generator&)>& pred,
                         std::optional<Parity> parity = std::nullopt,
                         int term_count = 4);

/// Same over all generators of the chart.
SuperPoly random_poly(Rng& rng, ChartPtr chart, int max_degree,
                      std::optional<Parity> parity = std::nullopt,
                      int term_count = 4);

/// Random nonzero small rational.
Rational random_rational(Rng& rng);

}  // namespace superkoszul
