#pragma once

#include "superkoszul/superpoly.hpp"

namespace superkoszul {

/// Parses a polynomial expression over the chart's generators.
///
/// Grammar: sums and differences of products, unary minus, parentheses,
/// integer and p/q rational literals, `^` powers with integer exponents.
/// The names `i` and `hbar` are reserved scalars; `hbar` may carry negative
/// exponents. Any other identifier must be a chart generator.
SuperPoly parse_expression(const std::string& text, ChartPtr chart);

}  // namespace superkoszul
