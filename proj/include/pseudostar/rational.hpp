#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pseudostar {

/// Exact arbitrary-precision rational. All weights and k-weights use it.
using Rational = mpq_class;

/// "p" for integers, "p/q" otherwise (canonical, lowest terms).
std::string format_rational(const Rational& value);

/// Accepts an optional sign followed by either a decimal ("12", "-0.25")
/// or a fraction ("7/3"). Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace pseudostar
