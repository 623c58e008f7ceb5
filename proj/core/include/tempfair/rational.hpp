#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace tempfair {

/// Exact value type used for every valuation, share, and approximation ratio.
using Rational = boost::rational<std::int64_t>;

/// Parses "3", "-2", "1/2" or "6/4" (normalised). Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text form: "3" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

}  // namespace tempfair
