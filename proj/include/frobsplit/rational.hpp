#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "frobsplit/errors.hpp"

namespace frobsplit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
    Int n = rat_num(r), d = rat_den(r); // d > 0 canonical
    Int q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

/// Smallest integer >= r.
inline Int rat_ceil(const Rat& r) {
    Int n = rat_num(r), d = rat_den(r);
    Int q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

inline bool rat_is_integer(const Rat& r) { return rat_den(r) == 1; }

/// "a/b", or just "a" when the denominator is 1.
inline std::string rat_str(const Rat& r) {
    if (rat_is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Parses "a" or "a/b" with optional sign.  Throws ParseError.
Rat parse_rat(const std::string& text);

} // namespace frobsplit
