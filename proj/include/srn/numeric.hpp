#ifndef SRN_NUMERIC_HPP
#define SRN_NUMERIC_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace srn {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer vector used for complexes, states and reaction vectors.
using IntVector = std::vector<std::int64_t>;

/// Three-valued answer for questions settled by bounded search.
enum class Tri { No, Yes, Unknown };

std::string to_string(Tri t);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and plain decimals such as "0.25" (converted exactly).
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

std::string to_string(const IntVector& v);

int sign(const Rational& r);

}  // namespace srn

#endif  // SRN_NUMERIC_HPP
