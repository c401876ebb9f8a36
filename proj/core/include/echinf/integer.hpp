#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace echinf {

// Arbitrary precision; every coefficient in the engine is one of these.
using Integer = boost::multiprecision::cpp_int;

Integer parse_integer(std::string_view text);
std::string to_string(const Integer& value);

inline Integer abs_value(const Integer& value) { return value < 0 ? Integer(-value) : value; }
inline bool is_unit(const Integer& value) { return value == 1 || value == -1; }

// Representative in [0, modulus); modulus must be positive.
Integer floor_mod(const Integer& value, const Integer& modulus);
std::int64_t floor_mod(std::int64_t value, std::int64_t modulus);

// Exact conversion; throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const Integer& value);

}  // namespace echinf
