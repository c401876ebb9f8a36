#include "echinf/integer.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace echinf {

Integer parse_integer(std::string_view text)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size())
        throw std::invalid_argument("empty integer literal '" + std::string(text) + "'");
    for (std::size_t i = pos; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
    Integer value(std::string(text.substr(pos)));
    return negative ? Integer(-value) : value;
}

std::string to_string(const Integer& value)
{
    return value.str();
}

Integer floor_mod(const Integer& value, const Integer& modulus)
{
    Integer r = value % modulus;
    if (r < 0)
        r += modulus;
    return r;
}

std::int64_t floor_mod(std::int64_t value, std::int64_t modulus)
{
    std::int64_t r = value % modulus;
    return r < 0 ? r + modulus : r;
}

std::int64_t to_int64(const Integer& value)
{
    if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer " + value.str() + " does not fit in 64 bits");
    return static_cast<std::int64_t>(value);
}

}  // namespace echinf
