#include "melcert/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace melcert {

std::string format_double(double x)
{
    if (!std::isfinite(x)) throw std::invalid_argument("cannot format a non-finite number");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace melcert
