#ifndef MELCERT_NUMFMT_HPP
#define MELCERT_NUMFMT_HPP

#include <string>

namespace melcert {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

} // namespace melcert

#endif
