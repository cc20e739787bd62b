#ifndef SLROD_FORMAT_HPP
#define SLROD_FORMAT_HPP

#include <cstdio>
#include <string>

namespace slrod {

// Round-trip safe, locale independent: 17 significant digits; -0 prints as 0.
inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    return buf;
}

} // namespace slrod

#endif // SLROD_FORMAT_HPP
