#include "rbcom/csv.hpp"

#include <cmath>
#include <cstdio>

namespace rbcom {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";

    char buf[64];
    double a = std::fabs(v);
    if (a >= 1e-3 && a < 1e4) {
        // %g keeps at most 12 significant digits and already drops trailing
        // zeros; within this band it never switches to scientific notation.
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.12e", v);
    std::string s = buf;
    auto epos = s.find('e');
    std::string mant = s.substr(0, epos);
    auto last = mant.find_last_not_of('0');
    if (mant[last] == '.') --last;
    return mant.substr(0, last + 1) + s.substr(epos);
}

} // namespace rbcom
