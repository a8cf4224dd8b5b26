#pragma once

#include <cstdio>
#include <string>

namespace pqbit::csv {

// 17 significant digits: enough to round-trip any double.
inline std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace pqbit::csv
