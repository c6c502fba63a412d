#include "gsbq/textio.hpp"

#include <cstdio>

namespace gsbq {

std::string num17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace gsbq
