#include "aos/format.hpp"

#include <cstdio>

namespace aos {

std::string num12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

}  // namespace aos
