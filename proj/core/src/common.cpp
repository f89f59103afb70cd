#include "roadprio/common.hpp"

#include <charconv>

namespace roadprio {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

} // namespace roadprio
