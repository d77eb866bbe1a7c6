#include "ffd/ipv4.hpp"

#include <array>
#include <cstdio>

namespace ffd {

std::optional<Ipv4> parse_ipv4(const std::string& text) {
    std::array<std::uint32_t, 4> octets{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') return std::nullopt;
        std::uint32_t value = 0;
        std::size_t digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + static_cast<std::uint32_t>(text[pos] - '0');
            if (value > 255) return std::nullopt;
            ++pos;
            ++digits;
        }
        if (digits == 0 || digits > 3) return std::nullopt;
        octets[static_cast<std::size_t>(i)] = value;
        if (i < 3) {
            if (pos >= text.size() || text[pos] != '.') return std::nullopt;
            ++pos;
        }
    }
    if (pos != text.size()) return std::nullopt;
    return Ipv4(static_cast<std::uint8_t>(octets[0]), static_cast<std::uint8_t>(octets[1]),
                static_cast<std::uint8_t>(octets[2]), static_cast<std::uint8_t>(octets[3]));
}

std::string to_string(Ipv4 ip) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (ip.index >> 24) & 0xff,
                  (ip.index >> 16) & 0xff, (ip.index >> 8) & 0xff, ip.index & 0xff);
    return buf;
}

}  // namespace ffd
