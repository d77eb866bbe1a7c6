#ifndef FFD_IPV4_HPP
#define FFD_IPV4_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace ffd {

// An IPv4 address held as its position in the 32-bit address space:
// n1.n2.n3.n4 maps to 256^3*n1 + 256^2*n2 + 256*n3 + n4.
struct Ipv4 {
    std::uint32_t index = 0;

    constexpr Ipv4() = default;
    constexpr explicit Ipv4(std::uint32_t idx) : index(idx) {}
    constexpr Ipv4(std::uint8_t n1, std::uint8_t n2, std::uint8_t n3, std::uint8_t n4)
        : index((std::uint32_t(n1) << 24) | (std::uint32_t(n2) << 16) |
                (std::uint32_t(n3) << 8) | std::uint32_t(n4)) {}

    constexpr std::uint8_t first_octet() const {
        return static_cast<std::uint8_t>(index >> 24);
    }

    auto operator<=>(const Ipv4&) const = default;
};

// Position of an address in the IPv4 space, a strictly monotone bijection
// from octet-lexicographic order onto [0, 2^32-1].
constexpr std::uint32_t ip_to_index(Ipv4 ip) { return ip.index; }

// Strict dotted-quad parser: exactly four decimal octets in [0,255], no
// leading '+', no stray characters. Returns nullopt on anything else.
std::optional<Ipv4> parse_ipv4(const std::string& text);

std::string to_string(Ipv4 ip);

}  // namespace ffd

template <>
struct std::hash<ffd::Ipv4> {
    std::size_t operator()(const ffd::Ipv4& ip) const noexcept {
        return std::hash<std::uint32_t>{}(ip.index);
    }
};

#endif  // FFD_IPV4_HPP
