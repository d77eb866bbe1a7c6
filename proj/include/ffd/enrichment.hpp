#ifndef FFD_ENRICHMENT_HPP
#define FFD_ENRICHMENT_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "ffd/ipv4.hpp"

namespace ffd {

struct Cidr {
    std::uint32_t base = 0;  // low address, host order
    int prefix_len = 32;

    std::uint32_t first() const { return base; }
    std::uint32_t last() const {
        return prefix_len == 0 ? 0xffffffffu : base | (0xffffffffu >> prefix_len);
    }
    bool contains(Ipv4 ip) const { return ip.index >= first() && ip.index <= last(); }
    std::string to_string() const;

    bool operator==(const Cidr&) const = default;
};

// "a.b.c.d/len"; host bits below the prefix must be zero.
std::optional<Cidr> parse_cidr(const std::string& text);

struct IpMeta {
    Cidr network;
    std::optional<std::uint32_t> asn;    // positive AS number, or unknown
    std::optional<std::string> country;  // ISO-3166 alpha-2, or unknown
};

// Immutable snapshot of IP metadata ranges, binary-searchable by address.
// Loading rejects overlapping ranges outright; after that the database is
// safe for unrestricted concurrent reads.
class IpDatabase {
public:
    IpDatabase() = default;

    // CSV with header "cidr,asn,country". Empty asn/country fields mean
    // unknown. Throws FormatError on malformed rows (with the row number)
    // or overlapping ranges.
    static IpDatabase load(const std::filesystem::path& path);
    static IpDatabase load_stream(std::istream& in, const std::string& source = "<stream>");

    std::optional<IpMeta> lookup(Ipv4 ip) const;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::int64_t build_timestamp() const { return build_timestamp_; }

private:
    struct Entry {
        std::uint32_t first;
        std::uint32_t last;
        IpMeta meta;
    };
    std::vector<Entry> entries_;  // sorted by first, pairwise disjoint
    std::int64_t build_timestamp_ = 0;
};

}  // namespace ffd

#endif  // FFD_ENRICHMENT_HPP
