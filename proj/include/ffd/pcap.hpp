#ifndef FFD_PCAP_HPP
#define FFD_PCAP_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <span>
#include <vector>

#include "ffd/dns_record.hpp"

namespace ffd {

// Per-stream skip accounting. A packet increments exactly one counter
// (or `responses` when a record is emitted).
struct PcapStats {
    std::uint64_t packets = 0;     // pcap records seen
    std::uint64_t responses = 0;   // DnsAnswerRecords emitted
    std::uint64_t truncated = 0;   // capture shorter than the packet needs
    std::uint64_t malformed = 0;   // unparseable link/IP/DNS structure
    std::uint64_t queries = 0;     // DNS messages with QR=0
    std::uint64_t non_a = 0;       // responses without a usable A answer
    std::uint64_t tcp_dns = 0;     // DNS over TCP, not parsed
    std::uint64_t fragmented = 0;  // non-first IP fragments
    std::uint64_t non_dns = 0;     // everything else (not UDP/53 IPv4)

    std::uint64_t skipped() const {
        return truncated + malformed + queries + non_a + tcp_dns + fragmented + non_dns;
    }
};

using RecordSink = std::function<void(DnsAnswerRecord&&)>;

// Walks a libpcap capture (Ethernet or raw-IP link type, both byte orders,
// micro- and nanosecond variants) and emits one record per well-formed
// A-type DNS response seen on UDP/53. An unreadable global header or an
// unsupported link type throws FormatError; anything wrong with an
// individual packet only bumps a counter.
PcapStats parse_pcap_stream(std::istream& in, const RecordSink& sink);

std::vector<DnsAnswerRecord> parse_pcap_file(const std::filesystem::path& path,
                                             PcapStats* stats = nullptr);

// Decodes a single DNS message (no transport headers). Returns true and
// fills `out` when the message is an A-type response carrying at least one
// A record; otherwise bumps the matching counter and returns false.
bool parse_dns_message(std::span<const std::uint8_t> msg, std::int64_t timestamp,
                       DnsAnswerRecord& out, PcapStats& stats);

}  // namespace ffd

#endif  // FFD_PCAP_HPP
