#ifndef FFD_DNS_RECORD_HPP
#define FFD_DNS_RECORD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ffd/ipv4.hpp"

namespace ffd {

// One resolved A-type DNS response. Unresolved queries (empty answer
// sections) are never materialized, so ips is always non-empty.
struct DnsAnswerRecord {
    std::int64_t timestamp = 0;  // seconds since epoch, UTC
    std::string qname;           // lowercase, no trailing dot
    std::uint32_t ttl = 0;       // minimum TTL among the answer's A records
    std::vector<Ipv4> ips;       // in answer order

    std::size_t answer_length() const { return ips.size(); }

    bool operator==(const DnsAnswerRecord&) const = default;
};

// Lowercases and strips a single trailing dot. Throws FormatError on an
// empty name or a bare ".".
std::string normalize_qname(const std::string& raw);

// Parses one line of the passive-DNS log (JSON object with keys ts, qname,
// ttl, ips). Throws ParseError carrying line_no on any violation.
DnsAnswerRecord parse_log_line(const std::string& line, std::size_t line_no = 0);

// Serializes a record back to the log schema. parse_log_line(to_log_line(r))
// yields a record equal to r.
std::string to_log_line(const DnsAnswerRecord& record);

}  // namespace ffd

#endif  // FFD_DNS_RECORD_HPP
