#include "ffd/pcap.hpp"

#include <cstring>
#include <fstream>
#include <limits>

#include "ffd/error.hpp"

namespace ffd {

namespace {

constexpr std::uint32_t kMagicUsec = 0xa1b2c3d4;
constexpr std::uint32_t kMagicUsecSwapped = 0xd4c3b2a1;
constexpr std::uint32_t kMagicNsec = 0xa1b23c4d;
constexpr std::uint32_t kMagicNsecSwapped = 0x4d3cb2a1;

constexpr std::uint32_t kLinkEthernet = 1;
constexpr std::uint32_t kLinkRawIp = 101;

constexpr std::uint32_t kMaxPacketLen = 64u << 20;

constexpr std::uint16_t kTypeA = 1;
constexpr std::uint16_t kClassIn = 1;

// Raised while decoding one packet; both are caught per packet.
struct short_packet {};
struct bad_packet {};

// Bounds-checked big-endian cursor over a captured packet.
class Cursor {
public:
    explicit Cursor(std::span<const std::uint8_t> data) : data_(data) {}

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

    void require(std::size_t n) const {
        if (remaining() < n) throw short_packet{};
    }

    std::uint8_t u8() {
        require(1);
        return data_[pos_++];
    }

    std::uint16_t be16() {
        require(2);
        std::uint16_t v = static_cast<std::uint16_t>((data_[pos_] << 8) | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }

    std::uint32_t be32() {
        require(4);
        std::uint32_t v = (std::uint32_t(data_[pos_]) << 24) | (std::uint32_t(data_[pos_ + 1]) << 16) |
                          (std::uint32_t(data_[pos_ + 2]) << 8) | std::uint32_t(data_[pos_ + 3]);
        pos_ += 4;
        return v;
    }

    void skip(std::size_t n) {
        require(n);
        pos_ += n;
    }

    std::span<const std::uint8_t> rest() const { return data_.subspan(pos_); }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

std::uint32_t flip32(std::uint32_t v) {
    return ((v & 0xff) << 24) | ((v & 0xff00) << 8) | ((v >> 8) & 0xff00) | (v >> 24);
}

// Decodes a possibly compressed domain name starting at *offset inside the
// full message. Advances *offset past the name as it appears in the primary
// byte stream. Pointers must target earlier offsets, which rules out loops.
void read_dns_name(std::span<const std::uint8_t> msg, std::size_t& offset, std::string& out) {
    std::size_t pos = offset;
    bool jumped = false;
    std::size_t name_len = 0;
    while (true) {
        if (pos >= msg.size()) throw short_packet{};
        std::uint8_t len = msg[pos];
        if ((len & 0xc0) == 0xc0) {
            if (pos + 1 >= msg.size()) throw short_packet{};
            std::size_t target = static_cast<std::size_t>(len & 0x3f) << 8 | msg[pos + 1];
            if (target >= pos) throw bad_packet{};
            if (!jumped) offset = pos + 2;
            jumped = true;
            pos = target;
            continue;
        }
        if ((len & 0xc0) != 0) throw bad_packet{};  // 0x40/0x80 label types unsupported
        if (len == 0) {
            if (!jumped) offset = pos + 1;
            return;
        }
        if (pos + 1 + len > msg.size()) throw short_packet{};
        name_len += len + 1;
        if (name_len > 255) throw bad_packet{};
        if (!out.empty()) out.push_back('.');
        out.append(reinterpret_cast<const char*>(msg.data() + pos + 1), len);
        pos += 1 + len;
    }
}

void skip_dns_name(std::span<const std::uint8_t> msg, std::size_t& offset) {
    std::string scratch;
    read_dns_name(msg, offset, scratch);
}

}  // namespace

bool parse_dns_message(std::span<const std::uint8_t> msg, std::int64_t timestamp,
                       DnsAnswerRecord& out, PcapStats& stats) {
    try {
        if (msg.size() < 12) throw short_packet{};
        std::uint16_t flags = static_cast<std::uint16_t>((msg[2] << 8) | msg[3]);
        std::uint16_t qdcount = static_cast<std::uint16_t>((msg[4] << 8) | msg[5]);
        std::uint16_t ancount = static_cast<std::uint16_t>((msg[6] << 8) | msg[7]);

        if ((flags & 0x8000) == 0) {
            ++stats.queries;
            return false;
        }
        if (qdcount == 0) throw bad_packet{};

        std::size_t offset = 12;
        std::string qname_raw;
        read_dns_name(msg, offset, qname_raw);
        if (offset + 4 > msg.size()) throw short_packet{};
        std::uint16_t qtype = static_cast<std::uint16_t>((msg[offset] << 8) | msg[offset + 1]);
        std::uint16_t qclass = static_cast<std::uint16_t>((msg[offset + 2] << 8) | msg[offset + 3]);
        offset += 4;
        if (qtype != kTypeA || qclass != kClassIn) {
            ++stats.non_a;
            return false;
        }
        for (std::uint16_t q = 1; q < qdcount; ++q) {
            skip_dns_name(msg, offset);
            if (offset + 4 > msg.size()) throw short_packet{};
            offset += 4;
        }

        std::vector<Ipv4> ips;
        std::uint32_t min_ttl = std::numeric_limits<std::uint32_t>::max();
        for (std::uint16_t a = 0; a < ancount; ++a) {
            skip_dns_name(msg, offset);
            if (offset + 10 > msg.size()) throw short_packet{};
            std::uint16_t rtype = static_cast<std::uint16_t>((msg[offset] << 8) | msg[offset + 1]);
            std::uint16_t rclass = static_cast<std::uint16_t>((msg[offset + 2] << 8) | msg[offset + 3]);
            std::uint32_t ttl = (std::uint32_t(msg[offset + 4]) << 24) | (std::uint32_t(msg[offset + 5]) << 16) |
                                (std::uint32_t(msg[offset + 6]) << 8) | std::uint32_t(msg[offset + 7]);
            std::uint16_t rdlength = static_cast<std::uint16_t>((msg[offset + 8] << 8) | msg[offset + 9]);
            offset += 10;
            if (offset + rdlength > msg.size()) throw short_packet{};
            if (rtype == kTypeA && rclass == kClassIn && rdlength == 4) {
                ips.emplace_back(msg[offset], msg[offset + 1], msg[offset + 2], msg[offset + 3]);
                min_ttl = std::min(min_ttl, ttl);
            }
            offset += rdlength;
        }
        if (ips.empty()) {
            ++stats.non_a;
            return false;
        }

        std::string qname;
        try {
            qname = normalize_qname(qname_raw);
        } catch (const FormatError&) {
            throw bad_packet{};
        }

        out.timestamp = timestamp;
        out.qname = std::move(qname);
        out.ttl = min_ttl;
        out.ips = std::move(ips);
        return true;
    } catch (const short_packet&) {
        ++stats.truncated;
        return false;
    } catch (const bad_packet&) {
        ++stats.malformed;
        return false;
    }
}

namespace {

// Link + network + transport decapsulation down to the DNS payload.
void handle_packet(std::span<const std::uint8_t> data, std::uint32_t linktype, std::int64_t ts,
                   const RecordSink& sink, PcapStats& stats) {
    try {
        Cursor cur(data);

        if (linktype == kLinkEthernet) {
            cur.skip(12);
            std::uint16_t ethertype = cur.be16();
            int vlan_tags = 0;
            while ((ethertype == 0x8100 || ethertype == 0x88a8 || ethertype == 0x9100) && vlan_tags < 2) {
                cur.skip(2);
                ethertype = cur.be16();
                ++vlan_tags;
            }
            if (ethertype != 0x0800) {
                ++stats.non_dns;
                return;
            }
        }

        std::size_t ip_start = cur.pos();
        std::uint8_t ver_ihl = cur.u8();
        if ((ver_ihl >> 4) != 4) {
            ++stats.non_dns;
            return;
        }
        std::size_t ihl = static_cast<std::size_t>(ver_ihl & 0x0f) * 4;
        if (ihl < 20) throw bad_packet{};
        cur.skip(1);
        std::uint16_t total_length = cur.be16();
        cur.skip(2);
        std::uint16_t frag = cur.be16();
        if ((frag & 0x1fff) != 0) {
            ++stats.fragmented;
            return;
        }
        cur.skip(1);
        std::uint8_t protocol = cur.u8();
        cur.skip(8);  // checksum + addresses
        if (ihl > 20) cur.skip(ihl - 20);
        if (total_length < ihl) throw bad_packet{};

        if (protocol == 6) {
            std::uint16_t sport = cur.be16();
            std::uint16_t dport = cur.be16();
            if (sport == 53 || dport == 53) {
                ++stats.tcp_dns;
            } else {
                ++stats.non_dns;
            }
            return;
        }
        if (protocol != 17) {
            ++stats.non_dns;
            return;
        }

        std::uint16_t sport = cur.be16();
        std::uint16_t dport = cur.be16();
        std::uint16_t udp_len = cur.be16();
        cur.skip(2);
        if (sport != 53 && dport != 53) {
            ++stats.non_dns;
            return;
        }
        if (udp_len < 8) throw bad_packet{};

        // The DNS payload is bounded by both the UDP length field and what
        // the IP header claims is left; a capture cut below either limit
        // surfaces as short_packet inside the message parser.
        std::size_t payload_len = udp_len - 8;
        std::size_t ip_payload_end = ip_start + total_length;
        if (ip_payload_end > cur.pos() && ip_payload_end - cur.pos() < payload_len) {
            payload_len = ip_payload_end - cur.pos();
        }
        auto rest = cur.rest();
        if (rest.size() < payload_len) throw short_packet{};

        DnsAnswerRecord record;
        if (parse_dns_message(rest.subspan(0, payload_len), ts, record, stats)) {
            ++stats.responses;
            sink(std::move(record));
        }
    } catch (const short_packet&) {
        ++stats.truncated;
    } catch (const bad_packet&) {
        ++stats.malformed;
    }
}

}  // namespace

PcapStats parse_pcap_stream(std::istream& in, const RecordSink& sink) {
    unsigned char header[24];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (in.gcount() != sizeof(header)) throw FormatError("unreadable pcap header: file too short");

    std::uint32_t magic;
    std::memcpy(&magic, header, 4);
    bool swapped;
    if (magic == kMagicUsec || magic == kMagicNsec) {
        swapped = false;
    } else if (magic == kMagicUsecSwapped || magic == kMagicNsecSwapped) {
        swapped = true;
    } else {
        throw FormatError("unreadable pcap header: bad magic");
    }
    // The magic is compared after memcpy, so "swapped" already means
    // "relative to this host" whatever the capturing host's byte order was.
    auto field32 = [&](const unsigned char* p) {
        std::uint32_t v;
        std::memcpy(&v, p, 4);
        return swapped ? flip32(v) : v;
    };

    std::uint32_t linktype = field32(header + 20);
    if (linktype != kLinkEthernet && linktype != kLinkRawIp) {
        throw FormatError("unsupported pcap link type " + std::to_string(linktype));
    }

    PcapStats stats;
    std::vector<std::uint8_t> buf;
    unsigned char rec[16];
    while (true) {
        in.read(reinterpret_cast<char*>(rec), sizeof(rec));
        if (in.gcount() == 0) break;
        if (in.gcount() != sizeof(rec)) {
            ++stats.truncated;  // trailing partial record header
            break;
        }
        std::uint32_t ts_sec = field32(rec);
        std::uint32_t incl_len = field32(rec + 8);
        if (incl_len > kMaxPacketLen) throw FormatError("implausible packet length in pcap record");
        buf.resize(incl_len);
        in.read(reinterpret_cast<char*>(buf.data()), incl_len);
        if (static_cast<std::uint32_t>(in.gcount()) != incl_len) {
            ++stats.packets;
            ++stats.truncated;
            break;
        }
        ++stats.packets;
        handle_packet(buf, linktype, static_cast<std::int64_t>(ts_sec), sink, stats);
    }
    return stats;
}

std::vector<DnsAnswerRecord> parse_pcap_file(const std::filesystem::path& path, PcapStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open pcap file " + path.string());
    std::vector<DnsAnswerRecord> records;
    PcapStats s = parse_pcap_stream(in, [&](DnsAnswerRecord&& r) { records.push_back(std::move(r)); });
    if (stats) *stats = s;
    return records;
}

}  // namespace ffd
