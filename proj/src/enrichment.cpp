#include "ffd/enrichment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "ffd/error.hpp"

namespace ffd {

std::string Cidr::to_string() const {
    return ffd::to_string(Ipv4(base)) + "/" + std::to_string(prefix_len);
}

std::optional<Cidr> parse_cidr(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return std::nullopt;
    auto ip = parse_ipv4(text.substr(0, slash));
    if (!ip) return std::nullopt;
    const std::string len_part = text.substr(slash + 1);
    if (len_part.empty() || len_part.size() > 2) return std::nullopt;
    int len = 0;
    for (char c : len_part) {
        if (c < '0' || c > '9') return std::nullopt;
        len = len * 10 + (c - '0');
    }
    if (len > 32) return std::nullopt;
    Cidr cidr{ip->index, len};
    std::uint32_t mask = len == 0 ? 0 : 0xffffffffu << (32 - len);
    if ((cidr.base & ~mask) != 0) return std::nullopt;  // host bits set
    return cidr;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

IpDatabase IpDatabase::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open enrichment database " + path.string());
    return load_stream(in, path.string());
}

IpDatabase IpDatabase::load_stream(std::istream& in, const std::string& source) {
    IpDatabase db;
    db.build_timestamp_ = std::chrono::duration_cast<std::chrono::seconds>(
                              std::chrono::system_clock::now().time_since_epoch())
                              .count();
    std::string line;
    std::size_t row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            first = false;
            if (line.rfind("cidr,", 0) == 0) continue;  // header
        }
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 3) {
            throw FormatError(source + " row " + std::to_string(row) + ": expected cidr,asn,country");
        }
        auto cidr = parse_cidr(fields[0]);
        if (!cidr) {
            throw FormatError(source + " row " + std::to_string(row) + ": bad CIDR \"" + fields[0] + "\"");
        }
        Entry entry{cidr->first(), cidr->last(), IpMeta{*cidr, std::nullopt, std::nullopt}};
        if (!fields[1].empty()) {
            std::uint64_t asn = 0;
            for (char c : fields[1]) {
                if (c < '0' || c > '9') {
                    throw FormatError(source + " row " + std::to_string(row) + ": bad ASN \"" + fields[1] + "\"");
                }
                asn = asn * 10 + static_cast<std::uint64_t>(c - '0');
                if (asn > 0xffffffffu) {
                    throw FormatError(source + " row " + std::to_string(row) + ": ASN out of range");
                }
            }
            if (asn == 0) {
                throw FormatError(source + " row " + std::to_string(row) + ": ASN must be positive");
            }
            entry.meta.asn = static_cast<std::uint32_t>(asn);
        }
        if (!fields[2].empty()) {
            if (fields[2].size() != 2) {
                throw FormatError(source + " row " + std::to_string(row) + ": country must be 2 letters");
            }
            entry.meta.country = fields[2];
        }
        db.entries_.push_back(std::move(entry));
    }

    std::sort(db.entries_.begin(), db.entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < db.entries_.size(); ++i) {
        if (db.entries_[i].first <= db.entries_[i - 1].last) {
            throw FormatError(source + ": overlapping ranges " + db.entries_[i - 1].meta.network.to_string() +
                              " and " + db.entries_[i].meta.network.to_string());
        }
    }
    return db;
}

std::optional<IpMeta> IpDatabase::lookup(Ipv4 ip) const {
    auto it = std::upper_bound(entries_.begin(), entries_.end(), ip.index,
                               [](std::uint32_t value, const Entry& e) { return value < e.first; });
    if (it == entries_.begin()) return std::nullopt;
    --it;
    if (ip.index > it->last) return std::nullopt;
    return it->meta;
}

}  // namespace ffd
