#include "ffd/dns_record.hpp"

#include <cctype>

#include <json.hpp>

#include "ffd/error.hpp"

namespace ffd {

std::string normalize_qname(const std::string& raw) {
    if (raw.empty() || raw == ".") throw FormatError("invalid domain name: \"" + raw + "\"");
    std::string name = raw;
    if (name.back() == '.') name.pop_back();
    if (name.empty()) throw FormatError("invalid domain name: \"" + raw + "\"");
    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return name;
}

DnsAnswerRecord parse_log_line(const std::string& line, std::size_t line_no) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError(line_no, "expected a JSON object");
    for (const char* key : {"ts", "qname", "ttl", "ips"}) {
        if (!doc.contains(key)) throw ParseError(line_no, std::string("missing key \"") + key + "\"");
    }
    if (!doc["ts"].is_number_integer()) throw ParseError(line_no, "ts must be an integer");
    if (!doc["qname"].is_string()) throw ParseError(line_no, "qname must be a string");
    if (!doc["ttl"].is_number_integer()) throw ParseError(line_no, "ttl must be an integer");
    if (!doc["ips"].is_array()) throw ParseError(line_no, "ips must be an array");

    DnsAnswerRecord record;
    record.timestamp = doc["ts"].get<std::int64_t>();
    const std::int64_t ttl = doc["ttl"].get<std::int64_t>();
    if (ttl < 0) throw ParseError(line_no, "negative ttl");
    record.ttl = static_cast<std::uint32_t>(ttl);
    try {
        record.qname = normalize_qname(doc["qname"].get<std::string>());
    } catch (const FormatError& e) {
        throw ParseError(line_no, e.what());
    }
    for (const auto& entry : doc["ips"]) {
        if (!entry.is_string()) throw ParseError(line_no, "ips entries must be strings");
        auto ip = parse_ipv4(entry.get<std::string>());
        if (!ip) throw ParseError(line_no, "malformed IPv4 \"" + entry.get<std::string>() + "\"");
        record.ips.push_back(*ip);
    }
    if (record.ips.empty()) throw ParseError(line_no, "empty answer");
    return record;
}

std::string to_log_line(const DnsAnswerRecord& record) {
    nlohmann::ordered_json doc;
    doc["ts"] = record.timestamp;
    doc["qname"] = record.qname;
    doc["ttl"] = record.ttl;
    auto ips = nlohmann::ordered_json::array();
    for (Ipv4 ip : record.ips) ips.push_back(to_string(ip));
    doc["ips"] = std::move(ips);
    return doc.dump();
}

}  // namespace ffd
