#ifndef FFD_SYNTHGEN_HPP
#define FFD_SYNTHGEN_HPP

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ffd/dns_record.hpp"
#include "ffd/enrichment.hpp"

namespace ffd {

// One enrichment range owned by a scenario; doubles as a CSV row.
struct AsBlock {
    Cidr cidr;
    std::uint32_t asn = 0;
    std::string country;
};

// A labeled synthetic domain. CDN scenarios use a handful of adjacent
// ranges in very few ASs with a stable pool; FFSN scenarios scatter their
// pool across tens of ASs and replace part of it every hour.
struct ScenarioParams {
    std::string label;  // "cdn" | "ffsn"
    std::string domain;
    int n_ips_pool = 0;
    int n_as = 0;
    std::vector<AsBlock> as_layout;  // address ranges per AS
    double churn_rate = 0;           // fraction of the pool replaced per hour
    int answers_min = 1, answers_max = 1;
    std::uint32_t ttl_min = 60, ttl_max = 300;
    double query_rate_per_hour = 30;
    double duration_hours = 6;
    std::uint64_t seed = 0;
    std::int64_t start_ts = 1640995200;  // 2022-01-01 00:00:00 UTC

    // Throws std::invalid_argument on contradictory settings (more ASs than
    // pool IPs, empty ranges, unknown label, ...).
    void validate() const;
};

struct SyntheticStream {
    std::vector<DnsAnswerRecord> records;
    std::vector<AsBlock> enrichment;
};

// Preset builders. Scenarios with distinct slice indices (0..2047) draw
// their ranges from disjoint parts of the address space, so any mix of
// their enrichment rows loads as one database.
ScenarioParams make_cdn_preset(std::string domain, std::uint64_t seed, std::size_t slice = 0);
ScenarioParams make_ffsn_preset(std::string domain, std::uint64_t seed, std::size_t slice = 0);

// Deterministic for fixed params: same seed, same bytes.
SyntheticStream generate_stream(const ScenarioParams& params);

void write_stream_jsonl(std::span<const DnsAnswerRecord> records, std::ostream& out);
void write_enrichment_csv(std::span<const AsBlock> blocks, std::ostream& out);

}  // namespace ffd

#endif  // FFD_SYNTHGEN_HPP
