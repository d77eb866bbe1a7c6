#ifndef FFD_FILTERS_HPP
#define FFD_FILTERS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "ffd/dns_record.hpp"

namespace ffd {

// Why a record was removed before metric computation. `none` means it
// survived the whole chain.
enum class FilterReason {
    none,
    whitelist,
    popular,
    config_word,
    overloaded,
    local,
    cdn_whitelist,
    ttl,
};

const char* to_string(FilterReason reason);

struct FilterVerdict {
    bool passed = false;
    FilterReason reason = FilterReason::none;
};

// Snapshot of the filter chain configuration. All name sets hold normalized
// qnames; suffixes are stored without a leading dot and match only on label
// boundaries.
struct FilterConfig {
    std::unordered_set<std::string> whitelist_domains;
    std::unordered_set<std::string> popular_domains;
    std::vector<std::string> configuration_substrings;
    std::vector<std::string> overloaded_dns_suffixes;
    std::vector<std::string> local_suffixes;
    std::unordered_set<std::string> auto_cdn_whitelist;
    std::uint32_t ttl_cutoff = 1800;

    // auto-whitelist admission rule
    std::uint64_t auto_min_observations = 100;
    int auto_min_days = 3;
    double auto_cdn_threshold = 0.2;
};

// Evaluates the chain in its fixed order (whitelist, popular, configuration
// words, overloaded DNS, local, CDN whitelist, TTL); the first matching
// filter wins and becomes the verdict's reason.
FilterVerdict apply_filters(const DnsAnswerRecord& record, const FilterConfig& cfg);

// True when `name` equals `suffix` or ends with ".suffix" (label boundary).
bool suffix_matches(const std::string& name, const std::string& suffix);

// What refresh_auto_whitelist consumes: one entry per scored domain over a
// trailing window.
struct DomainSummary {
    std::string qname;
    std::uint64_t observations = 0;
    int distinct_days = 0;
    double calibrated_a = 1.0;
    bool has_score = false;
};

// Adds domains that behaved like a CDN/RRDNS for long enough to the auto
// whitelist. Entries are never removed here. Returns the number added.
std::size_t refresh_auto_whitelist(FilterConfig& cfg, std::span<const DomainSummary> summaries);

}  // namespace ffd

#endif  // FFD_FILTERS_HPP
