#include "ffd/filters.hpp"

namespace ffd {

const char* to_string(FilterReason reason) {
    switch (reason) {
        case FilterReason::none: return "none";
        case FilterReason::whitelist: return "whitelist";
        case FilterReason::popular: return "popular";
        case FilterReason::config_word: return "config_word";
        case FilterReason::overloaded: return "overloaded";
        case FilterReason::local: return "local";
        case FilterReason::cdn_whitelist: return "cdn_whitelist";
        case FilterReason::ttl: return "ttl";
    }
    return "none";
}

bool suffix_matches(const std::string& name, const std::string& suffix) {
    if (suffix.empty()) return false;
    if (name == suffix) return true;
    if (name.size() <= suffix.size()) return false;
    return name[name.size() - suffix.size() - 1] == '.' &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
}

FilterVerdict apply_filters(const DnsAnswerRecord& record, const FilterConfig& cfg) {
    const std::string& qname = record.qname;

    if (cfg.whitelist_domains.contains(qname)) return {false, FilterReason::whitelist};
    if (cfg.popular_domains.contains(qname)) return {false, FilterReason::popular};
    for (const auto& word : cfg.configuration_substrings) {
        if (!word.empty() && qname.find(word) != std::string::npos) {
            return {false, FilterReason::config_word};
        }
    }
    for (const auto& suffix : cfg.overloaded_dns_suffixes) {
        if (suffix_matches(qname, suffix)) return {false, FilterReason::overloaded};
    }
    for (const auto& suffix : cfg.local_suffixes) {
        if (suffix_matches(qname, suffix)) return {false, FilterReason::local};
    }
    if (cfg.auto_cdn_whitelist.contains(qname)) return {false, FilterReason::cdn_whitelist};
    if (record.ttl > cfg.ttl_cutoff) return {false, FilterReason::ttl};

    return {true, FilterReason::none};
}

std::size_t refresh_auto_whitelist(FilterConfig& cfg, std::span<const DomainSummary> summaries) {
    std::size_t added = 0;
    for (const auto& s : summaries) {
        if (!s.has_score) continue;
        if (s.observations < cfg.auto_min_observations) continue;
        if (s.distinct_days < cfg.auto_min_days) continue;
        if (s.calibrated_a >= cfg.auto_cdn_threshold) continue;
        if (cfg.auto_cdn_whitelist.insert(s.qname).second) ++added;
    }
    return added;
}

}  // namespace ffd
