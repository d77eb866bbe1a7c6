#include "ffd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ffd {

namespace {

constexpr double kAddressSpace = 4294967296.0;  // 2^32

struct UniqueSets {
    std::unordered_set<Ipv4> ips;
    std::unordered_set<std::uint32_t> nets;
    std::unordered_set<std::uint32_t> ases;
    std::size_t m_al = 0;
    std::uint64_t misses = 0;

    void add(const DnsAnswerRecord& record, const IpDatabase& db) {
        m_al = std::max(m_al, record.answer_length());
        for (Ipv4 ip : record.ips) {
            if (!ips.insert(ip).second) continue;
            if (auto meta = db.lookup(ip)) {
                nets.insert(meta->network.base);
                if (meta->asn) ases.insert(*meta->asn);
            } else {
                ++misses;
            }
        }
    }

    StaticCounts counts() const {
        return {ips.size(), nets.size(), ases.size(), m_al, misses};
    }
};

}  // namespace

StaticCounts compute_static_counts(const DomainHistory& history, const IpDatabase& db) {
    UniqueSets sets;
    history.for_each_record([&](const DnsAnswerRecord& r) { sets.add(r, db); });
    return sets.counts();
}

std::optional<AsFraction> as_fraction(std::uint64_t n_as, std::uint64_t n_ip,
                                      const MetricParams& params) {
    if (n_as < 1 || n_ip < params.min_ips_for_fas) return std::nullopt;

    AsFraction result;
    result.raw = static_cast<double>(n_as - 1) / static_cast<double>(n_ip);

    // Damping stage: zero while n_AS is at or below n0_1, then ramps in.
    double f = 0;
    const double as_count = static_cast<double>(n_as);
    if (as_count > params.fas.n0_1) {
        const double t = (as_count - params.fas.n0_1) / params.fas.s1;
        f = (1.0 - std::exp(-t * t)) * result.raw;
    }
    // Boosting stage, applied to the complement: shrinks 1-f once n_AS
    // exceeds n0_2, which raises f towards 1.
    if (as_count > params.fas.n0_2) {
        const double t = (as_count - params.fas.n0_2) / params.fas.s2;
        const double g = 1.0 - std::exp(-t * t);
        f = 1.0 - (1.0 - g) * (1.0 - f);
    }
    result.rescaled = std::clamp(f, 0.0, 1.0);
    return result;
}

double ip_dispersion(std::span<const Ipv4> unique_ips) {
    const std::size_t n = unique_ips.size();
    if (n < 2) return 0.0;

    std::vector<std::uint32_t> indices;
    indices.reserve(n);
    for (Ipv4 ip : unique_ips) indices.push_back(ip_to_index(ip));
    std::sort(indices.begin(), indices.end());

    std::vector<std::uint32_t> gaps;
    gaps.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) gaps.push_back(indices[i] - indices[i - 1]);
    std::sort(gaps.begin(), gaps.end());

    const std::size_t m = gaps.size();
    double median;
    if (m % 2 == 1) {
        median = static_cast<double>(gaps[m / 2]);
    } else {
        median = (static_cast<double>(gaps[m / 2 - 1]) + static_cast<double>(gaps[m / 2])) / 2.0;
    }

    const double uniform_gap = kAddressSpace / static_cast<double>(n - 1);
    return std::clamp(median / uniform_gap, 0.0, 1.0);
}

StaticMetrics compute_static_metrics(const DomainHistory& history, const IpDatabase& db,
                                     const MetricParams& params) {
    UniqueSets sets;
    history.for_each_record([&](const DnsAnswerRecord& r) { sets.add(r, db); });

    StaticMetrics metrics;
    metrics.counts = sets.counts();
    metrics.net_available = metrics.counts.n_net > 0;
    metrics.as_available = metrics.counts.n_as > 0;
    metrics.m_al_available = metrics.counts.m_al >= 2;
    metrics.f_as = as_fraction(metrics.counts.n_as, metrics.counts.n_ip, params);

    std::vector<Ipv4> ips(sets.ips.begin(), sets.ips.end());
    metrics.d_ip = ip_dispersion(ips);
    metrics.d_ip_available = metrics.counts.n_ip >= params.min_ips_for_dip;
    return metrics;
}

HistoryMetrics compute_history_metrics(const DomainHistory& history, const IpDatabase& db) {
    HistoryMetrics metrics;
    auto averages = chunk_averages(history, db);
    if (!averages) return metrics;

    // Numerators are restricted to records inside closed chunks so that a
    // stable pool fully explored in each chunk yields an exact zero.
    UniqueSets sets;
    for (const auto& chunk : history.closed_chunks()) {
        for (const auto& record : chunk.records) sets.add(record, db);
    }
    const StaticCounts counts = sets.counts();

    auto churn = [](double cumulative, double per_chunk) -> std::optional<double> {
        if (per_chunk <= 0) return std::nullopt;
        return cumulative / per_chunk - 1.0;
    };
    metrics.c_ip = churn(static_cast<double>(counts.n_ip), averages->n_ip_c);
    metrics.c_net = churn(static_cast<double>(counts.n_net), averages->n_net_c);
    metrics.c_as = churn(static_cast<double>(counts.n_as), averages->n_as_c);
    metrics.c_al = churn(static_cast<double>(counts.m_al), averages->m_al_c);
    return metrics;
}

}  // namespace ffd
