#ifndef FFD_METRICS_HPP
#define FFD_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ffd/enrichment.hpp"
#include "ffd/history.hpp"

namespace ffd {

// AS-fraction rescaling constants. The first stage damps the fraction while
// the AS count is in CDN territory; the second pushes it towards 1 once the
// count reaches the range seen in fast flux networks.
struct FasParams {
    double s1 = 2.5;  // scale of the damping stage
    int n0_1 = 3;     // AS count at or below which the fraction is zeroed
    double s2 = 40.0; // scale of the boosting stage
    int n0_2 = 5;     // AS count at or below which nothing is boosted
};

struct MetricParams {
    FasParams fas;
    std::size_t min_ips_for_fas = 4;  // unique IPs needed before f_AS counts
    std::size_t min_ips_for_dip = 4;  // unique IPs needed before d_IP counts
};

struct AsFraction {
    double raw = 0;       // (n_AS - 1) / n_IP
    double rescaled = 0;  // after both stages, in [0,1]
};

struct StaticCounts {
    std::uint64_t n_ip = 0;   // unique IPs over all stored records
    std::uint64_t n_net = 0;  // unique public networks (enrichment hits only)
    std::uint64_t n_as = 0;   // unique ASs (enrichment hits only)
    std::size_t m_al = 0;     // maximum answer length
    std::uint64_t db_misses = 0;  // unique IPs absent from the enrichment db
};

// The six Eq. 6 inputs in raw form plus their availability for scoring.
// d_ip always carries a value (0 in the degenerate <2-IP case, which is what
// the dispersion pre-filter keys on); d_ip_available only gates its weight.
struct StaticMetrics {
    StaticCounts counts;
    std::optional<AsFraction> f_as;
    double d_ip = 0;
    bool net_available = false;   // at least one enrichment hit
    bool as_available = false;
    bool m_al_available = false;  // some answer carried more than one IP
    bool d_ip_available = false;
};

// Eq. 4 churn ratios; each is unavailable until two chunks have closed (and,
// for the enrichment-based ones, until some IP resolves in the database).
struct HistoryMetrics {
    std::optional<double> c_ip;
    std::optional<double> c_net;
    std::optional<double> c_as;
    std::optional<double> c_al;
};

StaticCounts compute_static_counts(const DomainHistory& history, const IpDatabase& db);

// (n_AS - 1)/n_IP pushed through both rescaling stages. Unavailable when
// fewer than min_ips_for_fas IPs were collected or no AS is known.
std::optional<AsFraction> as_fraction(std::uint64_t n_as, std::uint64_t n_ip,
                                      const MetricParams& params = {});

// Median nearest-neighbour gap of the IP set, normalized by the gap a
// uniform spread over the full 32-bit space would produce. 0 when fewer
// than two distinct addresses exist; clamped to [0,1].
double ip_dispersion(std::span<const Ipv4> unique_ips);

StaticMetrics compute_static_metrics(const DomainHistory& history, const IpDatabase& db,
                                     const MetricParams& params = {});

HistoryMetrics compute_history_metrics(const DomainHistory& history, const IpDatabase& db);

}  // namespace ffd

#endif  // FFD_METRICS_HPP
