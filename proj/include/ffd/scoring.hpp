#ifndef FFD_SCORING_HPP
#define FFD_SCORING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffd/metrics.hpp"

namespace ffd {

// Every constant of the aggregation chain. Defaults are the reference
// values; a config file may override any of them.
struct ScoringParams {
    // square-exponential scales for the static metrics (x0 = 1)
    double s_ip = 24, s_net = 12, s_as = 6, s_al = 10;
    // square-exponential scales for the history metrics (x0 = 0)
    double sh_ip = 1, sh_net = 1, sh_as = 0.5, sh_al = 0.5;
    // static aggregation weights
    double w_ip = 0.03, w_net = 0.03, w_as = 0.13, w_al = 0.09, w_f = 0.54, w_d = 0.18;
    // history aggregation weights
    double wd_ip = 0.07, wd_net = 0.23, wd_as = 0.70;
    // final aggregation weights
    double w_stat = 0.27, w_dyn = 0.38, w_cal = 0.35;

    double a_threshold = 0.25;
    double missing_weight_divisor = 20.0;
    double fas_branch_threshold = 0.5;

    // Throws std::invalid_argument when a weight group does not sum to 1,
    // a scale is non-positive, or the threshold leaves (0,1).
    void validate() const;
};

enum class Verdict { fast_flux, legit, prefiltered };

const char* to_string(Verdict verdict);

struct MetricBreakdown {
    std::string name;
    std::optional<double> raw;       // pre-rescaling value
    std::optional<double> rescaled;  // value fed into its aggregation
    double weight_used = 0;          // post-adjustment weight
    bool available = false;
};

// Full per-domain scoring output, including everything needed to explain
// the verdict.
struct ScoreResult {
    std::string qname;
    Verdict verdict = Verdict::legit;
    std::optional<double> a_stat;
    std::optional<double> a_dyn;
    std::optional<double> a_raw;         // unset for prefiltered domains
    std::optional<double> a_calibrated;
    std::optional<double> f_as;          // rescaled AS-fraction, drives the branch
    double d_ip = 0;
    bool arithmetic_branch = false;
    double w_stat_used = 0, w_dyn_used = 0, w_al_used = 0;
    std::uint64_t db_misses = 0;
    std::vector<MetricBreakdown> breakdown;
};

// 1 - e^{-((x-x0)/s)^2}. Requires x >= x0 and s > 0.
double square_exp_rescale(double x, double x0, double s);

// Missing-metric rule: an unavailable entry keeps value 0 but its weight is
// divided by `divisor`; all weights are then renormalized to sum to 1.
std::vector<double> adjust_weights(std::span<const double> base, std::span<const char> available,
                                   double divisor);

// Rescaled inputs for the two aggregations; nullopt marks an unavailable
// metric.
struct StaticRescaled {
    std::optional<double> n_ip, n_net, n_as, m_al, f_as, d_ip;
};
struct DynamicRescaled {
    std::optional<double> c_ip, c_net, c_as;
};

// Weighted arithmetic mean of the six static indicators. Unavailable only
// when every input is.
std::optional<double> aggregate_static(const StaticRescaled& in, const ScoringParams& params);

std::optional<double> aggregate_dynamic(const DynamicRescaled& in, const ScoringParams& params);

// Combines A_stat, A_dyn and the rescaled c_al: weighted arithmetic mean
// when the AS-fraction reaches the branch threshold, weighted geometric
// mean otherwise (also when f_AS is unknown).
double final_score(std::optional<double> a_stat, std::optional<double> a_dyn,
                   std::optional<double> c_al_rescaled, std::optional<double> f_as,
                   const ScoringParams& params);

// Monotone power map fixing 0 and 1 and sending the decision threshold to
// 0.5, so "calibrated > 0.5" and "raw > threshold" agree everywhere.
struct Calibration {
    double calibrated;
    Verdict verdict;
};
Calibration calibrate_and_classify(double a_raw, const ScoringParams& params);

// Dispersion pre-filter: domains whose d_IP is exactly 0 are never scored.
bool prefilter_dispersion(const StaticMetrics& metrics);

// The whole chain for one domain: metrics, pre-filter, rescaling, the two
// aggregations, final combination, calibration.
ScoreResult score_domain(const DomainHistory& history, const IpDatabase& db,
                         const MetricParams& metric_params, const ScoringParams& params);

}  // namespace ffd

#endif  // FFD_SCORING_HPP
