#include "ffd/scoring.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ffd {

namespace {

void check_group(double sum, const char* group) {
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument(std::string("scoring weights for ") + group + " must sum to 1");
    }
}

// Shared arithmetic-mean-with-missing implementation.
template <std::size_t N>
std::optional<double> weighted_mean(const std::array<std::optional<double>, N>& values,
                                    const std::array<double, N>& base_weights, double divisor) {
    std::array<char, N> available{};
    bool any = false;
    for (std::size_t i = 0; i < N; ++i) {
        available[i] = values[i].has_value() ? 1 : 0;
        any = any || values[i].has_value();
    }
    if (!any) return std::nullopt;
    auto weights = adjust_weights(base_weights, available, divisor);
    double sum = 0;
    for (std::size_t i = 0; i < N; ++i) sum += weights[i] * values[i].value_or(0.0);
    return sum;
}

}  // namespace

void ScoringParams::validate() const {
    check_group(w_ip + w_net + w_as + w_al + w_f + w_d, "the static metrics");
    check_group(wd_ip + wd_net + wd_as, "the history metrics");
    check_group(w_stat + w_dyn + w_cal, "the final aggregation");
    for (double s : {s_ip, s_net, s_as, s_al, sh_ip, sh_net, sh_as, sh_al}) {
        if (s <= 0) throw std::invalid_argument("rescaling scales must be positive");
    }
    if (a_threshold <= 0 || a_threshold >= 1) {
        throw std::invalid_argument("threshold must lie strictly between 0 and 1");
    }
    if (missing_weight_divisor < 1) {
        throw std::invalid_argument("missing-weight divisor must be at least 1");
    }
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::fast_flux: return "fast-flux";
        case Verdict::legit: return "legit";
        case Verdict::prefiltered: return "prefiltered";
    }
    return "legit";
}

double square_exp_rescale(double x, double x0, double s) {
    if (s <= 0) throw std::invalid_argument("rescaling scale must be positive");
    if (x < x0) throw std::invalid_argument("rescaling input below its minimum");
    const double t = (x - x0) / s;
    return 1.0 - std::exp(-t * t);
}

std::vector<double> adjust_weights(std::span<const double> base, std::span<const char> available,
                                   double divisor) {
    if (base.size() != available.size()) {
        throw std::invalid_argument("weight/availability size mismatch");
    }
    std::vector<double> weights(base.size());
    double sum = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        weights[i] = available[i] ? base[i] : base[i] / divisor;
        sum += weights[i];
    }
    if (sum <= 0) throw std::invalid_argument("weights must have a positive sum");
    for (double& w : weights) w /= sum;
    return weights;
}

std::optional<double> aggregate_static(const StaticRescaled& in, const ScoringParams& params) {
    return weighted_mean<6>({in.n_ip, in.n_net, in.n_as, in.m_al, in.f_as, in.d_ip},
                            {params.w_ip, params.w_net, params.w_as, params.w_al, params.w_f,
                             params.w_d},
                            params.missing_weight_divisor);
}

std::optional<double> aggregate_dynamic(const DynamicRescaled& in, const ScoringParams& params) {
    return weighted_mean<3>({in.c_ip, in.c_net, in.c_as},
                            {params.wd_ip, params.wd_net, params.wd_as},
                            params.missing_weight_divisor);
}

double final_score(std::optional<double> a_stat, std::optional<double> a_dyn,
                   std::optional<double> c_al_rescaled, std::optional<double> f_as,
                   const ScoringParams& params) {
    const std::array<std::optional<double>, 3> components{a_stat, a_dyn, c_al_rescaled};
    const std::array<double, 3> base{params.w_stat, params.w_dyn, params.w_cal};
    std::array<char, 3> available{};
    for (std::size_t i = 0; i < 3; ++i) available[i] = components[i].has_value() ? 1 : 0;
    auto weights = adjust_weights(base, available, params.missing_weight_divisor);

    // An unknown AS-fraction routes to the geometric branch: absent AS data
    // must not unlock the more lenient mean.
    const bool arithmetic = f_as.has_value() && *f_as >= params.fas_branch_threshold;
    if (arithmetic) {
        double sum = 0;
        for (std::size_t i = 0; i < 3; ++i) sum += weights[i] * components[i].value_or(0.0);
        return sum;
    }
    double log_sum = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double v = components[i].value_or(0.0);
        if (v <= 0) return 0.0;  // exact annihilation, no epsilon floor
        log_sum += weights[i] * std::log(v);
    }
    return std::exp(log_sum);
}

Calibration calibrate_and_classify(double a_raw, const ScoringParams& params) {
    const double gamma = std::log(0.5) / std::log(params.a_threshold);
    Calibration result;
    result.calibrated = std::pow(a_raw, gamma);
    result.verdict = a_raw > params.a_threshold ? Verdict::fast_flux : Verdict::legit;
    return result;
}

bool prefilter_dispersion(const StaticMetrics& metrics) {
    return metrics.d_ip != 0.0;
}

ScoreResult score_domain(const DomainHistory& history, const IpDatabase& db,
                         const MetricParams& metric_params, const ScoringParams& params) {
    const StaticMetrics sm = compute_static_metrics(history, db, metric_params);
    if (sm.counts.n_ip == 0) throw std::invalid_argument("cannot score an empty history");

    ScoreResult result;
    result.qname = history.qname();
    result.d_ip = sm.d_ip;
    result.db_misses = sm.counts.db_misses;

    const HistoryMetrics hm = compute_history_metrics(history, db);

    // Rescaled static inputs (Eq. 5 with x0 = 1; f_AS and d_IP are already
    // normalized by construction).
    StaticRescaled stat;
    stat.n_ip = square_exp_rescale(static_cast<double>(sm.counts.n_ip), 1, params.s_ip);
    if (sm.net_available) {
        stat.n_net = square_exp_rescale(static_cast<double>(sm.counts.n_net), 1, params.s_net);
    }
    if (sm.as_available) {
        stat.n_as = square_exp_rescale(static_cast<double>(sm.counts.n_as), 1, params.s_as);
    }
    if (sm.m_al_available) {
        stat.m_al = square_exp_rescale(static_cast<double>(sm.counts.m_al), 1, params.s_al);
    }
    if (sm.f_as) stat.f_as = sm.f_as->rescaled;
    if (sm.d_ip_available) stat.d_ip = sm.d_ip;
    result.f_as = stat.f_as;

    DynamicRescaled dyn;
    if (hm.c_ip) dyn.c_ip = square_exp_rescale(*hm.c_ip, 0, params.sh_ip);
    if (hm.c_net) dyn.c_net = square_exp_rescale(*hm.c_net, 0, params.sh_net);
    if (hm.c_as) dyn.c_as = square_exp_rescale(*hm.c_as, 0, params.sh_as);
    std::optional<double> c_al_rescaled;
    if (hm.c_al) c_al_rescaled = square_exp_rescale(*hm.c_al, 0, params.sh_al);

    // Breakdown rows record the weights actually used per aggregation.
    {
        const std::array<std::optional<double>, 6> values{stat.n_ip, stat.n_net, stat.n_as,
                                                          stat.m_al, stat.f_as, stat.d_ip};
        const std::array<double, 6> base{params.w_ip, params.w_net, params.w_as,
                                         params.w_al, params.w_f, params.w_d};
        std::array<char, 6> available{};
        for (std::size_t i = 0; i < 6; ++i) available[i] = values[i].has_value() ? 1 : 0;
        auto weights = adjust_weights(base, available, params.missing_weight_divisor);
        const std::array<std::optional<double>, 6> raw{
            static_cast<double>(sm.counts.n_ip), static_cast<double>(sm.counts.n_net),
            static_cast<double>(sm.counts.n_as), static_cast<double>(sm.counts.m_al),
            sm.f_as ? std::optional<double>(sm.f_as->raw) : std::nullopt, sm.d_ip};
        const char* names[6] = {"n_ip", "n_net", "n_as", "m_al", "f_as", "d_ip"};
        for (std::size_t i = 0; i < 6; ++i) {
            result.breakdown.push_back({names[i], raw[i], values[i], weights[i], available[i] != 0});
        }
    }
    {
        const std::array<std::optional<double>, 3> values{dyn.c_ip, dyn.c_net, dyn.c_as};
        const std::array<double, 3> base{params.wd_ip, params.wd_net, params.wd_as};
        std::array<char, 3> available{};
        for (std::size_t i = 0; i < 3; ++i) available[i] = values[i].has_value() ? 1 : 0;
        auto weights = adjust_weights(base, available, params.missing_weight_divisor);
        const std::array<std::optional<double>, 3> raw{hm.c_ip, hm.c_net, hm.c_as};
        const char* names[3] = {"c_ip", "c_net", "c_as"};
        for (std::size_t i = 0; i < 3; ++i) {
            result.breakdown.push_back({names[i], raw[i], values[i], weights[i], available[i] != 0});
        }
    }

    if (!prefilter_dispersion(sm)) {
        result.verdict = Verdict::prefiltered;
        result.breakdown.push_back({"c_al", hm.c_al, c_al_rescaled, 0, c_al_rescaled.has_value()});
        return result;
    }

    result.a_stat = aggregate_static(stat, params);
    result.a_dyn = aggregate_dynamic(dyn, params);

    {
        const std::array<double, 3> base{params.w_stat, params.w_dyn, params.w_cal};
        std::array<char, 3> available{result.a_stat.has_value() ? char(1) : char(0),
                                      result.a_dyn.has_value() ? char(1) : char(0),
                                      c_al_rescaled.has_value() ? char(1) : char(0)};
        auto weights = adjust_weights(base, available, params.missing_weight_divisor);
        result.w_stat_used = weights[0];
        result.w_dyn_used = weights[1];
        result.w_al_used = weights[2];
        result.breakdown.push_back({"c_al", hm.c_al, c_al_rescaled, weights[2],
                                    c_al_rescaled.has_value()});
    }

    result.arithmetic_branch = result.f_as.has_value() && *result.f_as >= params.fas_branch_threshold;
    result.a_raw = final_score(result.a_stat, result.a_dyn, c_al_rescaled, result.f_as, params);
    const Calibration cal = calibrate_and_classify(*result.a_raw, params);
    result.a_calibrated = cal.calibrated;
    result.verdict = cal.verdict;
    return result;
}

}  // namespace ffd
