#include "ffd/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace ffd {

namespace {

// Scenarios carve the address space into /20 blocks and slice `i` may only
// use blocks whose index is congruent to i modulo kSlices. Each slice owns
// 512 blocks scattered across the whole space, which keeps the per-domain
// IP dispersion realistic while different scenarios stay disjoint.
constexpr std::uint32_t kBlockBits = 12;  // /20 -> 2^12 addresses per block
constexpr std::uint32_t kBlockCount = 1u << 20;
constexpr std::uint32_t kSlices = 2048;
constexpr std::uint32_t kBlocksPerSlice = kBlockCount / kSlices;

const char* kCountries[] = {"RO", "BG", "UA", "RU", "DE", "US", "FR", "PL", "TR", "BR"};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Bounded draw; the modulo bias is irrelevant for synthetic data and
    // keeps the stream identical across standard library implementations.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

private:
    std::mt19937_64 engine_;
};

std::uint32_t block_base(std::uint32_t block_index) { return block_index << kBlockBits; }

std::uint32_t slice_block(std::size_t slice, std::uint32_t within) {
    return within * kSlices + static_cast<std::uint32_t>(slice % kSlices);
}

}  // namespace

void ScenarioParams::validate() const {
    if (label != "cdn" && label != "ffsn") {
        throw std::invalid_argument("scenario label must be \"cdn\" or \"ffsn\"");
    }
    if (domain.empty()) throw std::invalid_argument("scenario needs a domain name");
    if (n_ips_pool < 1) throw std::invalid_argument("pool must hold at least one IP");
    if (n_as < 1) throw std::invalid_argument("scenario needs at least one AS");
    if (n_as > n_ips_pool) {
        throw std::invalid_argument("n_as exceeds the IP pool size");
    }
    if (churn_rate < 0 || churn_rate > 1) throw std::invalid_argument("churn_rate must be in [0,1]");
    if (answers_min < 1 || answers_max < answers_min) {
        throw std::invalid_argument("empty answers-per-query range");
    }
    if (ttl_max < ttl_min) throw std::invalid_argument("empty TTL range");
    if (query_rate_per_hour <= 0) throw std::invalid_argument("query rate must be positive");
    if (duration_hours <= 0) throw std::invalid_argument("duration must be positive");
    if (as_layout.empty()) throw std::invalid_argument("scenario needs an AS layout");
    std::unordered_set<std::uint32_t> asns;
    for (const auto& block : as_layout) asns.insert(block.asn);
    if (asns.size() != static_cast<std::size_t>(n_as)) {
        throw std::invalid_argument("as_layout must cover exactly n_as distinct ASNs");
    }
}

ScenarioParams make_cdn_preset(std::string domain, std::uint64_t seed, std::size_t slice) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    ScenarioParams p;
    p.label = "cdn";
    p.domain = std::move(domain);
    p.seed = seed;
    p.n_as = static_cast<int>(rng.between(1, 5));
    p.n_ips_pool = static_cast<int>(rng.between(std::uint64_t(std::max(p.n_as, 4)), 24));
    p.churn_rate = 0;
    p.answers_min = 1;
    p.answers_max = 4;
    p.ttl_min = 30;
    p.ttl_max = 600;
    p.query_rate_per_hour = static_cast<double>(rng.between(20, 60));

    // Adjacent /24s carved out of a single /20: a compact, stable footprint.
    const std::uint32_t block = slice_block(slice, static_cast<std::uint32_t>(rng.below(kBlocksPerSlice)));
    const std::uint32_t base = block_base(block);
    const std::uint32_t start_sub = static_cast<std::uint32_t>(rng.below(16 - static_cast<std::uint32_t>(p.n_as) + 1));
    const std::string country = kCountries[rng.below(std::size(kCountries))];
    for (int i = 0; i < p.n_as; ++i) {
        AsBlock b;
        b.cidr = Cidr{base + ((start_sub + static_cast<std::uint32_t>(i)) << 8), 24};
        b.asn = 4200000000u + block * 16 + start_sub + static_cast<std::uint32_t>(i);
        b.country = country;
        p.as_layout.push_back(std::move(b));
    }
    return p;
}

ScenarioParams make_ffsn_preset(std::string domain, std::uint64_t seed, std::size_t slice) {
    Rng rng(seed ^ 0xc2b2ae3d27d4eb4full);
    ScenarioParams p;
    p.label = "ffsn";
    p.domain = std::move(domain);
    p.seed = seed;
    p.n_as = static_cast<int>(rng.between(30, 60));
    p.n_ips_pool = static_cast<int>(std::lround(1.2 * p.n_as));
    p.churn_rate = 0.15 + 0.01 * static_cast<double>(rng.below(21));  // 0.15..0.35
    p.answers_min = 5;
    p.answers_max = 10;
    p.ttl_min = 60;
    p.ttl_max = 600;
    p.query_rate_per_hour = static_cast<double>(rng.between(30, 60));

    // Scattered /20 blocks, one to three per AS, compromised hosts all over
    // the map.
    std::unordered_set<std::uint32_t> taken;
    for (int i = 0; i < p.n_as; ++i) {
        const std::uint32_t asn = 64512u + static_cast<std::uint32_t>(
                                               slice * 64 + static_cast<std::size_t>(i));
        const int blocks = static_cast<int>(rng.between(1, 3));
        const std::string country = kCountries[rng.below(std::size(kCountries))];
        for (int b = 0; b < blocks; ++b) {
            std::uint32_t block;
            do {
                block = slice_block(slice, static_cast<std::uint32_t>(rng.below(kBlocksPerSlice)));
            } while (!taken.insert(block).second);
            p.as_layout.push_back({Cidr{block_base(block), 32 - static_cast<int>(kBlockBits)},
                                   asn, country});
        }
    }
    return p;
}

SyntheticStream generate_stream(const ScenarioParams& params) {
    params.validate();
    Rng rng(params.seed);

    std::unordered_set<Ipv4> used;
    auto fresh_ip = [&]() {
        for (int attempt = 0; attempt < 4096; ++attempt) {
            const auto& block = params.as_layout[rng.below(params.as_layout.size())];
            const std::uint32_t span = block.cidr.last() - block.cidr.first();
            Ipv4 ip(block.cidr.first() + static_cast<std::uint32_t>(rng.below(span + 1)));
            if (used.insert(ip).second) return ip;
        }
        throw std::invalid_argument("AS layout too small for the requested IP volume");
    };

    std::vector<Ipv4> pool;
    pool.reserve(static_cast<std::size_t>(params.n_ips_pool));
    for (int i = 0; i < params.n_ips_pool; ++i) pool.push_back(fresh_ip());

    SyntheticStream stream;
    stream.enrichment = params.as_layout;

    const std::int64_t total_queries =
        static_cast<std::int64_t>(params.duration_hours * params.query_rate_per_hour);
    const int answer_span = params.answers_max - params.answers_min + 1;
    std::size_t rotation = 0;
    std::int64_t churned_through_hour = 0;

    for (std::int64_t q = 0; q < total_queries; ++q) {
        const std::int64_t offset = static_cast<std::int64_t>(
            static_cast<double>(q) * 3600.0 / params.query_rate_per_hour);
        const std::int64_t ts = params.start_ts + offset;

        // Hourly churn: replace a deterministic fraction of the pool with
        // addresses never handed out before.
        const std::int64_t hour = offset / 3600;
        while (churned_through_hour < hour) {
            ++churned_through_hour;
            const auto replace = static_cast<std::size_t>(
                std::lround(params.churn_rate * static_cast<double>(pool.size())));
            if (replace == 0) continue;
            std::vector<std::size_t> indices(pool.size());
            for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
            for (std::size_t i = 0; i < replace; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng.below(indices.size() - i));
                std::swap(indices[i], indices[j]);
                pool[indices[i]] = fresh_ip();
            }
        }

        // Answer length cycles through its range so every chunk of queries
        // reaches the maximum; the pool is served round-robin.
        std::size_t k = static_cast<std::size_t>(params.answers_min) +
                        static_cast<std::size_t>(q % answer_span);
        k = std::min(k, pool.size());

        DnsAnswerRecord record;
        record.timestamp = ts;
        record.qname = params.domain;
        record.ttl = static_cast<std::uint32_t>(rng.between(params.ttl_min, params.ttl_max));
        record.ips.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            record.ips.push_back(pool[(rotation + i) % pool.size()]);
        }
        rotation = (rotation + k) % pool.size();
        stream.records.push_back(std::move(record));
    }
    return stream;
}

void write_stream_jsonl(std::span<const DnsAnswerRecord> records, std::ostream& out) {
    for (const auto& record : records) out << to_log_line(record) << '\n';
}

void write_enrichment_csv(std::span<const AsBlock> blocks, std::ostream& out) {
    out << "cidr,asn,country\n";
    for (const auto& block : blocks) {
        out << block.cidr.to_string() << ',' << block.asn << ',' << block.country << '\n';
    }
}

}  // namespace ffd
