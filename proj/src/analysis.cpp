#include "ffd/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ffd/error.hpp"

namespace ffd {

std::vector<DomainIpPool> load_pools(std::istream& in, const std::string& source) {
    std::map<std::string, std::vector<Ipv4>> by_domain;
    std::string line;
    std::size_t row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            first = false;
            if (line == "domain,ip") continue;
        }
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos || comma == 0) {
            throw FormatError(source + " row " + std::to_string(row) + ": expected domain,ip");
        }
        auto ip = parse_ipv4(line.substr(comma + 1));
        if (!ip) {
            throw FormatError(source + " row " + std::to_string(row) + ": bad IPv4 \"" +
                              line.substr(comma + 1) + "\"");
        }
        by_domain[line.substr(0, comma)].push_back(*ip);
    }

    std::vector<DomainIpPool> pools;
    pools.reserve(by_domain.size());
    for (auto& [domain, ips] : by_domain) {
        std::sort(ips.begin(), ips.end());
        ips.erase(std::unique(ips.begin(), ips.end()), ips.end());
        pools.push_back({domain, std::move(ips)});
    }
    return pools;
}

double overlap(const DomainIpPool& a, const DomainIpPool& b) {
    if (a.ips.empty() || b.ips.empty()) {
        throw std::invalid_argument("overlap of an empty IP pool is undefined");
    }
    std::size_t shared = 0;
    auto it_a = a.ips.begin();
    auto it_b = b.ips.begin();
    while (it_a != a.ips.end() && it_b != b.ips.end()) {
        if (*it_a < *it_b) {
            ++it_a;
        } else if (*it_b < *it_a) {
            ++it_b;
        } else {
            ++shared;
            ++it_a;
            ++it_b;
        }
    }
    const std::size_t total = a.ips.size() + b.ips.size() - shared;
    return static_cast<double>(shared) / static_cast<double>(total);
}

OverlapMatrix build_overlap_matrix(const std::vector<DomainIpPool>& pools, std::size_t top_n) {
    std::vector<const DomainIpPool*> selected;
    selected.reserve(pools.size());
    for (const auto& pool : pools) selected.push_back(&pool);
    if (top_n > 0 && top_n < selected.size()) {
        std::stable_sort(selected.begin(), selected.end(), [](const auto* a, const auto* b) {
            if (a->ips.size() != b->ips.size()) return a->ips.size() > b->ips.size();
            return a->domain < b->domain;
        });
        selected.resize(top_n);
        std::sort(selected.begin(), selected.end(),
                  [](const auto* a, const auto* b) { return a->domain < b->domain; });
    }

    OverlapMatrix matrix;
    const std::size_t n = selected.size();
    matrix.domains.reserve(n);
    for (const auto* pool : selected) matrix.domains.push_back(pool->domain);
    matrix.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        matrix.values[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double o = overlap(*selected[i], *selected[j]);
            matrix.values[i * n + j] = o;
            matrix.values[j * n + i] = o;
        }
    }
    return matrix;
}

void write_overlap_csv(const OverlapMatrix& matrix, std::ostream& out) {
    out << "domain";
    for (const auto& d : matrix.domains) out << ',' << d;
    out << '\n';
    const std::size_t n = matrix.domains.size();
    for (std::size_t i = 0; i < n; ++i) {
        out << matrix.domains[i];
        for (std::size_t j = 0; j < n; ++j) {
            out << ',' << matrix.at(i, j);
        }
        out << '\n';
    }
}

std::vector<std::vector<std::string>> cluster_domains(const std::vector<DomainIpPool>& pools) {
    // Union-find over pool indices, linking through the first pool that
    // used each IP.
    std::vector<std::size_t> parent(pools.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    };

    std::unordered_map<Ipv4, std::size_t> first_owner;
    for (std::size_t i = 0; i < pools.size(); ++i) {
        for (Ipv4 ip : pools[i].ips) {
            auto [it, inserted] = first_owner.try_emplace(ip, i);
            if (!inserted) unite(it->second, i);
        }
    }

    std::map<std::size_t, std::vector<std::string>> grouped;
    for (std::size_t i = 0; i < pools.size(); ++i) grouped[find(i)].push_back(pools[i].domain);

    std::vector<std::vector<std::string>> clusters;
    clusters.reserve(grouped.size());
    for (auto& [root, members] : grouped) {
        std::sort(members.begin(), members.end());
        clusters.push_back(std::move(members));
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return clusters;
}

void write_clusters_jsonl(const std::vector<std::vector<std::string>>& clusters, std::ostream& out) {
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        nlohmann::ordered_json doc;
        doc["cluster"] = i;
        doc["size"] = clusters[i].size();
        doc["domains"] = clusters[i];
        out << doc.dump() << '\n';
    }
}

std::map<std::string, std::uint64_t> country_histogram(const std::vector<DomainIpPool>& pools,
                                                       const IpDatabase& db) {
    std::unordered_set<Ipv4> seen;
    std::map<std::string, std::uint64_t> counts;
    for (const auto& pool : pools) {
        for (Ipv4 ip : pool.ips) {
            if (!seen.insert(ip).second) continue;
            auto meta = db.lookup(ip);
            ++counts[(meta && meta->country) ? *meta->country : "??"];
        }
    }
    return counts;
}

std::vector<std::uint64_t> first_byte_histogram(const std::vector<DomainIpPool>& pools,
                                                unsigned bin_size) {
    if (bin_size == 0 || bin_size > 256) throw std::invalid_argument("bin size must be in [1,256]");
    std::vector<std::uint64_t> bins((256 + bin_size - 1) / bin_size, 0);
    std::unordered_set<Ipv4> seen;
    for (const auto& pool : pools) {
        for (Ipv4 ip : pool.ips) {
            if (!seen.insert(ip).second) continue;
            bins[ip.first_octet() / bin_size] += 1;
        }
    }
    return bins;
}

void write_histogram_csv(const std::map<std::string, std::uint64_t>& counts, std::ostream& out) {
    out << "key,count\n";
    for (const auto& [key, count] : counts) out << key << ',' << count << '\n';
}

void write_first_byte_csv(const std::vector<std::uint64_t>& bins, unsigned bin_size,
                          std::ostream& out) {
    out << "key,count\n";
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const unsigned lo = static_cast<unsigned>(i) * bin_size;
        const unsigned hi = std::min(lo + bin_size - 1, 255u);
        out << lo << '-' << hi << ',' << bins[i] << '\n';
    }
}

}  // namespace ffd
