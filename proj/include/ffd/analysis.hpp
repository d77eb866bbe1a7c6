#ifndef FFD_ANALYSIS_HPP
#define FFD_ANALYSIS_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ffd/enrichment.hpp"
#include "ffd/ipv4.hpp"

namespace ffd {

// The IP pool collected for one domain; ips kept sorted and deduplicated.
struct DomainIpPool {
    std::string domain;
    std::vector<Ipv4> ips;
};

// Reads "domain,ip" CSV rows (optional header) into pools sorted by domain
// name. Throws FormatError on malformed rows.
std::vector<DomainIpPool> load_pools(std::istream& in, const std::string& source = "<stream>");

// Jaccard overlap |Xi ∩ Xj| / |Xi ∪ Xj| of two non-empty pools.
double overlap(const DomainIpPool& a, const DomainIpPool& b);

// Pairwise overlaps, symmetric with unit diagonal, rows/cols in the order
// of `domains`.
struct OverlapMatrix {
    std::vector<std::string> domains;
    std::vector<double> values;  // row-major, domains.size()^2

    double at(std::size_t i, std::size_t j) const { return values[i * domains.size() + j]; }
};

// When top_n > 0 only the top_n pools by IP count are included (name order
// breaks ties, largest pools first).
OverlapMatrix build_overlap_matrix(const std::vector<DomainIpPool>& pools, std::size_t top_n = 0);

void write_overlap_csv(const OverlapMatrix& matrix, std::ostream& out);

// Connected components of the bipartite domain-IP graph: two domains share
// a cluster iff a chain of shared IPs connects them. Clusters and their
// members are sorted by name, clusters ordered by smallest member.
std::vector<std::vector<std::string>> cluster_domains(const std::vector<DomainIpPool>& pools);

void write_clusters_jsonl(const std::vector<std::vector<std::string>>& clusters, std::ostream& out);

// Unique-IP counts per ISO country over the union of all pools; misses and
// rangeless countries land in the "??" bucket.
std::map<std::string, std::uint64_t> country_histogram(const std::vector<DomainIpPool>& pools,
                                                       const IpDatabase& db);

// Frequencies of the first octet over the union of the given pools, binned
// into width `bin_size` buckets (default 2, i.e. 128 bins).
std::vector<std::uint64_t> first_byte_histogram(const std::vector<DomainIpPool>& pools,
                                                unsigned bin_size = 2);

void write_histogram_csv(const std::map<std::string, std::uint64_t>& counts, std::ostream& out);
void write_first_byte_csv(const std::vector<std::uint64_t>& bins, unsigned bin_size,
                          std::ostream& out);

}  // namespace ffd

#endif  // FFD_ANALYSIS_HPP
