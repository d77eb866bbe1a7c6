#ifndef FFD_HISTORY_HPP
#define FFD_HISTORY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffd/dns_record.hpp"
#include "ffd/enrichment.hpp"

namespace ffd {

// Chunking and retention knobs. A chunk closes at the first record whose
// inclusion gives it at least min_queries records spanning at least
// min_span_s seconds; both bounds must hold simultaneously.
struct HistoryParams {
    std::size_t chunk_min_queries = 10;
    std::int64_t chunk_min_span_s = 3600;
    int window_days = 30;
    std::int64_t reorder_tolerance_s = 300;

    std::int64_t window_seconds() const { return std::int64_t(window_days) * 86400; }
};

// A consecutive group of one domain's responses, the unit over which the
// per-chunk averages are taken.
struct Chunk {
    std::vector<DnsAnswerRecord> records;  // sorted by timestamp

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
    std::int64_t start_ts() const { return records.front().timestamp; }
    std::int64_t end_ts() const { return records.back().timestamp; }
    std::int64_t span() const { return end_ts() - start_ts(); }

    bool operator==(const Chunk&) const = default;
};

// Per-chunk unique-count averages over the closed chunks (Eq. 4 denominators).
struct ChunkAverages {
    double n_ip_c = 0;   // mean unique IPs per chunk
    double n_net_c = 0;  // mean unique public networks per chunk (db hits only)
    double n_as_c = 0;   // mean unique ASs per chunk (db hits only)
    double m_al_c = 0;   // mean of per-chunk maximum answer length
    std::size_t chunk_count = 0;
};

// Rolling per-domain observation store: closed chunks plus the open tail,
// everything within the trailing retention window of the newest record.
class DomainHistory {
public:
    DomainHistory() = default;
    explicit DomainHistory(std::string qname) : qname_(std::move(qname)) {}

    const std::string& qname() const { return qname_; }
    const std::vector<Chunk>& closed_chunks() const { return closed_chunks_; }
    const Chunk& open_chunk() const { return open_chunk_; }
    bool empty() const { return closed_chunks_.empty() && open_chunk_.empty(); }
    std::uint64_t dropped_out_of_order() const { return dropped_out_of_order_; }

    std::int64_t newest_ts() const;

    // Appends one record. Records older than the reorder tolerance (or older
    // than the last closed chunk) are dropped and counted. Throws
    // std::invalid_argument when the record belongs to a different domain.
    void update(const DnsAnswerRecord& record, const HistoryParams& params = {});

    // Visits every stored record, closed chunks first, then the open tail.
    template <typename Fn>
    void for_each_record(Fn&& fn) const {
        for (const auto& chunk : closed_chunks_) {
            for (const auto& r : chunk.records) fn(r);
        }
        for (const auto& r : open_chunk_.records) fn(r);
    }

    bool operator==(const DomainHistory&) const = default;

    // Used by the persistence layer to rebuild state verbatim.
    static DomainHistory assemble(std::string qname, std::vector<Chunk> closed, Chunk open,
                                  std::uint64_t dropped);

private:
    std::string qname_;
    std::vector<Chunk> closed_chunks_;
    Chunk open_chunk_;
    std::uint64_t dropped_out_of_order_ = 0;
};

// Per-chunk averages over closed chunks. Unavailable (nullopt) until at
// least two chunks have closed; history metrics are meaningless before that.
std::optional<ChunkAverages> chunk_averages(const DomainHistory& history, const IpDatabase& db);

}  // namespace ffd

#endif  // FFD_HISTORY_HPP
