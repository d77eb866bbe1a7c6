#include "ffd/history.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace ffd {

std::int64_t DomainHistory::newest_ts() const {
    if (!open_chunk_.empty()) return open_chunk_.end_ts();
    if (!closed_chunks_.empty()) return closed_chunks_.back().end_ts();
    return std::numeric_limits<std::int64_t>::min();
}

void DomainHistory::update(const DnsAnswerRecord& record, const HistoryParams& params) {
    if (record.qname != qname_) {
        throw std::invalid_argument("history for " + qname_ + " fed a record for " + record.qname);
    }

    const std::int64_t newest = newest_ts();
    if (newest != std::numeric_limits<std::int64_t>::min() &&
        record.timestamp < newest - params.reorder_tolerance_s) {
        ++dropped_out_of_order_;
        return;
    }
    // Reordered records can only be folded into the open chunk; anything
    // older than the last closed chunk would break chunk ordering.
    if (!closed_chunks_.empty() && record.timestamp < closed_chunks_.back().end_ts()) {
        ++dropped_out_of_order_;
        return;
    }

    auto& records = open_chunk_.records;
    if (records.empty() || record.timestamp >= records.back().timestamp) {
        records.push_back(record);
    } else {
        auto it = std::upper_bound(records.begin(), records.end(), record.timestamp,
                                   [](std::int64_t ts, const DnsAnswerRecord& r) { return ts < r.timestamp; });
        records.insert(it, record);
    }

    if (records.size() >= params.chunk_min_queries && open_chunk_.span() >= params.chunk_min_span_s) {
        closed_chunks_.push_back(std::move(open_chunk_));
        open_chunk_ = Chunk{};
    }

    // Retention: drop closed chunks that fell entirely out of the window.
    // Chunks are never split, so a straddling chunk stays whole.
    const std::int64_t cutoff = newest_ts() - params.window_seconds();
    std::size_t evict = 0;
    while (evict < closed_chunks_.size() && closed_chunks_[evict].end_ts() < cutoff) ++evict;
    if (evict > 0) {
        closed_chunks_.erase(closed_chunks_.begin(), closed_chunks_.begin() + static_cast<std::ptrdiff_t>(evict));
    }
}

DomainHistory DomainHistory::assemble(std::string qname, std::vector<Chunk> closed, Chunk open,
                                      std::uint64_t dropped) {
    DomainHistory h(std::move(qname));
    h.closed_chunks_ = std::move(closed);
    h.open_chunk_ = std::move(open);
    h.dropped_out_of_order_ = dropped;
    return h;
}

std::optional<ChunkAverages> chunk_averages(const DomainHistory& history, const IpDatabase& db) {
    const auto& chunks = history.closed_chunks();
    if (chunks.size() < 2) return std::nullopt;

    ChunkAverages avg;
    avg.chunk_count = chunks.size();
    for (const auto& chunk : chunks) {
        std::unordered_set<Ipv4> ips;
        std::unordered_set<std::uint32_t> nets;  // keyed by range base
        std::unordered_set<std::uint32_t> ases;
        std::size_t max_al = 0;
        for (const auto& record : chunk.records) {
            max_al = std::max(max_al, record.answer_length());
            for (Ipv4 ip : record.ips) {
                if (!ips.insert(ip).second) continue;
                if (auto meta = db.lookup(ip)) {
                    nets.insert(meta->network.base);
                    if (meta->asn) ases.insert(*meta->asn);
                }
            }
        }
        avg.n_ip_c += static_cast<double>(ips.size());
        avg.n_net_c += static_cast<double>(nets.size());
        avg.n_as_c += static_cast<double>(ases.size());
        avg.m_al_c += static_cast<double>(max_al);
    }
    const double n = static_cast<double>(chunks.size());
    avg.n_ip_c /= n;
    avg.n_net_c /= n;
    avg.n_as_c /= n;
    avg.m_al_c /= n;
    return avg;
}

}  // namespace ffd
