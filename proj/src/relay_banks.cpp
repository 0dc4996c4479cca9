#include "odwf/relay_banks.hpp"

#include <algorithm>

namespace odwf::protocol {

Seq PacketLedger::create(std::uint64_t frame, int subcarrier) {
    records_.push_back(Record{frame, subcarrier, false, {}});
    ++in_network_;
    return base_ + records_.size() - 1;
}

PacketLedger::Record& PacketLedger::at(Seq seq) {
    if (seq < base_ || seq - base_ >= records_.size()) {
        throw std::out_of_range("packet sequence number not in ledger");
    }
    return records_[seq - base_];
}

const PacketLedger::Record& PacketLedger::at(Seq seq) const {
    if (seq < base_ || seq - base_ >= records_.size()) {
        throw std::out_of_range("packet sequence number not in ledger");
    }
    return records_[seq - base_];
}

std::vector<RelayId> PacketLedger::mark_delivered(Seq seq) {
    auto& rec = at(seq);
    if (rec.delivered) {
        throw std::logic_error("packet delivered twice");
    }
    rec.delivered = true;
    --in_network_;
    std::vector<RelayId> holders;
    holders.swap(rec.holders);
    while (!records_.empty() && records_.front().delivered) {
        records_.pop_front();
        ++base_;
    }
    return holders;
}

RelayBanks::RelayBanks(std::size_t relays, int banks)
    : relays_(relays),
      banks_(banks),
      queues_(relays * static_cast<std::size_t>(banks)),
      nonempty_(static_cast<std::size_t>(banks), 0) {}

void RelayBanks::push(RelayId relay, int bank, Seq seq, const PacketLedger& ledger) {
    auto& q = queue(relay, bank);
    if (q.live == 0) {
        ++nonempty_[bank];
    }
    ++q.live;
    q.items.push_back(seq);
    if (q.items.size() - q.head > 2 * static_cast<std::size_t>(q.live) + 32) {
        compact(q, ledger);
    }
}

std::optional<Seq> RelayBanks::head(RelayId relay, int bank, const PacketLedger& ledger) {
    auto& q = queue(relay, bank);
    if (q.live == 0) {
        q.items.clear();
        q.head = 0;
        return std::nullopt;
    }
    while (ledger.delivered(q.items[q.head])) {
        ++q.head;
    }
    if (q.head > 64 && 2 * q.head > q.items.size()) {
        q.items.erase(q.items.begin(), q.items.begin() + q.head);
        q.head = 0;
    }
    return q.items[q.head];
}

void RelayBanks::on_purged(RelayId relay, int bank) {
    auto& q = queue(relay, bank);
    if (q.live == 0) {
        throw std::logic_error("purge from an empty bank");
    }
    if (--q.live == 0) {
        --nonempty_[bank];
    }
}

std::vector<Seq> RelayBanks::contents(RelayId relay, int bank, const PacketLedger& ledger) const {
    const auto& q = queue(relay, bank);
    std::vector<Seq> out;
    for (std::size_t i = q.head; i < q.items.size(); ++i) {
        if (!ledger.delivered(q.items[i])) {
            out.push_back(q.items[i]);
        }
    }
    return out;
}

void RelayBanks::compact(Queue& q, const PacketLedger& ledger) {
    std::vector<Seq> kept;
    kept.reserve(q.live);
    for (std::size_t i = q.head; i < q.items.size(); ++i) {
        if (!ledger.delivered(q.items[i])) {
            kept.push_back(q.items[i]);
        }
    }
    q.items.swap(kept);
    q.head = 0;
}

}  // namespace odwf::protocol
