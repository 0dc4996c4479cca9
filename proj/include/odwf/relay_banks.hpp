#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace odwf::protocol {

using Seq = std::uint64_t;
using RelayId = std::uint32_t;

class BufferGuardError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Every packet the source has injected, indexed by global sequence number.
/// Delivered records are dropped from the front once everything older is
/// delivered too.
class PacketLedger {
  public:
    struct Record {
        std::uint64_t created_frame = 0;
        int subcarrier = 0;
        bool delivered = false;
        std::vector<RelayId> holders;
    };

    Seq create(std::uint64_t frame, int subcarrier);
    void add_holder(Seq seq, RelayId relay) { at(seq).holders.push_back(relay); }

    /// Marks `seq` delivered and returns the relays that held it.
    std::vector<RelayId> mark_delivered(Seq seq);

    bool delivered(Seq seq) const { return seq < base_ || at(seq).delivered; }
    const Record& record(Seq seq) const { return at(seq); }

    Seq next_seq() const { return base_ + records_.size(); }
    std::size_t in_network() const { return in_network_; }

    template <class F>
    void for_each_undelivered(F&& f) const {
        for (std::size_t i = 0; i < records_.size(); ++i) {
            if (!records_[i].delivered) {
                f(base_ + i, records_[i]);
            }
        }
    }

  private:
    Record& at(Seq seq);
    const Record& at(Seq seq) const;

    std::deque<Record> records_;
    Seq base_ = 0;
    std::size_t in_network_ = 0;
};

/// FIFO buffers of K relays, each split into `banks` banks. Purged packets
/// are removed lazily: `live` counts are updated eagerly, queue entries
/// are dropped when they surface at the head or during compaction.
class RelayBanks {
  public:
    RelayBanks(std::size_t relays, int banks);

    void push(RelayId relay, int bank, Seq seq, const PacketLedger& ledger);

    /// Oldest undelivered packet in the bank.
    std::optional<Seq> head(RelayId relay, int bank, const PacketLedger& ledger);

    /// Called once per holder when a packet of `bank` is delivered.
    void on_purged(RelayId relay, int bank);

    std::size_t live(RelayId relay, int bank) const { return queue(relay, bank).live; }
    std::size_t nonempty_relays(int bank) const { return nonempty_[bank]; }
    std::size_t relay_count() const { return relays_; }
    int banks() const { return banks_; }

    /// Undelivered packets of one bank, front to back.
    std::vector<Seq> contents(RelayId relay, int bank, const PacketLedger& ledger) const;

  private:
    struct Queue {
        std::vector<Seq> items;
        std::uint32_t head = 0;
        std::uint32_t live = 0;
    };

    Queue& queue(RelayId relay, int bank) { return queues_[relay * banks_ + bank]; }
    const Queue& queue(RelayId relay, int bank) const { return queues_[relay * banks_ + bank]; }
    static void compact(Queue& q, const PacketLedger& ledger);

    std::size_t relays_;
    int banks_;
    std::vector<Queue> queues_;
    std::vector<std::size_t> nonempty_;
};

}  // namespace odwf::protocol
