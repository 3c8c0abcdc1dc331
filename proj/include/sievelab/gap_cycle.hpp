#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "sievelab/numeric.hpp"

namespace sievelab {

/// The cycle of gaps among the generators of Z mod p# (the candidates that
/// survive sieving by all primes <= p).  Canonical anchoring: the first gap
/// steps from generator 1 to the next generator; the last gap wraps from the
/// largest generator back to p# + 1.  For p >= 3 the wrap gap is 2 and the
/// rest of the sequence is a palindrome.
class GapCycle {
public:
    GapCycle(uint64_t stage_prime, std::vector<uint16_t> gaps);

    uint64_t stage_prime() const { return stage_prime_; }
    const std::vector<uint16_t>& gaps() const { return gaps_; }
    size_t size() const { return gaps_.size(); }

    uint64_t sum() const;
    uint16_t max_gap() const;

    bool operator==(const GapCycle& other) const = default;

private:
    uint64_t stage_prime_;
    std::vector<uint16_t> gaps_;
};

struct CycleSizeEstimate {
    Int gap_count;  // prod of (q - 1) over primes q <= p
    Int bytes;      // 2 bytes per gap
};

/// Exact size of G(p#) without building it.  Requires p prime.
CycleSizeEstimate cycle_size_estimate(uint64_t p);

/// "3.06561E10"-style rendering of an exact count, 6 significant digits.
std::string scientific_str(const Int& n);

constexpr uint64_t kDefaultMemoryBudget = 64ull << 20;  // bytes
constexpr uint64_t kDefaultStreamCeiling = 29;

/// Builds G(p#) by the copy-and-fuse recursion from G(2#) = (2).
/// Throws budget_exceeded_error when 2 bytes/gap would exceed the budget.
GapCycle build_cycle_recursive(uint64_t p,
                               uint64_t memory_budget_bytes = kDefaultMemoryBudget);

/// Oracle construction: enumerate residues coprime to p# and difference them.
/// Restricted to p <= 13 (quadratic-ish cost; this is the cross-check, not
/// the workhorse).
GapCycle build_cycle_direct(uint64_t p);

/// One lazy pass over G(p#) in canonical order.  Late stages are produced by
/// running the recursion on demand: each stage replays its predecessor
/// next-prime times and fuses the gaps around multiples of the new prime.
/// Never materializes more than the small base stage.
class CycleStream {
public:
    CycleStream(CycleStream&&) noexcept;
    CycleStream& operator=(CycleStream&&) noexcept;
    ~CycleStream();

    uint64_t stage_prime() const;
    /// Exact number of gaps one full pass yields.
    Int gap_count() const;

    /// Next gap in cycle order; false once one full cycle has been emitted.
    bool next(uint32_t& gap);
    /// Restarts the pass from the canonical anchor.
    void reset();

private:
    friend CycleStream stream_cycle(uint64_t, uint64_t, uint64_t);
    struct Impl;
    explicit CycleStream(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
};

/// Throws resource_limit_error (with the size estimate) for p above the
/// ceiling; the chain below the ceiling costs O(1) memory per stage beyond
/// the materialized base.
CycleStream stream_cycle(uint64_t p,
                         uint64_t stream_ceiling = kDefaultStreamCeiling,
                         uint64_t base_budget_bytes = 4ull << 20);

// Binary cycle file: magic "PGAP", version byte 0x01, stage prime (8-byte
// little-endian), gap count (8-byte little-endian), then each gap as a
// 16-bit little-endian unsigned integer in canonical order.
void write_cycle_binary(const GapCycle& cycle, std::ostream& out);
void write_cycle_binary(CycleStream& stream, std::ostream& out);
GapCycle read_cycle_binary(std::istream& in);

/// Comma-separated gaps, one cycle per line.
void write_cycle_text(const GapCycle& cycle, std::ostream& out);
void write_cycle_text(CycleStream& stream, std::ostream& out);

}  // namespace sievelab
