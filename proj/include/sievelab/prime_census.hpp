#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "sievelab/constellation.hpp"
#include "sievelab/numeric.hpp"

namespace sievelab {

/// Empirical count of a gap pattern among actual consecutive primes.  This
/// reports survival through the full sieve; it proves nothing about it.
struct PrimeWindowCount {
    Constellation constellation;
    uint64_t limit = 0;
    Int occurrences;
    std::optional<uint64_t> first_occurrence;
};

constexpr uint64_t kDefaultPrimeCeiling = 1'000'000'000;

/// Calls fn for every prime <= limit in ascending order.  Segmented
/// odd-only sieve; segments can be sieved by several workers but the
/// callback order is always ascending.
void for_each_prime(uint64_t limit, unsigned threads,
                    const std::function<void(uint64_t)>& fn);

/// Counts starting primes p such that the next length(s) prime gaps are
/// exactly s (so p + span <= limit).  Unlike cycle censuses this has no
/// reversal symmetry; count both orientations when that matters.
PrimeWindowCount count_among_primes(const Constellation& s, uint64_t limit,
                                    unsigned threads = 1,
                                    uint64_t ceiling = kDefaultPrimeCeiling);

}  // namespace sievelab
