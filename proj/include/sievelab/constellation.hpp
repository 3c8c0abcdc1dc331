#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sievelab/gap_cycle.hpp"
#include "sievelab/numeric.hpp"

namespace sievelab {

/// A finite sequence of gaps (the pattern searched for).  Gaps must be
/// positive; odd gaps are accepted but can never occur among generators for
/// p >= 3, so censuses of such patterns are all zero.
class Constellation {
public:
    explicit Constellation(std::vector<uint32_t> gaps);

    /// Parses "2,10,2".  Throws precondition_error on malformed input.
    static Constellation parse(std::string_view text);

    size_t length() const { return gaps_.size(); }  // j1
    uint64_t span() const { return span_; }         // |s|
    const std::vector<uint32_t>& gaps() const { return gaps_; }
    bool all_even() const;
    bool is_palindrome() const;
    Constellation reversed() const;

    std::string str() const;

    bool operator==(const Constellation& other) const = default;

private:
    std::vector<uint32_t> gaps_;
    uint64_t span_ = 0;
};

/// Counts of driving terms by length j = j_min..j_max in one cycle.  A
/// driving term of length j for s is a run of j consecutive gaps whose
/// partial sums hit every prefix sum of s exactly; under later stages its
/// interior closures can shorten it into s itself.  The range is trimmed so
/// that counts.back() > 0 unless the census is identically zero (then the
/// single entry is counts[j_min] == 0).
struct Census {
    Constellation constellation;
    uint64_t stage_prime = 0;
    size_t j_min = 0;
    std::vector<Int> counts;

    size_t j_max() const { return j_min + counts.size() - 1; }
    Int total() const;
    /// Count at driving-term length j (0 outside the stored range).
    Int at(size_t j) const;
};

/// Scans one full period of start positions.  Every gap position starts at
/// most one driving term (gap positivity makes the block partition unique);
/// the walk may wrap the cycle any number of times when span > p#.
/// `threads` > 1 splits the start positions into contiguous ranges; the merge
/// is a plain vector sum, so results are identical for any worker count.
Census scan_census(const GapCycle& cycle, const Constellation& s,
                   unsigned threads = 1);

/// Same census from a single pass over a stream, using a window of span/2
/// gaps (no driving term is longer: every gap is >= 2).
Census scan_census(CycleStream& stream, const Constellation& s);

/// Largest driving-term length present in a seed census.  Later stages never
/// exceed it: closures only shorten driving terms.
size_t max_driving_length(const Census& census);

/// Smallest prime p0 with span < 2 * next_prime(p0): from this seed on, the
/// full step-by-step model is exact.
uint64_t p0_full_model(const Constellation& s);

/// Largest prime dividing any contiguous interval sum g_i + ... + g_j
/// (floored at 2): from this seed on, the asymptotic total is exact.
uint64_t p0_asymptotic(const Constellation& s);

}  // namespace sievelab
