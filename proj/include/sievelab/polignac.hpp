#pragma once

#include <cstdint>

#include "sievelab/numeric.hpp"

namespace sievelab {

/// The constellation g,g,...,g of `length` copies: `length`+1 consecutive
/// candidate primes in arithmetic progression with common difference g.
struct RepetitionSpec {
    uint64_t gap;     // positive even
    uint64_t length;  // j1 >= 1
};

/// Largest repetition length that can survive: next_prime(p) - 2 where p is
/// the largest prime whose primorial divides the gap.
uint64_t max_feasible_length(uint64_t gap);

/// A repetition is feasible iff its length is strictly below
/// next_prime(p) - 1 for that same p.  Infeasible repetitions are wiped out
/// by residues modulo the first prime not dividing the gap.
bool is_feasible(const RepetitionSpec& spec);

/// Closed-form asymptotic weight phi_1(Q) / phi_{length+1}(Q) over the
/// kernel Q of the gap.  Depends only on the gap's distinct prime factors
/// and the length.  Throws infeasible_repetition_error when infeasible (the
/// closed form proves nothing there).
Ratio repetition_weight(const RepetitionSpec& spec);

/// Asymptotic weight of a single gap: product of (q-1)/(q-2) over the odd
/// primes dividing it.  Coincides with repetition_weight at length 1.
Ratio gap_weight(uint64_t gap);

}  // namespace sievelab
