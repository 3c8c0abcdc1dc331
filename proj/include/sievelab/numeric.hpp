#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sievelab/errors.hpp"

namespace sievelab {

/// Arbitrary-precision signed integer.  Populations grow by factors of
/// (p - j1 - 1) per stage and leave 64 bits almost immediately.
using Int = mpz_class;

/// Exact rational, always kept in lowest terms with positive denominator.
using Ratio = mpq_class;

/// Builds a canonical rational from a (possibly unreduced) pair.
Ratio make_ratio(const Int& num, const Int& den);

/// "num/den" when den != 1, plain decimal otherwise.
std::string ratio_str(const Ratio& r);

/// Decimal rendering of r to `digits` significant digits, for human output.
std::string ratio_approx(const Ratio& r, int digits = 15);

std::vector<uint64_t> primes_up_to(uint64_t limit);
bool is_prime(uint64_t n);
uint64_t next_prime(uint64_t p);

/// Product of all primes <= p.  Requires p prime.
Int primorial(uint64_t p);

/// Ascending list of distinct primes; the domain of the generalized totients.
class SquarefreeKernel {
public:
    /// Distinct prime factors of n (ascending).  n >= 1; n == 1 gives the
    /// empty kernel.
    static SquarefreeKernel of(uint64_t n);

    /// Validates: strictly ascending, all prime.
    explicit SquarefreeKernel(std::vector<uint64_t> primes);

    const std::vector<uint64_t>& primes() const { return primes_; }
    bool empty() const { return primes_.empty(); }
    Int product() const;

    bool operator==(const SquarefreeKernel& other) const = default;

private:
    std::vector<uint64_t> primes_;
};

/// Generalized totient: product over primes q in the kernel with q > i of
/// (q - i).  Empty products are 1.  phi_i with i == 1 is the classical Euler
/// totient of the kernel's product.
Int phi_i(const SquarefreeKernel& kernel, uint64_t i);

/// phi_i over the kernel of p# (all primes <= p).  Requires p prime.
Int phi_i_primorial(uint64_t p, uint64_t i);

}  // namespace sievelab
