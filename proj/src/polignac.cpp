#include "sievelab/polignac.hpp"

#include <sstream>

namespace sievelab {

namespace {

// Largest prime p with p# | gap.  Every even gap is divisible by 2# = 2.
uint64_t largest_primorial_divisor(uint64_t gap) {
    if (gap == 0 || gap % 2 != 0)
        throw precondition_error("repetition gaps must be positive and even");
    uint64_t p = 2;
    uint64_t prim = 2;
    while (true) {
        uint64_t q = next_prime(p);
        if (prim > gap / q) break;  // q * prim would overflow or exceed gap
        uint64_t next_prim = prim * q;
        if (gap % next_prim != 0) break;
        p = q;
        prim = next_prim;
    }
    return p;
}

}  // namespace

uint64_t max_feasible_length(uint64_t gap) {
    return next_prime(largest_primorial_divisor(gap)) - 2;
}

bool is_feasible(const RepetitionSpec& spec) {
    if (spec.length < 1) throw precondition_error("repetition length must be >= 1");
    return spec.length <= max_feasible_length(spec.gap);
}

Ratio repetition_weight(const RepetitionSpec& spec) {
    if (!is_feasible(spec)) {
        std::ostringstream msg;
        msg << "repetition of gap " << spec.gap << " with length " << spec.length
            << " is infeasible (max feasible length " << max_feasible_length(spec.gap)
            << "); residues modulo the first prime not dividing the gap wipe it out";
        throw infeasible_repetition_error(msg.str(), spec.gap, spec.length,
                                          max_feasible_length(spec.gap));
    }
    SquarefreeKernel kernel = SquarefreeKernel::of(spec.gap);
    return make_ratio(phi_i(kernel, 1), phi_i(kernel, spec.length + 1));
}

Ratio gap_weight(uint64_t gap) {
    if (gap == 0 || gap % 2 != 0)
        throw precondition_error("gap weights are defined for positive even gaps");
    Ratio w(1);
    const SquarefreeKernel kernel = SquarefreeKernel::of(gap);
    for (uint64_t q : kernel.primes())
        if (q > 2) w *= make_ratio(Int(q - 1), Int(q - 2));
    return w;
}

}  // namespace sievelab
