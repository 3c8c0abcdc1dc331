#include "sievelab/dynamics.hpp"

#include <sstream>

namespace sievelab {

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (n_ != rhs.n_) throw precondition_error("matrix dimensions must match");
    IntMatrix out(n_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t k = 0; k < n_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (size_t j = 0; j < n_; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

std::vector<Int> IntMatrix::operator*(const std::vector<Int>& v) const {
    if (v.size() != n_) throw precondition_error("matrix/vector dimensions must match");
    std::vector<Int> out(n_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

TransitionMatrix transition_matrix(uint64_t p, size_t j1, size_t J) {
    if (!is_prime(p)) throw precondition_error("transition stage must be prime");
    if (j1 < 1 || J < j1) throw precondition_error("need J >= j1 >= 1");
    const size_t n = J - j1 + 1;
    IntMatrix m(n);
    for (size_t r = 0; r < n; ++r) {
        const size_t j = j1 + r;
        m.at(r, r) = Int(p) - Int(j + 1);  // survivors of length j
        if (r + 1 < n) m.at(r, r + 1) = Int(r + 1);  // interior closures of length j+1
    }
    return TransitionMatrix{p, j1, J, std::move(m)};
}

PascalPair pascal_pair(size_t n) {
    if (n < 1) throw precondition_error("pascal_pair needs dimension >= 1");
    IntMatrix L(n), R(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), j, i);
            L.at(i, j) = binom;
            R.at(i, j) = ((i + j) % 2 == 0) ? binom : -binom;
        }
    return PascalPair{std::move(L), std::move(R)};
}

IntMatrix EigenvalueLadder::diagonal() const {
    IntMatrix d(values.size());
    for (size_t i = 0; i < values.size(); ++i) d.at(i, i) = values[i];
    return d;
}

EigenvalueLadder eigenvalue_ladder(uint64_t p, size_t j1, size_t J) {
    if (j1 < 1 || J < j1) throw precondition_error("need J >= j1 >= 1");
    std::vector<Int> values;
    values.reserve(J - j1 + 1);
    for (size_t j = j1; j <= J; ++j) values.push_back(Int(p) - Int(j + 1));
    return EigenvalueLadder{p, j1, J, std::move(values)};
}

namespace {

std::vector<uint64_t> stage_chain(const Census& seed, uint64_t to_prime) {
    if (!is_prime(to_prime)) throw precondition_error("target stage must be prime");
    if (to_prime <= seed.stage_prime)
        throw precondition_error("target stage must exceed the seed stage");
    std::vector<uint64_t> stages;
    const uint64_t span = seed.constellation.span();
    for (uint64_t q = seed.stage_prime; q < to_prime;) {
        q = next_prime(q);
        if (span >= 2 * q) {
            std::ostringstream msg;
            msg << "span " << span << " is not < 2*" << q << " at stage " << q
                << "; the step-by-step model is not exact from this seed";
            throw stage_condition_error(msg.str(), q, span);
        }
        stages.push_back(q);
    }
    return stages;
}

}  // namespace

Census propagate(const Census& seed, uint64_t to_prime) {
    std::vector<Int> counts = seed.counts;
    const size_t j1 = seed.j_min;
    const size_t J = seed.j_max();
    for (uint64_t q : stage_chain(seed, to_prime))
        counts = transition_matrix(q, j1, J).entries * counts;
    // Trim: interior closures can drain the top lengths to zero.
    size_t last = 0;
    for (size_t i = 0; i < counts.size(); ++i)
        if (counts[i] != 0) last = i;
    counts.resize(last + 1);
    return Census{seed.constellation, to_prime, j1, std::move(counts)};
}

std::vector<Int> propagate_diagonalized(const Census& seed, uint64_t to_prime) {
    const size_t j1 = seed.j_min;
    const size_t n = seed.counts.size();
    std::vector<Int> lambda(n, 1);
    for (uint64_t q : stage_chain(seed, to_prime))
        for (size_t r = 0; r < n; ++r) lambda[r] *= Int(q) - Int(j1 + r + 1);

    PascalPair pair = pascal_pair(n);
    std::vector<Int> v = pair.L * seed.counts;
    for (size_t r = 0; r < n; ++r) v[r] *= lambda[r];
    return pair.R * v;
}

NormalizedCensus normalize(const Census& census) {
    const Int denom = phi_i_primorial(census.stage_prime, census.j_min + 1);
    std::vector<Ratio> weights;
    weights.reserve(census.counts.size());
    for (const Int& c : census.counts) weights.push_back(make_ratio(c, denom));
    return NormalizedCensus{census.stage_prime, census.j_min, std::move(weights)};
}

Ratio asymptotic_weight(const Census& census) {
    const uint64_t required = p0_asymptotic(census.constellation);
    if (census.stage_prime < required) {
        std::ostringstream msg;
        msg << "asymptotic weight of " << census.constellation.str()
            << " needs a census at stage >= " << required << " (got "
            << census.stage_prime << ")";
        throw seed_stage_error(msg.str(), required, census.stage_prime);
    }
    return make_ratio(census.total(),
                      phi_i_primorial(census.stage_prime, census.j_min + 1));
}

}  // namespace sievelab
