#pragma once

#include <cstdint>
#include <vector>

#include "sievelab/constellation.hpp"
#include "sievelab/numeric.hpp"

namespace sievelab {

/// Small dense square matrix of exact integers, row-major.
class IntMatrix {
public:
    explicit IntMatrix(size_t n) : n_(n), a_(n * n) {}

    static IntMatrix identity(size_t n);

    size_t dim() const { return n_; }
    Int& at(size_t i, size_t j) { return a_[i * n_ + j]; }
    const Int& at(size_t i, size_t j) const { return a_[i * n_ + j]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    std::vector<Int> operator*(const std::vector<Int>& v) const;

    bool operator==(const IntMatrix& other) const = default;

private:
    size_t n_;
    std::vector<Int> a_;
};

/// One-stage population map for driving terms of lengths j1..J, upper
/// bidiagonal: diagonal p-j1-1, p-j1-2, ..., p-J-1 (survivors), superdiagonal
/// 1, 2, ..., J-j1 (interior closures shortening a term by one).
struct TransitionMatrix {
    uint64_t stage_prime;
    size_t j_min;
    size_t j_max;
    IntMatrix entries;
};

TransitionMatrix transition_matrix(uint64_t p, size_t j1, size_t J);

/// Upper-triangular binomial matrix L (first row all ones) and its signed
/// inverse R; the stage-independent eigenvector pair of every transition
/// matrix.  L.at(i,j) = C(j,i), R.at(i,j) = (-1)^(i+j) C(j,i) for i <= j.
struct PascalPair {
    IntMatrix L;
    IntMatrix R;
};

PascalPair pascal_pair(size_t n);

/// Eigenvalues p-j-1 for j = j_min..j_max, strictly decreasing by 1.
struct EigenvalueLadder {
    uint64_t stage_prime;
    size_t j_min;
    size_t j_max;
    std::vector<Int> values;

    IntMatrix diagonal() const;
};

EigenvalueLadder eigenvalue_ladder(uint64_t p, size_t j1, size_t J);

/// Advances a census to a later stage by the exact one-stage map at each
/// intermediate prime.  Requires span < 2 * next stage prime at every step
/// (throws stage_condition_error naming the first offending stage: from an
/// under-qualified seed the model is not exact, so we refuse).
Census propagate(const Census& seed, uint64_t to_prime);

/// Same advance through the eigendecomposition: R * diag(eigenvalue
/// products) * L applied to the seed.  Must agree with propagate() exactly;
/// kept as the independent algebraic route.
std::vector<Int> propagate_diagonalized(const Census& seed, uint64_t to_prime);

/// Census divided by phi_{j1+1}(p#): rescales the dominant growth factor to
/// 1 so stages become comparable.
struct NormalizedCensus {
    uint64_t stage_prime;
    size_t j_min;
    std::vector<Ratio> weights;
};

NormalizedCensus normalize(const Census& census);

/// Limiting relative population of the constellation among patterns of the
/// same length: total census over phi_{j1+1}(p#), an exact rational that is
/// stage-independent once stage_prime >= p0_asymptotic.  Throws
/// seed_stage_error (naming the required stage) below that.
Ratio asymptotic_weight(const Census& census);

}  // namespace sievelab
