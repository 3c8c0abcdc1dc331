#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sievelab {

/// Caller violated a documented precondition.  CLI maps these to exit code 2.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured resource ceiling was hit.  CLI maps these to exit code 3.
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Materializing a cycle would exceed the memory budget.  Carries the exact
/// size estimate as decimal strings (the counts can exceed 64 bits).
class budget_exceeded_error : public resource_limit_error {
public:
    budget_exceeded_error(const std::string& msg, uint64_t prime,
                          std::string gaps, std::string bytes, uint64_t budget)
        : resource_limit_error(msg),
          stage_prime(prime),
          estimated_gaps(std::move(gaps)),
          estimated_bytes(std::move(bytes)),
          budget_bytes(budget) {}

    uint64_t stage_prime;
    std::string estimated_gaps;
    std::string estimated_bytes;
    uint64_t budget_bytes;
};

/// The exact step-by-step population model requires span < 2 * next stage
/// prime at every stage; propagation refuses rather than approximates.
class stage_condition_error : public precondition_error {
public:
    stage_condition_error(const std::string& msg, uint64_t stage, uint64_t span)
        : precondition_error(msg), offending_stage(stage), constellation_span(span) {}

    uint64_t offending_stage;
    uint64_t constellation_span;
};

/// Asymptotic weights need a seed census at a late enough stage.
class seed_stage_error : public precondition_error {
public:
    seed_stage_error(const std::string& msg, uint64_t required, uint64_t given)
        : precondition_error(msg), required_stage(required), given_stage(given) {}

    uint64_t required_stage;
    uint64_t given_stage;
};

/// Repetition of a gap longer than the feasibility bound allows.
class infeasible_repetition_error : public precondition_error {
public:
    infeasible_repetition_error(const std::string& msg, uint64_t g, uint64_t len,
                                uint64_t max_len)
        : precondition_error(msg), gap(g), length(len), max_feasible(max_len) {}

    uint64_t gap;
    uint64_t length;
    uint64_t max_feasible;
};

}  // namespace sievelab
