#include "sievelab/prime_census.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

namespace sievelab {

namespace {

constexpr uint64_t kSegmentCandidates = 1ull << 22;  // odd numbers per segment

// Marks composites among the odd numbers low, low+2, ..., < high.
void sieve_segment(uint64_t low, uint64_t high,
                   const std::vector<uint64_t>& base_primes,
                   std::vector<bool>& composite) {
    const uint64_t count = (high - low + 1) / 2;  // odd numbers in [low, high)
    composite.assign(count, false);
    for (uint64_t p : base_primes) {
        if (p == 2) continue;
        if (p * p >= high) break;
        uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
        if (start % 2 == 0) start += p;  // only odd multiples live here
        for (uint64_t m = start; m < high; m += 2 * p)
            composite[(m - low) / 2] = true;
    }
}

}  // namespace

void for_each_prime(uint64_t limit, unsigned threads,
                    const std::function<void(uint64_t)>& fn) {
    if (limit < 2) return;
    fn(2);
    if (limit < 3) return;

    const uint64_t root = static_cast<uint64_t>(std::sqrt(double(limit))) + 2;
    const std::vector<uint64_t> base_primes = primes_up_to(std::max<uint64_t>(root, 3));

    const uint64_t span = 2 * kSegmentCandidates;
    const unsigned workers = std::max(1u, threads);
    std::vector<std::vector<bool>> bits(workers);

    for (uint64_t batch_low = 3; batch_low <= limit; batch_low += span * workers) {
        // Sieve up to `workers` segments concurrently, then emit in order.
        unsigned active = 0;
        std::vector<std::pair<uint64_t, uint64_t>> ranges;
        for (unsigned w = 0; w < workers; ++w) {
            uint64_t low = batch_low + span * w;
            if (low > limit) break;
            uint64_t high = std::min(low + span, limit + 1);
            ranges.emplace_back(low, high);
            ++active;
        }
        if (active > 1) {
            std::vector<std::thread> pool;
            pool.reserve(active);
            for (unsigned w = 0; w < active; ++w)
                pool.emplace_back([&, w] {
                    sieve_segment(ranges[w].first, ranges[w].second, base_primes, bits[w]);
                });
            for (auto& t : pool) t.join();
        } else if (active == 1) {
            sieve_segment(ranges[0].first, ranges[0].second, base_primes, bits[0]);
        }
        for (unsigned w = 0; w < active; ++w) {
            const auto [low, high] = ranges[w];
            const uint64_t count = (high - low + 1) / 2;
            for (uint64_t i = 0; i < count; ++i)
                if (!bits[w][i]) fn(low + 2 * i);
        }
    }
}

PrimeWindowCount count_among_primes(const Constellation& s, uint64_t limit,
                                    unsigned threads, uint64_t ceiling) {
    if (limit < 3) throw precondition_error("prime census needs limit >= 3");
    if (limit > ceiling) {
        std::ostringstream msg;
        msg << "limit " << limit << " exceeds the configured ceiling " << ceiling;
        throw resource_limit_error(msg.str());
    }

    const auto& pattern = s.gaps();
    const size_t k = pattern.size();
    PrimeWindowCount result{s, limit, 0, std::nullopt};

    // Sliding window of the last k prime gaps.
    std::vector<uint64_t> window(k, 0);
    size_t head = 0;
    size_t seen = 0;
    uint64_t prev = 0;

    for_each_prime(limit, threads, [&](uint64_t p) {
        if (prev != 0) {
            window[head] = p - prev;
            head = (head + 1) % k;
            if (seen < k) ++seen;
            if (seen == k) {
                bool match = true;
                for (size_t i = 0; i < k && match; ++i)
                    match = window[(head + i) % k] == pattern[i];
                if (match) {
                    result.occurrences += 1;
                    if (!result.first_occurrence) result.first_occurrence = p - s.span();
                }
            }
        }
        prev = p;
    });
    return result;
}

}  // namespace sievelab
