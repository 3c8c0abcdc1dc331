#include "sievelab/constellation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <thread>

namespace sievelab {

Constellation::Constellation(std::vector<uint32_t> gaps) : gaps_(std::move(gaps)) {
    if (gaps_.empty()) throw precondition_error("constellation must have at least one gap");
    for (uint32_t g : gaps_) {
        if (g == 0) throw precondition_error("constellation gaps must be positive");
        span_ += g;
    }
}

Constellation Constellation::parse(std::string_view text) {
    std::vector<uint32_t> gaps;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - pos);
        uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || value == 0)
            throw precondition_error("malformed constellation: expected comma-separated positive integers");
        gaps.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return Constellation(std::move(gaps));
}

bool Constellation::all_even() const {
    return std::all_of(gaps_.begin(), gaps_.end(), [](uint32_t g) { return g % 2 == 0; });
}

bool Constellation::is_palindrome() const {
    return std::equal(gaps_.begin(), gaps_.end(), gaps_.rbegin());
}

Constellation Constellation::reversed() const {
    std::vector<uint32_t> r(gaps_.rbegin(), gaps_.rend());
    return Constellation(std::move(r));
}

std::string Constellation::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < gaps_.size(); ++i) {
        if (i) os << ',';
        os << gaps_[i];
    }
    return os.str();
}

Int Census::total() const {
    Int t = 0;
    for (const Int& c : counts) t += c;
    return t;
}

Int Census::at(size_t j) const {
    if (j < j_min || j > j_max()) return 0;
    return counts[j - j_min];
}

namespace {

std::vector<uint64_t> prefix_targets(const Constellation& s) {
    std::vector<uint64_t> targets;
    targets.reserve(s.length());
    uint64_t sum = 0;
    for (uint32_t g : s.gaps()) {
        sum += g;
        targets.push_back(sum);
    }
    return targets;
}

// Walks gaps from one start position.  Returns the driving-term length
// (gaps consumed) if the running sum hits every prefix target, else 0.
// Positivity of the gaps makes the block partition unique, so each start
// yields at most one driving term.
template <typename GapAt>
size_t walk_start(GapAt&& gap_at, size_t max_steps,
                  const std::vector<uint64_t>& targets) {
    uint64_t sum = 0;
    size_t t = 0;
    for (size_t k = 0; k < max_steps; ++k) {
        sum += gap_at(k);
        if (sum > targets[t]) return 0;
        if (sum == targets[t]) {
            if (++t == targets.size()) return k + 1;
        }
    }
    return 0;
}

Census trim_census(const Constellation& s, uint64_t stage_prime,
                   const std::vector<uint64_t>& raw) {
    const size_t j1 = s.length();
    size_t last = 0;  // offset of the largest nonzero count
    for (size_t i = 0; i < raw.size(); ++i)
        if (raw[i] != 0) last = i;
    std::vector<Int> counts;
    counts.reserve(last + 1);
    for (size_t i = 0; i <= last; ++i) counts.emplace_back(raw[i]);
    return Census{s, stage_prime, j1, std::move(counts)};
}

}  // namespace

Census scan_census(const GapCycle& cycle, const Constellation& s, unsigned threads) {
    const auto& gaps = cycle.gaps();
    const size_t n = gaps.size();
    const size_t j1 = s.length();
    const size_t width = std::max(j1, static_cast<size_t>(s.span() / 2));
    const std::vector<uint64_t> targets = prefix_targets(s);
    // A driving term consumes at most span/2 gaps (each gap >= 2), wrapping
    // the cycle as often as that takes.
    const size_t max_steps = width;

    auto scan_range = [&](size_t begin, size_t end, std::vector<uint64_t>& acc) {
        for (size_t start = begin; start < end; ++start) {
            size_t j = walk_start(
                [&](size_t k) { return uint64_t(gaps[(start + k) % n]); },
                max_steps, targets);
            if (j) ++acc[j - j1];
        }
    };

    std::vector<uint64_t> raw(width - j1 + 1, 0);
    if (threads <= 1 || n < 4096) {
        scan_range(0, n, raw);
    } else {
        const size_t workers = std::min<size_t>(threads, n);
        std::vector<std::vector<uint64_t>> partial(workers, raw);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t w = 0; w < workers; ++w) {
            size_t begin = n * w / workers;
            size_t end = n * (w + 1) / workers;
            pool.emplace_back([&, begin, end, w] { scan_range(begin, end, partial[w]); });
        }
        for (auto& t : pool) t.join();
        for (const auto& acc : partial)
            for (size_t i = 0; i < raw.size(); ++i) raw[i] += acc[i];
    }
    return trim_census(s, cycle.stage_prime(), raw);
}

Census scan_census(CycleStream& stream, const Constellation& s) {
    const size_t j1 = s.length();
    const size_t width = std::max(j1, static_cast<size_t>(s.span() / 2));

    // Cycles shorter than the walk window wrap more than once per start;
    // they are tiny, so collect and scan in memory.
    if (stream.gap_count() <= Int(static_cast<unsigned long>(2 * width + 2))) {
        std::vector<uint16_t> gaps;
        uint32_t g;
        stream.reset();
        while (stream.next(g)) gaps.push_back(static_cast<uint16_t>(g));
        return scan_census(GapCycle(stream.stage_prime(), std::move(gaps)), s);
    }

    const std::vector<uint64_t> targets = prefix_targets(s);
    std::vector<uint64_t> raw(width - j1 + 1, 0);

    // Ring of the last `width` gaps: once full, the oldest buffered position
    // has its whole walk window in the buffer.  The first `width` gaps are
    // kept so the tail starts can wrap.
    std::vector<uint32_t> ring(width, 0);
    std::vector<uint32_t> head;
    head.reserve(width);
    size_t filled = 0;
    size_t front = 0;

    auto feed = [&](uint32_t g) {
        if (filled < width) {
            ring[(front + filled) % width] = g;
            ++filled;
            return;
        }
        size_t j = walk_start(
            [&](size_t k) { return uint64_t(ring[(front + k) % width]); },
            width, targets);
        if (j) ++raw[j - j1];
        ring[front] = g;
        front = (front + 1) % width;
    };

    stream.reset();
    uint32_t g;
    while (stream.next(g)) {
        if (head.size() < width) head.push_back(g);
        feed(g);
    }
    // The final `width` starts wrap around; replay the head, then flush the
    // last buffered start.
    for (size_t i = 0; i + 1 < width; ++i) feed(head[i]);
    size_t j = walk_start(
        [&](size_t k) { return uint64_t(ring[(front + k) % width]); },
        width, targets);
    if (j) ++raw[j - j1];

    return trim_census(s, stream.stage_prime(), raw);
}

size_t max_driving_length(const Census& census) { return census.j_max(); }

uint64_t p0_full_model(const Constellation& s) {
    for (uint64_t p = 2;; p = next_prime(p))
        if (s.span() < 2 * next_prime(p)) return p;
}

uint64_t p0_asymptotic(const Constellation& s) {
    uint64_t best = 2;
    const auto& gaps = s.gaps();
    for (size_t i = 0; i < gaps.size(); ++i) {
        uint64_t sum = 0;
        for (size_t j = i; j < gaps.size(); ++j) {
            sum += gaps[j];
            uint64_t rest = sum;
            for (uint64_t d = 2; d * d <= rest; d == 2 ? d = 3 : d += 2)
                while (rest % d == 0) {
                    best = std::max(best, d);
                    rest /= d;
                }
            if (rest > 1) best = std::max(best, rest);
        }
    }
    return best;
}

}  // namespace sievelab
