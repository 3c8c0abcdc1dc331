#include "sievelab/gap_cycle.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace sievelab {

GapCycle::GapCycle(uint64_t stage_prime, std::vector<uint16_t> gaps)
    : stage_prime_(stage_prime), gaps_(std::move(gaps)) {
    if (gaps_.empty()) throw precondition_error("a gap cycle cannot be empty");
}

uint64_t GapCycle::sum() const {
    uint64_t s = 0;
    for (uint16_t g : gaps_) s += g;
    return s;
}

uint16_t GapCycle::max_gap() const {
    return *std::max_element(gaps_.begin(), gaps_.end());
}

CycleSizeEstimate cycle_size_estimate(uint64_t p) {
    if (!is_prime(p)) throw precondition_error("cycle stage must be prime");
    Int count = 1;
    for (uint64_t q : primes_up_to(p)) count *= Int(q - 1);
    return CycleSizeEstimate{count, count * 2};
}

std::string scientific_str(const Int& n) {
    std::string digits = n.get_str();
    if (digits.size() <= 6) return digits;
    size_t exponent = digits.size() - 1;
    // Round to 6 significant digits, carrying as needed.
    std::string mant = digits.substr(0, 6);
    if (digits[6] >= '5') {
        int i = 5;
        while (i >= 0 && mant[i] == '9') mant[i--] = '0';
        if (i < 0) {
            mant.insert(mant.begin(), '1');
            mant.pop_back();
            ++exponent;
        } else {
            ++mant[i];
        }
    }
    std::ostringstream os;
    os << mant[0] << "." << mant.substr(1) << "E" << exponent;
    return os.str();
}

namespace {

// One recursion stage: G(p#) -> G(P p#) where P = next_prime(p).  Lays P
// copies of the previous cycle end to end and fuses the pair of gaps around
// every candidate P*c (c running over the previous stage's candidates); both
// walks advance in lockstep over the previous gaps, so nothing but the two
// cursors is kept.
std::vector<uint16_t> extend_stage(const std::vector<uint16_t>& prev, uint64_t P) {
    const size_t m = prev.size();
    std::vector<uint16_t> out;
    out.reserve(m * (P - 1));

    uint64_t v = 1;        // candidate reached by the walk
    uint64_t kill = P;     // next candidate to remove (P * 1 first)
    size_t kill_idx = 0;   // previous-stage gaps consumed by the kill cursor
    uint32_t pending = 0;  // accumulated width of fused gaps

    for (uint64_t pass = 0; pass < P; ++pass) {
        for (size_t i = 0; i < m; ++i) {
            const uint32_t g = prev[i];
            v += g;
            if (v == kill) {
                pending += g;
                kill = kill_idx < m ? kill + P * uint64_t(prev[kill_idx++])
                                    : UINT64_MAX;
            } else {
                const uint32_t fused = pending + g;
                assert(fused <= UINT16_MAX);
                out.push_back(static_cast<uint16_t>(fused));
                pending = 0;
            }
        }
    }
    assert(pending == 0);  // candidate 1 is never removed
    return out;
}

}  // namespace

GapCycle build_cycle_recursive(uint64_t p, uint64_t memory_budget_bytes) {
    if (!is_prime(p)) throw precondition_error("cycle stage must be prime");
    CycleSizeEstimate est = cycle_size_estimate(p);
    if (est.bytes > Int(memory_budget_bytes)) {
        std::ostringstream msg;
        msg << "G(" << p << "#) needs " << est.gap_count.get_str() << " gaps ("
            << est.bytes.get_str() << " bytes, ~" << scientific_str(est.gap_count)
            << " gaps) but the budget is " << memory_budget_bytes << " bytes";
        throw budget_exceeded_error(msg.str(), p, est.gap_count.get_str(),
                                    est.bytes.get_str(), memory_budget_bytes);
    }

    std::vector<uint16_t> gaps{2};  // G(2#): the single generator 1 mod 2
    uint64_t stage = 2;
    while (stage < p) {
        uint64_t P = next_prime(stage);
        gaps = extend_stage(gaps, P);
        stage = P;
    }
    return GapCycle(p, std::move(gaps));
}

GapCycle build_cycle_direct(uint64_t p) {
    if (!is_prime(p)) throw precondition_error("cycle stage must be prime");
    if (p > 13)
        throw precondition_error("direct construction is the oracle; use the recursion beyond 13");

    const uint64_t modulus = primorial(p).get_ui();
    std::vector<uint16_t> gaps;
    uint64_t previous = 1;
    for (uint64_t c = 2; c <= modulus; ++c) {
        if (std::gcd(c, modulus) != 1) continue;
        gaps.push_back(static_cast<uint16_t>(c - previous));
        previous = c;
    }
    gaps.push_back(static_cast<uint16_t>(modulus + 1 - previous));  // wrap to 1
    return GapCycle(p, std::move(gaps));
}

// ---------------------------------------------------------------------------
// Streaming

namespace {

// A single traversal of one stage's cycle.
class GapPass {
public:
    virtual ~GapPass() = default;
    virtual bool next(uint32_t& gap) = 0;
};

// A replayable producer: open() starts a fresh traversal.  Recursive stages
// replay their predecessor several times per pass, so passes alone are not
// enough.
class GapSource {
public:
    virtual ~GapSource() = default;
    virtual uint64_t stage_prime() const = 0;
    virtual std::unique_ptr<GapPass> open() const = 0;
};

class VectorPass final : public GapPass {
public:
    explicit VectorPass(const std::vector<uint16_t>& gaps) : gaps_(gaps) {}
    bool next(uint32_t& gap) override {
        if (i_ == gaps_.size()) return false;
        gap = gaps_[i_++];
        return true;
    }

private:
    const std::vector<uint16_t>& gaps_;
    size_t i_ = 0;
};

class VectorSource final : public GapSource {
public:
    explicit VectorSource(GapCycle cycle) : cycle_(std::move(cycle)) {}
    uint64_t stage_prime() const override { return cycle_.stage_prime(); }
    std::unique_ptr<GapPass> open() const override {
        return std::make_unique<VectorPass>(cycle_.gaps());
    }

private:
    GapCycle cycle_;
};

// Lazy counterpart of extend_stage: same two-cursor fusion, but the walk
// reopens the predecessor P times and the kill schedule runs off a second
// independent traversal.
class ExtendPass final : public GapPass {
public:
    ExtendPass(const GapSource& prev, uint64_t P)
        : prev_(prev), p_(P), kill_(P), kill_gaps_(prev.open()) {}

    bool next(uint32_t& gap) override {
        uint32_t g;
        while (pull(g)) {
            v_ += g;
            if (v_ == kill_) {
                pending_ += g;
                uint32_t kg;
                kill_ = kill_gaps_->next(kg) ? kill_ + p_ * uint64_t(kg)
                                             : UINT64_MAX;
            } else {
                gap = pending_ + g;
                pending_ = 0;
                return true;
            }
        }
        assert(pending_ == 0);
        return false;
    }

private:
    bool pull(uint32_t& g) {
        while (true) {
            if (walk_ && walk_->next(g)) return true;
            if (passes_opened_ == p_) return false;
            walk_ = prev_.open();
            ++passes_opened_;
        }
    }

    const GapSource& prev_;
    const uint64_t p_;
    uint64_t v_ = 1;
    uint64_t kill_;
    uint32_t pending_ = 0;
    uint64_t passes_opened_ = 0;
    std::unique_ptr<GapPass> walk_;
    std::unique_ptr<GapPass> kill_gaps_;
};

class ExtendSource final : public GapSource {
public:
    ExtendSource(std::shared_ptr<const GapSource> prev, uint64_t P)
        : prev_(std::move(prev)), p_(P) {}
    uint64_t stage_prime() const override { return p_; }
    std::unique_ptr<GapPass> open() const override {
        return std::make_unique<ExtendPass>(*prev_, p_);
    }

private:
    std::shared_ptr<const GapSource> prev_;
    uint64_t p_;
};

std::shared_ptr<const GapSource> make_source(uint64_t p, uint64_t base_budget) {
    // Materialize the largest stage that fits the base budget; extend lazily.
    uint64_t base = 2;
    for (uint64_t q = 2; q <= p; q = next_prime(q)) {
        if (cycle_size_estimate(q).bytes <= Int(base_budget)) base = q;
    }
    std::shared_ptr<const GapSource> src =
        std::make_shared<VectorSource>(build_cycle_recursive(base, base_budget));
    for (uint64_t q = base; q < p;) {
        q = next_prime(q);
        src = std::make_shared<ExtendSource>(src, q);
    }
    return src;
}

}  // namespace

struct CycleStream::Impl {
    std::shared_ptr<const GapSource> source;
    std::unique_ptr<GapPass> pass;
    Int gap_count;
};

CycleStream::CycleStream(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
CycleStream::CycleStream(CycleStream&&) noexcept = default;
CycleStream& CycleStream::operator=(CycleStream&&) noexcept = default;
CycleStream::~CycleStream() = default;

uint64_t CycleStream::stage_prime() const { return impl_->source->stage_prime(); }
Int CycleStream::gap_count() const { return impl_->gap_count; }

bool CycleStream::next(uint32_t& gap) { return impl_->pass->next(gap); }

void CycleStream::reset() { impl_->pass = impl_->source->open(); }

CycleStream stream_cycle(uint64_t p, uint64_t stream_ceiling,
                         uint64_t base_budget_bytes) {
    if (!is_prime(p)) throw precondition_error("cycle stage must be prime");
    if (p > stream_ceiling) {
        CycleSizeEstimate est = cycle_size_estimate(p);
        std::ostringstream msg;
        msg << "streaming ceiling is " << stream_ceiling << "; G(" << p
            << "#) has " << est.gap_count.get_str() << " gaps (~"
            << scientific_str(est.gap_count) << ")";
        throw budget_exceeded_error(msg.str(), p, est.gap_count.get_str(),
                                    est.bytes.get_str(), 0);
    }
    auto impl = std::make_unique<CycleStream::Impl>();
    impl->source = make_source(p, base_budget_bytes);
    impl->pass = impl->source->open();
    impl->gap_count = cycle_size_estimate(p).gap_count;
    return CycleStream(std::move(impl));
}

// ---------------------------------------------------------------------------
// File formats

namespace {

constexpr char kMagic[4] = {'P', 'G', 'A', 'P'};
constexpr uint8_t kVersion = 1;

void put_u64_le(std::ostream& out, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

uint64_t get_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
    return v;
}

void write_header(std::ostream& out, uint64_t prime, uint64_t count) {
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    put_u64_le(out, prime);
    put_u64_le(out, count);
}

void put_gap(std::ostream& out, uint32_t g) {
    char b[2] = {static_cast<char>(g & 0xff), static_cast<char>((g >> 8) & 0xff)};
    out.write(b, 2);
}

}  // namespace

void write_cycle_binary(const GapCycle& cycle, std::ostream& out) {
    write_header(out, cycle.stage_prime(), cycle.size());
    for (uint16_t g : cycle.gaps()) put_gap(out, g);
}

void write_cycle_binary(CycleStream& stream, std::ostream& out) {
    if (stream.gap_count() > Int(UINT64_MAX))
        throw resource_limit_error("gap count does not fit the header field");
    write_header(out, stream.stage_prime(), stream.gap_count().get_ui());
    uint32_t g;
    while (stream.next(g)) put_gap(out, g);
}

GapCycle read_cycle_binary(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kMagic))
        throw precondition_error("not a cycle file: bad magic");
    int version = in.get();
    if (version != kVersion)
        throw precondition_error("unsupported cycle file version");
    uint64_t prime = get_u64_le(in);
    uint64_t count = get_u64_le(in);
    if (!in || count == 0) throw precondition_error("truncated cycle header");
    std::vector<uint16_t> gaps(count);
    for (uint64_t i = 0; i < count; ++i) {
        unsigned char b[2];
        in.read(reinterpret_cast<char*>(b), 2);
        if (!in) throw precondition_error("truncated cycle data");
        gaps[i] = static_cast<uint16_t>(b[0] | (uint16_t(b[1]) << 8));
    }
    return GapCycle(prime, std::move(gaps));
}

void write_cycle_text(const GapCycle& cycle, std::ostream& out) {
    for (size_t i = 0; i < cycle.size(); ++i) {
        if (i) out << ',';
        out << cycle.gaps()[i];
    }
    out << '\n';
}

void write_cycle_text(CycleStream& stream, std::ostream& out) {
    uint32_t g;
    bool first = true;
    while (stream.next(g)) {
        if (!first) out << ',';
        out << g;
        first = false;
    }
    out << '\n';
}

}  // namespace sievelab
