#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "sievelab/constellation.hpp"
#include "sievelab/gap_cycle.hpp"

using namespace sievelab;

namespace {

// Independent census oracle working on residues instead of gaps: a driving
// term for s starts at a candidate c iff every prefix-sum point c + T_t is
// itself coprime to p#, and its length is the number of candidates in
// (c, c + |s|].  Everything is plain gcd arithmetic; no gap walking at all.
std::map<size_t, uint64_t> census_by_residues(uint64_t p, const Constellation& s) {
    const uint64_t modulus = primorial(p).get_ui();
    std::vector<uint64_t> targets;
    uint64_t acc = 0;
    for (uint32_t g : s.gaps()) targets.push_back(acc += g);

    std::map<size_t, uint64_t> counts;
    for (uint64_t c = 1; c <= modulus; ++c) {
        if (std::gcd(c, modulus) != 1) continue;
        bool hit = true;
        for (uint64_t t : targets)
            if (std::gcd((c + t) % modulus, modulus) != 1) { hit = false; break; }
        if (!hit) continue;
        size_t len = 0;
        for (uint64_t x = c + 1; x <= c + s.span(); ++x)
            if (std::gcd(x % modulus, modulus) == 1) ++len;
        ++counts[len];
    }
    return counts;
}

void check_against_oracle(uint64_t p, const Constellation& s) {
    GapCycle cycle = build_cycle_recursive(p);
    Census census = scan_census(cycle, s);
    std::map<size_t, uint64_t> expected = census_by_residues(p, s);
    for (size_t j = census.j_min; j <= census.j_max(); ++j) {
        uint64_t want = expected.count(j) ? expected[j] : 0;
        CHECK(census.at(j) == Int(want));
    }
    for (const auto& [j, n] : expected) {
        REQUIRE(j >= census.j_min);
        CHECK(census.at(j) == Int(n));
    }
}

}  // namespace

TEST_CASE("constellation parsing and shape") {
    Constellation s = Constellation::parse("2,10,2");
    CHECK(s.length() == 3);
    CHECK(s.span() == 14);
    CHECK(s.is_palindrome());
    CHECK(Constellation::parse("2,6,4").reversed() == Constellation::parse("4,6,2"));
    CHECK_THROWS_AS(Constellation::parse(""), precondition_error);
    CHECK_THROWS_AS(Constellation::parse("2,,4"), precondition_error);
    CHECK_THROWS_AS(Constellation::parse("2,0"), precondition_error);
    CHECK_THROWS_AS(Constellation::parse("6;6"), precondition_error);
}

TEST_CASE("reference censuses from the worked cycles") {
    GapCycle g5 = build_cycle_recursive(5);
    Census c66 = scan_census(g5, Constellation::parse("6,6"));
    CHECK(c66.j_min == 2);
    CHECK(c66.j_max() == 4);
    CHECK(c66.counts == std::vector<Int>{0, 2, 2});

    Census c2102 = scan_census(build_cycle_recursive(7), Constellation::parse("2,10,2"));
    CHECK(c2102.counts == std::vector<Int>{2, 6});

    Census c1212 = scan_census(build_cycle_recursive(11), Constellation::parse("12,12"));
    CHECK(c1212.counts == std::vector<Int>{0, 2, 20, 48, 58});

    GapCycle g13 = build_cycle_recursive(13);
    Census c5 = scan_census(g13, Constellation::parse("2,10,2,10,2"));
    CHECK(c5.counts == std::vector<Int>{52, 44, 48});

    Census c11 = scan_census(g13, Constellation::parse("2,10,2,10,2,4,2,10,2,10,2"));
    CHECK(c11.j_min == 11);
    CHECK(c11.counts == std::vector<Int>{2, 10, 12});
    CHECK(max_driving_length(c11) == 13);  // nothing of length 14 or 15
}

TEST_CASE("wrap-around scanning: span larger than the cycle") {
    Census c = scan_census(build_cycle_recursive(5), Constellation::parse("30,30"));
    CHECK(c.j_max() == 16);  // every start wraps the 8-gap cycle twice
    CHECK(c.at(16) == 8);
    CHECK(c.total() == 8);
}

TEST_CASE("scan agrees with the residue oracle") {
    for (const char* text : {"6,6", "2,4,2", "4,2,4", "2,10,2", "6,6,6", "30,30", "12,12", "2"})
        for (uint64_t p : {3, 5, 7})
            check_against_oracle(p, Constellation::parse(text));
    check_against_oracle(11, Constellation::parse("12,12"));
    check_against_oracle(11, Constellation::parse("6,6"));

    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 12; ++iter) {
        std::vector<uint32_t> gaps;
        size_t len = 1 + rng() % 4;
        for (size_t i = 0; i < len; ++i) gaps.push_back(2 * (1 + rng() % 6));
        check_against_oracle(7, Constellation(gaps));
    }
}

TEST_CASE("census is independent of worker count") {
    GapCycle g13 = build_cycle_recursive(13);
    for (const char* text : {"6,6", "2,10,2,10,2"}) {
        Constellation s = Constellation::parse(text);
        Census one = scan_census(g13, s, 1);
        for (unsigned workers : {2u, 3u, 8u}) {
            Census many = scan_census(g13, s, workers);
            CHECK(many.counts == one.counts);
        }
    }
}

TEST_CASE("stream scan equals materialized scan") {
    for (uint64_t p : {5, 7, 11, 13}) {
        for (const char* text : {"6,6", "2,10,2", "30,30"}) {
            Constellation s = Constellation::parse(text);
            CycleStream stream = stream_cycle(p);
            Census a = scan_census(stream, s);
            Census b = scan_census(build_cycle_recursive(p), s);
            CHECK(a.counts == b.counts);
            CHECK(a.j_min == b.j_min);
        }
    }
    // Lazy stages under a tiny base budget take the windowed path.
    CycleStream lazy = stream_cycle(13, kDefaultStreamCeiling, 128);
    Census a = scan_census(lazy, Constellation::parse("6,6"));
    CHECK(a.counts == scan_census(build_cycle_recursive(13), Constellation::parse("6,6")).counts);
}

TEST_CASE("mirror symmetry of cycle censuses") {
    GapCycle g7 = build_cycle_recursive(7);
    Census fwd = scan_census(g7, Constellation::parse("2,6,4"));
    Census rev = scan_census(g7, Constellation::parse("4,6,2"));
    CHECK(fwd.counts == rev.counts);

    std::mt19937_64 rng(5150);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<uint32_t> gaps;
        size_t len = 2 + rng() % 3;
        for (size_t i = 0; i < len; ++i) gaps.push_back(2 * (1 + rng() % 5));
        Constellation s(gaps);
        CHECK(scan_census(g7, s).counts == scan_census(g7, s.reversed()).counts);
    }
}

TEST_CASE("424 runs at twice 242") {
    for (uint64_t p : {5, 7, 11, 13}) {
        GapCycle cycle = build_cycle_recursive(p);
        Census c242 = scan_census(cycle, Constellation::parse("2,4,2"));
        Census c424 = scan_census(cycle, Constellation::parse("4,2,4"));
        CHECK(c424.total() == 2 * c242.total());
    }
}

TEST_CASE("no runs of 2s and 4s of length six or more") {
    GapCycle g5 = build_cycle_recursive(5);
    GapCycle g7 = build_cycle_recursive(7);
    for (unsigned mask = 0; mask < 64; ++mask) {
        std::vector<uint32_t> gaps;
        for (unsigned bit = 0; bit < 6; ++bit)
            gaps.push_back((mask >> bit) & 1 ? 4 : 2);
        Constellation s(gaps);
        CHECK(scan_census(g5, s).total() == 0);
        CHECK(scan_census(g7, s).total() == 0);
    }
}

TEST_CASE("odd gaps yield the empty census") {
    Census c = scan_census(build_cycle_recursive(5), Constellation::parse("3,3"));
    CHECK(c.counts == std::vector<Int>{0});
    CHECK(c.j_min == 2);
    CHECK(c.j_max() == 2);
}

TEST_CASE("total growth once past the asymptotic seed") {
    // p0_asymptotic(6,6) = 3: from stage 3 on, totals grow by exactly p - 3.
    Constellation s = Constellation::parse("6,6");
    std::vector<uint64_t> stages{3, 5, 7, 11, 13};
    std::vector<Int> totals;
    for (uint64_t p : stages)
        totals.push_back(scan_census(build_cycle_recursive(p), s).total());
    CHECK(totals == std::vector<Int>{2, 4, 16, 128, 1280});
    for (size_t i = 1; i < stages.size(); ++i)
        CHECK(totals[i] == Int(stages[i] - 3) * totals[i - 1]);
}

TEST_CASE("full-model seed threshold") {
    CHECK(p0_full_model(Constellation::parse("2,10,2")) == 7);
    CHECK(p0_full_model(Constellation::parse("12,12")) == 11);
    CHECK(p0_full_model(Constellation::parse("6,6")) == 5);
    // Definitional check: smallest prime whose successor q has 2q > span.
    Constellation quad = Constellation::parse("30,30,30,30");
    CHECK(p0_full_model(quad) == 59);
    for (uint64_t p = 2; p < 59; p = next_prime(p))
        CHECK(quad.span() >= 2 * next_prime(p));
    CHECK(quad.span() < 2 * next_prime(59));
}

namespace {

// Factoring oracle: the largest prime factor over all interval sums.
uint64_t p0_by_factoring(const Constellation& s) {
    uint64_t best = 2;
    const auto& g = s.gaps();
    for (size_t i = 0; i < g.size(); ++i) {
        uint64_t sum = 0;
        for (size_t j = i; j < g.size(); ++j) {
            sum += g[j];
            for (uint64_t d = 2; d <= sum; ++d)
                if (sum % d == 0 && is_prime(d)) best = std::max(best, d);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("asymptotic seed threshold") {
    CHECK(p0_asymptotic(Constellation::parse("30,30,30,30")) == 5);
    CHECK(p0_asymptotic(Constellation::parse("6,6")) == 3);
    CHECK(p0_asymptotic(Constellation::parse("2,10,2")) == 7);  // 14 = 2*7
    CHECK(p0_asymptotic(Constellation::parse("2")) == 2);       // floor
    CHECK(p0_asymptotic(Constellation::parse("2,10,2,10,2")) == 13);

    std::mt19937_64 rng(321);
    for (int iter = 0; iter < 25; ++iter) {
        std::vector<uint32_t> gaps;
        size_t len = 1 + rng() % 5;
        for (size_t i = 0; i < len; ++i) gaps.push_back(2 * (1 + rng() % 20));
        Constellation s(gaps);
        CHECK(p0_asymptotic(s) == p0_by_factoring(s));
    }
}
