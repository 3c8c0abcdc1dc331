#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "sievelab/gap_cycle.hpp"

using namespace sievelab;

namespace {

std::vector<uint16_t> collect(CycleStream& stream) {
    std::vector<uint16_t> gaps;
    uint32_t g;
    while (stream.next(g)) gaps.push_back(static_cast<uint16_t>(g));
    return gaps;
}

void check_invariants(const GapCycle& cycle) {
    const uint64_t p = cycle.stage_prime();
    CHECK(Int(cycle.sum()) == primorial(p));
    CHECK(Int(static_cast<unsigned long>(cycle.size())) == cycle_size_estimate(p).gap_count);
    if (p >= 3) {
        for (uint16_t g : cycle.gaps()) REQUIRE(g % 2 == 0);
        CHECK(cycle.gaps().back() == 2);
        // Dropping the wrap gap leaves a palindrome.
        auto body_end = cycle.gaps().end() - 1;
        CHECK(std::equal(cycle.gaps().begin(), body_end,
                         std::make_reverse_iterator(body_end)));
    }
}

}  // namespace

TEST_CASE("recursive construction of small cycles") {
    CHECK(build_cycle_recursive(2).gaps() == std::vector<uint16_t>{2});
    CHECK(build_cycle_recursive(3).gaps() == std::vector<uint16_t>{4, 2});
    CHECK(build_cycle_recursive(5).gaps() ==
          std::vector<uint16_t>{6, 4, 2, 4, 2, 4, 6, 2});
    GapCycle g7 = build_cycle_recursive(7);
    CHECK(g7.size() == 48);
    CHECK(g7.sum() == 210);
    CHECK_THROWS_AS(build_cycle_recursive(9), precondition_error);
}

TEST_CASE("direct construction matches the residue enumeration") {
    CHECK(build_cycle_direct(3).gaps() == std::vector<uint16_t>{4, 2});
    CHECK(build_cycle_direct(5).gaps() ==
          std::vector<uint16_t>{6, 4, 2, 4, 2, 4, 6, 2});
    CHECK(build_cycle_direct(11).size() == 480);
    CHECK_THROWS_AS(build_cycle_direct(17), precondition_error);
}

TEST_CASE("recursion equals direct enumeration through 13") {
    for (uint64_t p : {2, 3, 5, 7, 11, 13})
        CHECK(build_cycle_recursive(p) == build_cycle_direct(p));
}

TEST_CASE("cycle invariants through 19") {
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19})
        check_invariants(build_cycle_recursive(p));
}

TEST_CASE("streaming replays the recursion") {
    for (uint64_t p : {2, 3, 5, 7, 11, 13}) {
        CycleStream stream = stream_cycle(p);
        CHECK(collect(stream) == build_cycle_recursive(p).gaps());
    }
    // Force lazy stages by shrinking the base budget below G(11#).
    CycleStream lazy = stream_cycle(13, kDefaultStreamCeiling, 128);
    CHECK(collect(lazy) == build_cycle_recursive(13).gaps());

    // Fully lazy chain all the way down to the one-gap base cycle.
    CycleStream deep = stream_cycle(11, kDefaultStreamCeiling, 2);
    CHECK(collect(deep) == build_cycle_recursive(11).gaps());

    CycleStream s17 = stream_cycle(17);
    CHECK(Int(static_cast<unsigned long>(collect(s17).size())) ==
          cycle_size_estimate(17).gap_count);
}

TEST_CASE("stream reset restarts at the anchor") {
    CycleStream stream = stream_cycle(5);
    uint32_t g;
    REQUIRE(stream.next(g));
    CHECK(g == 6);
    stream.reset();
    CHECK(collect(stream) == std::vector<uint16_t>{6, 4, 2, 4, 2, 4, 6, 2});
}

TEST_CASE("size estimates match the known ladder") {
    CHECK(cycle_size_estimate(5).gap_count == 8);
    CHECK(cycle_size_estimate(5).bytes == 16);
    CHECK(cycle_size_estimate(31).gap_count == Int("30656102400"));
    CHECK(cycle_size_estimate(37).gap_count == Int("1103619686400"));
    CHECK(scientific_str(Int("30656102400")) == "3.06561E10");
    CHECK(scientific_str(Int("1103619686400")) == "1.10362E12");
    CHECK(scientific_str(Int(5760)) == "5760");
}

TEST_CASE("memory budget is enforced with the estimate attached") {
    try {
        build_cycle_recursive(23);  // 72,990,720 bytes > the 64 MiB default
        FAIL("expected budget_exceeded_error");
    } catch (const budget_exceeded_error& e) {
        CHECK(e.stage_prime == 23);
        CHECK(e.estimated_gaps == "36495360");
        CHECK(e.estimated_bytes == "72990720");
    }
    // A raised budget admits the same stage.
    CHECK(build_cycle_recursive(17, 1ull << 30).size() == 92160);
}

TEST_CASE("stream ceiling refuses p = 31 with the estimate") {
    try {
        stream_cycle(31);
        FAIL("expected resource_limit_error");
    } catch (const budget_exceeded_error& e) {
        CHECK(e.estimated_gaps == "30656102400");
        CHECK(std::string(e.what()).find("3.06561E10") != std::string::npos);
    }
}

TEST_CASE("binary round trip and header layout") {
    for (uint64_t p : {2, 3, 5, 7, 11}) {
        GapCycle cycle = build_cycle_recursive(p);
        std::stringstream buf;
        write_cycle_binary(cycle, buf);
        CHECK(read_cycle_binary(buf) == cycle);
    }

    std::stringstream buf;
    write_cycle_binary(build_cycle_recursive(3), buf);
    std::string bytes = buf.str();
    REQUIRE(bytes.size() == 4 + 1 + 8 + 8 + 2 * 2);
    CHECK(bytes.substr(0, 4) == "PGAP");
    CHECK(bytes[4] == 1);
    CHECK(static_cast<unsigned char>(bytes[5]) == 3);   // prime, little-endian
    CHECK(static_cast<unsigned char>(bytes[13]) == 2);  // count, little-endian
    CHECK(static_cast<unsigned char>(bytes[21]) == 4);  // first gap
    CHECK(static_cast<unsigned char>(bytes[23]) == 2);  // second gap

    std::stringstream from_stream;
    CycleStream s7 = stream_cycle(7);
    write_cycle_binary(s7, from_stream);
    CHECK(read_cycle_binary(from_stream) == build_cycle_recursive(7));

    std::stringstream junk("nope");
    CHECK_THROWS_AS(read_cycle_binary(junk), precondition_error);
}

TEST_CASE("text emit") {
    std::ostringstream os;
    write_cycle_text(build_cycle_recursive(5), os);
    CHECK(os.str() == "6,4,2,4,2,4,6,2\n");
}
