#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "prosowave/io.hpp"

using namespace prosowave;

TEST_CASE("read_track parses one value per line") {
    oracles::TempDir dir;
    oracles::write_text(dir.file("a.f0"), "0.0\n1.5\n2.0\n");
    auto t = read_track(dir.file("a.f0"));
    REQUIRE(t.size() == 3);
    CHECK(t.values[0] == 0.0);
    CHECK(t.values[1] == 1.5);
    CHECK(t.values[2] == 2.0);
    CHECK(t.frame_shift == 0.005);
}

TEST_CASE("read_track parses the two-column time/value form") {
    oracles::TempDir dir;
    oracles::write_text(dir.file("a.en"), "0.10\t4.0\n0.11\t5.0\n0.12\t6.0\n");
    auto t = read_track(dir.file("a.en"));
    REQUIRE(t.size() == 3);
    CHECK(t.start_time == doctest::Approx(0.10));
    CHECK(t.frame_shift == doctest::Approx(0.01));
    CHECK(t.values[2] == 6.0);
}

TEST_CASE("read_track reports NaN and malformed lines with their number") {
    oracles::TempDir dir;
    oracles::write_text(dir.file("bad.f0"), "1.0\nnan\n2.0\n");
    CHECK_THROWS_WITH_AS(read_track(dir.file("bad.f0")), doctest::Contains(":2:"),
                         std::runtime_error);
    oracles::write_text(dir.file("bad2.f0"), "1.0\n2.0\nx7\n");
    CHECK_THROWS_WITH_AS(read_track(dir.file("bad2.f0")), doctest::Contains(":3:"),
                         std::runtime_error);
    oracles::write_text(dir.file("empty.f0"), "");
    CHECK_THROWS_AS(read_track(dir.file("empty.f0")), std::runtime_error);
}

TEST_CASE("read_alignment parses words and flags bad files") {
    oracles::TempDir dir;
    oracles::write_text(dir.file("a.align"), "0.00\t0.40\tthe\tword\n0.40\t0.95\tcat\tword\n");
    auto a = read_alignment(dir.file("a.align"));
    REQUIRE(a.entries.size() == 2);
    CHECK(a.entries[0].label == "the");
    CHECK(a.entries[0].end == doctest::Approx(0.40));
    CHECK(a.entries[1].start == doctest::Approx(0.40));

    oracles::write_text(dir.file("overlap.align"),
                        "0.00\t0.50\tthe\tword\n0.40\t0.95\tcat\tword\n");
    CHECK_THROWS_AS(read_alignment(dir.file("overlap.align")), std::runtime_error);

    oracles::write_text(dir.file("kind.align"), "0.00\t0.50\tthe\tsyllable\n");
    CHECK_THROWS_WITH_AS(read_alignment(dir.file("kind.align")), doctest::Contains(":1:"),
                         std::runtime_error);
}

TEST_CASE("reference labels round-trip") {
    oracles::TempDir dir;
    ReferenceLabels refs = {{true, false}, {false, false}, {true, true}};
    write_refs(dir.file("a.refs"), refs);
    auto back = read_refs(dir.file("a.refs"));
    REQUIRE(back.size() == 3);
    CHECK(back[0].prominent);
    CHECK_FALSE(back[1].prominent);
    CHECK(back[2].boundary_after);
}

TEST_CASE("word prosody serialization is a fixpoint") {
    oracles::TempDir dir;
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> dist(0.0, 12.0);
    std::vector<WordProsody> records(500);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].word_index = static_cast<int>(i);
        records[i].label = "w" + std::to_string(i);
        records[i].prominence = dist(gen);
        records[i].boundary = dist(gen);
        records[i].prom_binary = (i % 3) == 0;
        records[i].bound_binary = (i % 5) == 0;
    }
    write_word_prosody(dir.file("a.tsv"), records);
    auto first = oracles::read_text(dir.file("a.tsv"));
    auto parsed = read_word_prosody(dir.file("a.tsv"));
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].prominence == doctest::Approx(records[i].prominence).epsilon(1e-6));
        CHECK(parsed[i].boundary == doctest::Approx(records[i].boundary).epsilon(1e-6));
        CHECK(parsed[i].prom_binary == records[i].prom_binary);
    }
    write_word_prosody(dir.file("b.tsv"), parsed);
    CHECK(oracles::read_text(dir.file("b.tsv")) == first);  // bit-identical
}

TEST_CASE("voicing mask derives from zero-valued f0 frames") {
    FrameSeries f0{{120.0, 0.0, 130.0, 0.0}, 0.005, 0.0};
    auto mask = voicing_from_f0(f0);
    CHECK(mask == VoicingMask{true, false, true, false});
}
