#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "prosowave/extract.hpp"

using namespace prosowave;

namespace {

Audio sine(double freq, double seconds, double amplitude = 0.8, int rate = 16000) {
    Audio a;
    a.sample_rate = rate;
    a.samples.resize(static_cast<std::size_t>(seconds * rate));
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        a.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq *
                                            static_cast<double>(i) / rate);
    return a;
}

Audio silence(double seconds, int rate = 16000) {
    Audio a;
    a.sample_rate = rate;
    a.samples.assign(static_cast<std::size_t>(seconds * rate), 0.0);
    return a;
}

}  // namespace

TEST_CASE("log energy of digital silence is the epsilon floor") {
    auto e = log_energy(silence(0.5));
    std::size_t window = static_cast<std::size_t>(0.025 * 16000);
    double expected = std::log(1e-10 * static_cast<double>(window));
    for (double v : e.values) CHECK(v == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("log energy of a steady sine is constant inside the utterance") {
    auto e = log_energy(sine(220.0, 1.0));
    for (std::size_t k = 10; k + 10 < e.size(); ++k)
        CHECK(e.values[k] == doctest::Approx(e.values[50]).epsilon(0.1));
}

TEST_CASE("doubling the amplitude adds log 4 to the energy") {
    auto e1 = log_energy(sine(220.0, 1.0, 0.4));
    auto e2 = log_energy(sine(220.0, 1.0, 0.8));
    for (std::size_t k = 10; k + 10 < e1.size(); ++k)
        CHECK(e2.values[k] - e1.values[k] == doctest::Approx(std::log(4.0)).epsilon(0.01));
}

TEST_CASE("log energy rejects empty audio") {
    CHECK_THROWS_AS(log_energy(Audio{}), std::invalid_argument);
}

TEST_CASE("autocorrelation tracker locks onto a 150 Hz sine") {
    auto [f0, mask] = autocorr_f0(sine(150.0, 1.0), PitchRange::male());
    REQUIRE(f0.size() == mask.size());
    for (std::size_t k = 15; k + 15 < f0.size(); ++k) {
        CHECK(mask[k]);
        CHECK(f0.values[k] == doctest::Approx(150.0).epsilon(2.0 / 150.0));
    }
}

TEST_CASE("voiced f0 values stay inside the pitch range") {
    std::mt19937_64 gen(44);
    std::normal_distribution<double> dist(0.0, 0.05);
    auto audio = sine(250.0, 1.0);
    for (double& s : audio.samples) s += dist(gen);
    auto [f0, mask] = autocorr_f0(audio, PitchRange::male());
    for (std::size_t k = 0; k < f0.size(); ++k) {
        if (!mask[k]) {
            CHECK(f0.values[k] == 0.0);
            continue;
        }
        CHECK(f0.values[k] >= 70.0);
        CHECK(f0.values[k] <= 300.0);
    }
}

TEST_CASE("white noise is mostly unvoiced") {
    std::mt19937_64 gen(45);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    Audio audio;
    audio.sample_rate = 16000;
    audio.samples.resize(16000);
    for (double& s : audio.samples) s = dist(gen);
    auto [f0, mask] = autocorr_f0(audio, PitchRange::male());
    std::size_t unvoiced = 0;
    for (bool v : mask) unvoiced += !v;
    CHECK(static_cast<double>(unvoiced) >= 0.9 * static_cast<double>(mask.size()));
}

TEST_CASE("digital silence is entirely unvoiced") {
    auto [f0, mask] = autocorr_f0(silence(0.5), PitchRange::male());
    for (bool v : mask) CHECK_FALSE(v);
    for (double v : f0.values) CHECK(v == 0.0);
}

TEST_CASE("energy and f0 framings agree") {
    auto audio = sine(180.0, 0.73);
    auto e = log_energy(audio);
    auto [f0, mask] = autocorr_f0(audio, PitchRange::male());
    CHECK(e.size() == f0.size());
}

TEST_CASE("pitch ranges parse and validate") {
    auto r = PitchRange::parse("80:240");
    CHECK(r.f_min == 80.0);
    CHECK(r.f_max == 240.0);
    CHECK(PitchRange::parse("female").f_max == 400.0);
    CHECK_THROWS_AS(PitchRange::parse("240:80"), std::invalid_argument);
    CHECK_THROWS_AS(PitchRange::parse("bogus"), std::invalid_argument);

    Audio low_rate = sine(150.0, 0.5, 0.8, 2000);
    CHECK_THROWS_AS(autocorr_f0(low_rate, PitchRange::male()), std::invalid_argument);
}

TEST_CASE("wav files round-trip through write and read") {
    oracles::TempDir dir;
    auto audio = sine(150.0, 0.25);
    write_wav(dir.file("a.wav"), audio);
    auto back = read_wav(dir.file("a.wav"));
    CHECK(back.sample_rate == audio.sample_rate);
    REQUIRE(back.samples.size() == audio.samples.size());
    for (std::size_t i = 0; i < audio.samples.size(); ++i)
        CHECK(back.samples[i] == doctest::Approx(audio.samples[i]).epsilon(1.0 / 16384.0));

    oracles::write_text(dir.file("bad.wav"), "not a wav file");
    CHECK_THROWS_AS(read_wav(dir.file("bad.wav")), std::runtime_error);
}
