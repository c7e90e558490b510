#include "prosowave/extract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace prosowave {

PitchRange PitchRange::parse(const std::string& spec) {
    if (spec == "male") return male();
    if (spec == "female") return female();
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("pitch range must be male, female or min:max");
    PitchRange r;
    r.f_min = std::stod(spec.substr(0, colon));
    r.f_max = std::stod(spec.substr(colon + 1));
    if (!(r.f_min > 0 && r.f_min < r.f_max))
        throw std::invalid_argument("pitch range requires 0 < min < max");
    return r;
}

namespace {

constexpr double kEnergyEpsilon = 1e-10;

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
    return w;
}

struct Framing {
    std::size_t hop;
    std::size_t window;
    std::size_t count;
};

Framing make_framing(const Audio& audio, double frame_shift, double window_seconds) {
    Framing f;
    f.hop = static_cast<std::size_t>(std::lround(frame_shift * audio.sample_rate));
    f.window = static_cast<std::size_t>(std::lround(window_seconds * audio.sample_rate));
    if (f.hop == 0 || f.window < 4) throw std::invalid_argument("frame shift or window too small");
    f.count = (audio.samples.size() - 1) / f.hop + 1;
    return f;
}

/// Window centred on frame k, zero-padded at the signal edges.
std::vector<double> frame_samples(const Audio& audio, const Framing& f, std::size_t k) {
    std::vector<double> out(f.window, 0.0);
    std::ptrdiff_t centre = static_cast<std::ptrdiff_t>(k * f.hop);
    std::ptrdiff_t begin = centre - static_cast<std::ptrdiff_t>(f.window) / 2;
    for (std::size_t i = 0; i < f.window; ++i) {
        std::ptrdiff_t idx = begin + static_cast<std::ptrdiff_t>(i);
        if (idx >= 0 && idx < static_cast<std::ptrdiff_t>(audio.samples.size()))
            out[i] = audio.samples[static_cast<std::size_t>(idx)];
    }
    return out;
}

}  // namespace

Audio read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char tag[5] = {0};
    in.read(tag, 4);
    if (std::strncmp(tag, "RIFF", 4) != 0) throw std::runtime_error(path + ": not a RIFF file");
    read_u32(in);  // overall size
    in.read(tag, 4);
    if (std::strncmp(tag, "WAVE", 4) != 0) throw std::runtime_error(path + ": not a WAVE file");

    Audio audio;
    bool have_fmt = false;
    while (in.read(tag, 4)) {
        std::uint32_t chunk_size = read_u32(in);
        if (std::strncmp(tag, "fmt ", 4) == 0) {
            std::uint16_t format = read_u16(in);
            std::uint16_t channels = read_u16(in);
            std::uint32_t rate = read_u32(in);
            read_u32(in);  // byte rate
            read_u16(in);  // block align
            std::uint16_t bits = read_u16(in);
            if (format != 1 || bits != 16)
                throw std::runtime_error(path + ": only 16-bit PCM WAV is supported");
            if (channels != 1) throw std::runtime_error(path + ": only mono WAV is supported");
            audio.sample_rate = static_cast<int>(rate);
            if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::strncmp(tag, "data", 4) == 0) {
            if (!have_fmt) throw std::runtime_error(path + ": data chunk before fmt chunk");
            std::size_t n = chunk_size / 2;
            audio.samples.resize(n);
            std::vector<char> raw(chunk_size);
            in.read(raw.data(), chunk_size);
            for (std::size_t i = 0; i < n; ++i) {
                std::int16_t v = static_cast<std::int16_t>(
                    static_cast<unsigned char>(raw[2 * i]) |
                    (static_cast<unsigned char>(raw[2 * i + 1]) << 8));
                audio.samples[i] = static_cast<double>(v) / 32768.0;
            }
            return audio;
        } else {
            in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
        }
    }
    throw std::runtime_error(path + ": no data chunk found");
}

void write_wav(const std::string& path, const Audio& audio) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    auto put_u32 = [&](std::uint32_t v) {
        char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 24)};
        out.write(b, 4);
    };
    auto put_u16 = [&](std::uint16_t v) {
        char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
        out.write(b, 2);
    };
    std::uint32_t data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
    out.write("RIFF", 4);
    put_u32(36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put_u32(16);
    put_u16(1);
    put_u16(1);
    put_u32(static_cast<std::uint32_t>(audio.sample_rate));
    put_u32(static_cast<std::uint32_t>(audio.sample_rate * 2));
    put_u16(2);
    put_u16(16);
    out.write("data", 4);
    put_u32(data_bytes);
    for (double s : audio.samples) {
        double clamped = std::clamp(s, -1.0, 32767.0 / 32768.0);
        std::int16_t v = static_cast<std::int16_t>(std::lround(clamped * 32768.0));
        put_u16(static_cast<std::uint16_t>(v));
    }
}

FrameSeries log_energy(const Audio& audio, const ExtractOptions& options) {
    if (audio.samples.empty()) throw std::invalid_argument("log_energy: empty audio");
    if (audio.sample_rate < 8000) throw std::invalid_argument("log_energy: sample rate below 8 kHz");
    Framing f = make_framing(audio, options.frame_shift, options.energy_window);
    auto window = hann_window(f.window);

    FrameSeries out;
    out.frame_shift = options.frame_shift;
    out.values.resize(f.count);
    for (std::size_t k = 0; k < f.count; ++k) {
        auto frame = frame_samples(audio, f, k);
        double energy = 0.0;
        for (std::size_t i = 0; i < f.window; ++i) {
            double x = window[i] * frame[i];
            energy += x * x + kEnergyEpsilon;
        }
        out.values[k] = std::log(energy);
    }
    return out;
}

std::pair<FrameSeries, VoicingMask> autocorr_f0(const Audio& audio, const PitchRange& range,
                                                const ExtractOptions& options) {
    if (audio.samples.empty()) throw std::invalid_argument("autocorr_f0: empty audio");
    const double sr = static_cast<double>(audio.sample_rate);
    if (!(range.f_min > 0 && range.f_min < range.f_max))
        throw std::invalid_argument("autocorr_f0: invalid pitch range");
    if (sr < 8.0 * range.f_max)
        throw std::invalid_argument("autocorr_f0: sample rate too low for requested pitch range");

    Framing f = make_framing(audio, options.frame_shift, options.f0_window);
    auto window = hann_window(f.window);
    const std::size_t lag_min = static_cast<std::size_t>(std::ceil(sr / range.f_max));
    const std::size_t lag_max =
        std::min(static_cast<std::size_t>(std::floor(sr / range.f_min)), f.window - 2);
    if (lag_min >= lag_max) throw std::invalid_argument("autocorr_f0: window too short for pitch range");

    FrameSeries track;
    track.frame_shift = options.frame_shift;
    track.values.assign(f.count, 0.0);
    VoicingMask mask(f.count, false);

    std::vector<double> energies(f.count);
    std::vector<double> best_corr(f.count, 0.0);
    std::vector<double> best_f0(f.count, 0.0);
    std::vector<double> zcr(f.count, 0.0);

    for (std::size_t k = 0; k < f.count; ++k) {
        auto frame = frame_samples(audio, f, k);

        double energy = 0.0;
        std::size_t crossings = 0;
        for (std::size_t i = 0; i < f.window; ++i) {
            energy += frame[i] * frame[i];
            if (i > 0 && (frame[i - 1] >= 0.0) != (frame[i] >= 0.0)) ++crossings;
        }
        energies[k] = energy;
        zcr[k] = static_cast<double>(crossings) / static_cast<double>(f.window - 1);

        for (std::size_t i = 0; i < f.window; ++i) frame[i] *= window[i];
        double r0 = 0.0;
        for (double x : frame) r0 += x * x;
        if (r0 <= 1e-12) continue;

        auto corr_at = [&](std::size_t lag) {
            double r = 0.0;
            for (std::size_t i = 0; i + lag < f.window; ++i) r += frame[i] * frame[i + lag];
            return r / r0;
        };

        double peak = -1.0;
        std::size_t peak_lag = lag_min;
        for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
            double r = corr_at(lag);
            if (r > peak) {
                peak = r;
                peak_lag = lag;
            }
        }
        best_corr[k] = peak;

        // parabolic refinement of the peak lag
        double lag_refined = static_cast<double>(peak_lag);
        if (peak_lag > lag_min && peak_lag < lag_max) {
            double rl = corr_at(peak_lag - 1), rc = peak, rr = corr_at(peak_lag + 1);
            double denom = rl - 2.0 * rc + rr;
            if (std::abs(denom) > 1e-12) lag_refined += 0.5 * (rl - rr) / denom;
        }
        best_f0[k] = std::clamp(sr / lag_refined, range.f_min, range.f_max);
    }

    std::vector<double> sorted_energy = energies;
    std::sort(sorted_energy.begin(), sorted_energy.end());
    // 10% relative slack keeps near-constant-energy utterances from losing
    // the frames that happen to sit just under their own percentile
    double gate = 0.9 * sorted_energy[static_cast<std::size_t>(
                            options.voicing_energy_percentile * static_cast<double>(f.count - 1))];
    // absolute floor so digital silence never counts as voiced
    gate = std::max(gate, 1e-9 * static_cast<double>(f.window));

    for (std::size_t k = 0; k < f.count; ++k) {
        bool voiced = best_corr[k] >= options.voicing_autocorr_min && energies[k] >= gate &&
                      zcr[k] < options.voicing_zcr_max;
        if (voiced) {
            track.values[k] = best_f0[k];
            mask[k] = true;
        }
    }
    return {std::move(track), std::move(mask)};
}

}  // namespace prosowave
