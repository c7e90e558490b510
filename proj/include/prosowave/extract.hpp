#ifndef PROSOWAVE_EXTRACT_HPP
#define PROSOWAVE_EXTRACT_HPP

#include <utility>

#include "prosowave/signal.hpp"

namespace prosowave {

struct PitchRange {
    double f_min = 70.0;
    double f_max = 300.0;

    static PitchRange male() { return {70.0, 300.0}; }
    static PitchRange female() { return {120.0, 400.0}; }
    static PitchRange parse(const std::string& spec);  // "male" | "female" | "min:max"
};

struct Audio {
    std::vector<double> samples;  // mono, in [-1, 1)
    int sample_rate = 16000;
};

/// 16-bit mono PCM RIFF/WAVE reader.
Audio read_wav(const std::string& path);
void write_wav(const std::string& path, const Audio& audio);

struct ExtractOptions {
    double frame_shift = 0.005;
    double energy_window = 0.025;
    double f0_window = 0.050;
    double voicing_autocorr_min = 0.3;
    double voicing_zcr_max = 0.25;       // crossings per sample
    double voicing_energy_percentile = 0.10;
};

/// Natural log of the Hann-windowed energy per 5 ms frame, with a 1e-10
/// per-sample floor so silence stays finite.
FrameSeries log_energy(const Audio& audio, const ExtractOptions& options = {});

/// Autocorrelation pitch tracker. Per frame, f0 = sample_rate / best lag
/// within [sr/f_max, sr/f_min] (parabolic refinement); a frame is voiced
/// when the normalized autocorrelation peak, the frame energy and the
/// zero-crossing rate all pass their gates. Unvoiced frames carry value 0.
std::pair<FrameSeries, VoicingMask> autocorr_f0(const Audio& audio, const PitchRange& range,
                                                const ExtractOptions& options = {});

}  // namespace prosowave

#endif
