#ifndef PROSOWAVE_CONFIG_HPP
#define PROSOWAVE_CONFIG_HPP

#include <cstdint>
#include <string>

#include "prosowave/annotate.hpp"
#include "prosowave/extract.hpp"
#include "prosowave/io.hpp"

namespace prosowave {

enum class BinarizeMode { threshold, kmeans };
enum class ScaleEstimation { utterance, paragraph };
enum class CalibSelection { head, random };

/// Runtime parameters, loadable from a "key=value" file ('#' comments).
/// Defaults follow the shipped configs/default.cfg.
struct Config {
    double frame_shift = 0.005;
    TrackFormat track_format = TrackFormat::auto_detect;

    // wavelet analysis
    double cwt_ratio = 1.4142135623730951;
    double cwt_truncation_sigma = 3.5;
    int cwt_band_octaves = 3;

    // line linking
    double loma_max_distance = 0.200;
    bool loma_fallback_other_side = false;

    // gap filling
    double gain_w_max = 0.100;
    int gain_n = 100;
    double f0_w_max = 0.100;
    int f0_n = 200;
    double f0_final_w_max = 0.025;
    int f0_final_n = 50;
    double w_min = 1.0;
    double f0_fallback = 1.0;

    // built-in extractor
    PitchRange pitch_male{70.0, 300.0};
    PitchRange pitch_female{120.0, 400.0};
    std::string pitch_default = "male";
    double extract_energy_window = 0.025;
    double extract_f0_window = 0.050;
    double voicing_autocorr_min = 0.3;
    double voicing_zcr_max = 0.25;
    double voicing_energy_percentile = 0.10;

    // annotation
    std::string features = "f0,en,dur";
    bool gap_fill_energy = true;
    BinarizeMode binarize = BinarizeMode::threshold;
    double calib_fraction = 0.1;
    CalibSelection calib_selection = CalibSelection::head;
    std::uint64_t calib_seed = 7;
    ScaleEstimation scale_estimation = ScaleEstimation::utterance;

    static Config load(const std::string& path);
    /// Applies one "key=value" assignment; unknown keys throw.
    void set(const std::string& key, const std::string& value);

    AnnotateOptions annotate_options() const;
    ExtractOptions extract_options() const;
    PitchRange pitch_range(const std::string& spec) const;
};

}  // namespace prosowave

#endif
