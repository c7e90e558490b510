#include "prosowave/config.hpp"

#include <fstream>
#include <stdexcept>

namespace prosowave {

namespace {

bool parse_bool(const std::string& v) {
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected on/off, got '" + v + "'");
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    Config cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key=value");
        try {
            cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const std::exception& ex) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + ex.what());
        }
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    if (key == "frame_shift") frame_shift = std::stod(value);
    else if (key == "track.format") {
        if (value == "auto") track_format = TrackFormat::auto_detect;
        else if (value == "lines") track_format = TrackFormat::value_per_line;
        else if (value == "tsv") track_format = TrackFormat::time_value;
        else throw std::invalid_argument("track.format must be auto, lines or tsv");
    }
    else if (key == "cwt.ratio") cwt_ratio = std::stod(value);
    else if (key == "cwt.truncation_sigma") cwt_truncation_sigma = std::stod(value);
    else if (key == "cwt.band_octaves") cwt_band_octaves = std::stoi(value);
    else if (key == "loma.max_distance") loma_max_distance = std::stod(value);
    else if (key == "loma.fallback_other_side") loma_fallback_other_side = parse_bool(value);
    else if (key == "gain.w_max") gain_w_max = std::stod(value);
    else if (key == "gain.n") gain_n = std::stoi(value);
    else if (key == "f0.w_max") f0_w_max = std::stod(value);
    else if (key == "f0.n") f0_n = std::stoi(value);
    else if (key == "f0.final.w_max") f0_final_w_max = std::stod(value);
    else if (key == "f0.final.n") f0_final_n = std::stoi(value);
    else if (key == "w_min") w_min = std::stod(value);
    else if (key == "f0.fallback") f0_fallback = std::stod(value);
    else if (key == "pitch.male") pitch_male = PitchRange::parse(value);
    else if (key == "pitch.female") pitch_female = PitchRange::parse(value);
    else if (key == "pitch.default") pitch_default = value;
    else if (key == "extract.energy_window") extract_energy_window = std::stod(value);
    else if (key == "extract.f0_window") extract_f0_window = std::stod(value);
    else if (key == "extract.voicing.autocorr_min") voicing_autocorr_min = std::stod(value);
    else if (key == "extract.voicing.zcr_max") voicing_zcr_max = std::stod(value);
    else if (key == "extract.voicing.energy_percentile") voicing_energy_percentile = std::stod(value);
    else if (key == "annotate.features") features = value;
    else if (key == "annotate.gap_fill_energy") gap_fill_energy = parse_bool(value);
    else if (key == "annotate.binarize") {
        if (value == "threshold") binarize = BinarizeMode::threshold;
        else if (value == "kmeans") binarize = BinarizeMode::kmeans;
        else throw std::invalid_argument("annotate.binarize must be threshold or kmeans");
    }
    else if (key == "annotate.calib_fraction") calib_fraction = std::stod(value);
    else if (key == "annotate.calib_selection") {
        if (value == "head") calib_selection = CalibSelection::head;
        else if (value == "random") calib_selection = CalibSelection::random;
        else throw std::invalid_argument("annotate.calib_selection must be head or random");
    }
    else if (key == "annotate.calib_seed") calib_seed = std::stoull(value);
    else if (key == "annotate.scale_estimation") {
        if (value == "utterance") scale_estimation = ScaleEstimation::utterance;
        else if (value == "paragraph") scale_estimation = ScaleEstimation::paragraph;
        else throw std::invalid_argument("annotate.scale_estimation must be utterance or paragraph");
    }
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

AnnotateOptions Config::annotate_options() const {
    AnnotateOptions opt;
    opt.features = FeatureSet::parse(features);
    opt.gap_fill_energy = gap_fill_energy;
    opt.gain_family = SmoothingFamily{gain_w_max, w_min, gain_n};
    opt.f0_fill.fill = SmoothingFamily{f0_w_max, w_min, f0_n};
    opt.f0_fill.final_pass = SmoothingFamily{f0_final_w_max, w_min, f0_final_n};
    opt.f0_fill.fallback_value = f0_fallback;
    opt.link.max_distance = loma_max_distance;
    opt.link.fallback_other_side = loma_fallback_other_side;
    opt.band_octaves = cwt_band_octaves;
    opt.ratio = cwt_ratio;
    return opt;
}

ExtractOptions Config::extract_options() const {
    ExtractOptions opt;
    opt.frame_shift = frame_shift;
    opt.energy_window = extract_energy_window;
    opt.f0_window = extract_f0_window;
    opt.voicing_autocorr_min = voicing_autocorr_min;
    opt.voicing_zcr_max = voicing_zcr_max;
    opt.voicing_energy_percentile = voicing_energy_percentile;
    return opt;
}

PitchRange Config::pitch_range(const std::string& spec) const {
    if (spec == "male") return pitch_male;
    if (spec == "female") return pitch_female;
    return PitchRange::parse(spec);
}

}  // namespace prosowave
