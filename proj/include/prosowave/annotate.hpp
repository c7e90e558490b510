#ifndef PROSOWAVE_ANNOTATE_HPP
#define PROSOWAVE_ANNOTATE_HPP

#include <utility>

#include "prosowave/loma.hpp"
#include "prosowave/preproc.hpp"
#include "prosowave/signal.hpp"

namespace prosowave {

struct FeatureSet {
    bool f0 = true;
    bool energy = true;
    bool duration = true;

    bool any() const { return f0 || energy || duration; }
    static FeatureSet parse(const std::string& spec);  // "f0,en,dur"
    std::string to_string() const;
};

/// Analysis bands derived from the word scale a_W: the prominence band runs
/// from a_W/2 to 4 a_W, the boundary band from a_W to 8 a_W, both with
/// half-octave separation (seven scales over three octaves).
struct ScaleSelection {
    double word_scale = 0.0;
    ScaleGrid prominence_grid;
    ScaleGrid boundary_grid;

    static ScaleSelection from_word_scale(double a_w, int band_octaves = 3,
                                          double ratio = 1.4142135623730951);
};

/// Word scale in seconds: span of the word boundaries divided by word count.
double word_scale(const WordAlignment& words);
double word_scale(const Utterance& utt);

struct AnnotateOptions {
    FeatureSet features;
    bool gap_fill_energy = true;
    SmoothingFamily gain_family{0.100, 1.0, 100};
    F0FillOptions f0_fill;
    LinkOptions link;
    int band_octaves = 3;
    double ratio = 1.4142135623730951;
    /// When > 0, overrides the per-utterance word scale (paragraph mode).
    double word_scale_override = 0.0;
};

/// Composite prosodic signal: normalized sum of the preprocessed selected
/// features (gap-filled f0, gain, continuous duration).
FrameSeries prominence_signal(const Utterance& utt, const AnnotateOptions& options = {});

/// Same, but with the time derivative of the continuous duration.
FrameSeries boundary_signal(const Utterance& utt, const AnnotateOptions& options = {});

/// Full per-utterance annotation: the strongest peak line anchored inside
/// each word gives its prominence; the strongest valley line between
/// adjacent words' peak anchors (midpoint fallback) gives the boundary
/// value attached to the earlier word. Words with no qualifying line get 0.
std::vector<WordProsody> annotate_words(const Utterance& utt, const AnnotateOptions& options = {});

/// No-wavelet baseline: word maximum of the composite for prominence,
/// negated minimum between adjacent word midpoints for boundary.
std::vector<WordProsody> raw_baseline(const Utterance& utt, const AnnotateOptions& options = {});

struct ThresholdResult {
    double threshold = 0.0;
    std::vector<bool> labels;
};

/// Best accuracy split of the calibration subset: candidate thresholds are
/// the midpoints between consecutive sorted calibration values; ties go to
/// the lowest threshold. Labels are value >= threshold.
ThresholdResult binarize_threshold(const std::vector<double>& values,
                                   const std::vector<std::pair<double, bool>>& calibration);

struct KmeansResult {
    double centroid_low = 0.0;
    double centroid_high = 0.0;
    std::vector<bool> labels;  // true = higher-centroid cluster
};

/// Exact 1-D two-means: enumerates every split of the sorted values and
/// keeps the one with minimum within-cluster sum of squares (ties resolve
/// to the larger low cluster). Duplicated values straddling the split are
/// assigned by sorted order.
KmeansResult binarize_kmeans(const std::vector<double>& values);

}  // namespace prosowave

#endif
