#include "prosowave/annotate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace prosowave {

FeatureSet FeatureSet::parse(const std::string& spec) {
    FeatureSet fs{false, false, false};
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "f0") fs.f0 = true;
        else if (item == "en" || item == "energy") fs.energy = true;
        else if (item == "dur" || item == "duration") fs.duration = true;
        else if (!item.empty())
            throw std::invalid_argument("unknown feature '" + item + "' (expected f0,en,dur)");
    }
    if (!fs.any()) throw std::invalid_argument("feature set must not be empty");
    return fs;
}

std::string FeatureSet::to_string() const {
    std::string out;
    if (f0) out += "f0";
    if (energy) out += out.empty() ? "en" : "_en";
    if (duration) out += out.empty() ? "dur" : "_dur";
    return out;
}

ScaleSelection ScaleSelection::from_word_scale(double a_w, int band_octaves, double ratio) {
    if (a_w <= 0) throw std::invalid_argument("word scale must be positive");
    ScaleSelection sel;
    sel.word_scale = a_w;
    int count = 2 * band_octaves + 1;  // inclusive endpoints at half-octave spacing
    sel.prominence_grid = ScaleGrid{a_w / 2.0, count, ratio};
    sel.boundary_grid = ScaleGrid{a_w, count, ratio};
    return sel;
}

double word_scale(const WordAlignment& words) {
    words.validate();
    auto idx = words.word_indices();
    double span = words.entries[idx.back()].end - words.entries[idx.front()].start;
    if (span <= 0) throw std::invalid_argument("word_scale: zero utterance duration");
    return span / static_cast<double>(idx.size());
}

double word_scale(const Utterance& utt) { return word_scale(utt.words); }

namespace {

enum class DurationMode { value, derivative };

FrameSeries composite_signal(const Utterance& utt, const AnnotateOptions& opt, DurationMode mode) {
    if (!opt.features.any()) throw std::invalid_argument("feature set must not be empty");
    std::vector<FrameSeries> tracks;
    if (opt.features.f0) tracks.push_back(fill_f0(utt.f0, utt.voicing, opt.f0_fill));
    if (opt.features.energy)
        tracks.push_back(opt.gap_fill_energy ? fill_gain(utt.energy, opt.gain_family) : utt.energy);
    if (opt.features.duration) {
        FrameSeries dur = duration_signal_on_grid(utt.words, utt.f0.frame_shift,
                                                  utt.f0.start_time, utt.f0.size());
        tracks.push_back(mode == DurationMode::value ? dur : duration_derivative(dur));
    }
    return combine(tracks);
}

struct WordSpan {
    std::string label;
    double start, end;
    double midpoint() const { return 0.5 * (start + end); }
};

std::vector<WordSpan> word_spans(const WordAlignment& alignment) {
    std::vector<WordSpan> out;
    for (const auto& e : alignment.entries)
        if (e.kind == EntryKind::word) out.push_back({e.label, e.start, e.end});
    return out;
}

}  // namespace

FrameSeries prominence_signal(const Utterance& utt, const AnnotateOptions& options) {
    return composite_signal(utt, options, DurationMode::value);
}

FrameSeries boundary_signal(const Utterance& utt, const AnnotateOptions& options) {
    return composite_signal(utt, options, DurationMode::derivative);
}

std::vector<WordProsody> annotate_words(const Utterance& utt, const AnnotateOptions& options) {
    utt.validate();
    const double a_w =
        options.word_scale_override > 0 ? options.word_scale_override : word_scale(utt);
    ScaleSelection bands = ScaleSelection::from_word_scale(a_w, options.band_octaves, options.ratio);

    FrameSeries prom = prominence_signal(utt, options);
    FrameSeries bound = boundary_signal(utt, options);
    auto peak_lines = maxima_lines(transform(prom, bands.prominence_grid), options.link);
    auto valley_lines = minima_lines(transform(bound, bands.boundary_grid), options.link);

    const auto spans = word_spans(utt.words);
    const double utt_end = utt.words.span_end();
    std::vector<WordProsody> out(spans.size());

    // Strongest peak line anchored inside each word.
    for (std::size_t w = 0; w < spans.size(); ++w) {
        auto& rec = out[w];
        rec.word_index = static_cast<int>(w);
        rec.label = spans[w].label;
        for (const auto& line : peak_lines) {
            double t = line.anchor().time;
            if (t >= spans[w].start && t < spans[w].end && line.strength > rec.prominence) {
                rec.prominence = line.strength;
                rec.prom_anchor = t;
            }
        }
    }

    // Strongest valley between adjacent words' peak anchors (midpoint when
    // a word has no peak); the value attaches to the earlier word.
    for (std::size_t w = 0; w < spans.size(); ++w) {
        double from = out[w].prom_anchor ? *out[w].prom_anchor : spans[w].midpoint();
        double to = w + 1 < spans.size()
                        ? (out[w + 1].prom_anchor ? *out[w + 1].prom_anchor : spans[w + 1].midpoint())
                        : utt_end;
        for (const auto& line : valley_lines) {
            double t = line.anchor().time;
            if (t >= from && t <= to && line.strength > out[w].boundary) {
                out[w].boundary = line.strength;
                out[w].bound_anchor = t;
            }
        }
    }
    return out;
}

std::vector<WordProsody> raw_baseline(const Utterance& utt, const AnnotateOptions& options) {
    utt.validate();
    FrameSeries prom = prominence_signal(utt, options);
    FrameSeries bound = boundary_signal(utt, options);
    const auto spans = word_spans(utt.words);
    const double utt_end = utt.words.span_end();

    auto max_in = [](const FrameSeries& s, double from, double to) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < s.size(); ++k) {
            double t = s.time_at(k);
            if (t >= from && t < to) best = std::max(best, s.values[k]);
        }
        return std::isfinite(best) ? best : s.values[s.nearest_frame(from)];
    };
    auto min_in = [](const FrameSeries& s, double from, double to) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < s.size(); ++k) {
            double t = s.time_at(k);
            if (t >= from && t < to) best = std::min(best, s.values[k]);
        }
        return std::isfinite(best) ? best : s.values[s.nearest_frame(from)];
    };

    std::vector<WordProsody> out(spans.size());
    for (std::size_t w = 0; w < spans.size(); ++w) {
        auto& rec = out[w];
        rec.word_index = static_cast<int>(w);
        rec.label = spans[w].label;
        rec.prominence = max_in(prom, spans[w].start, spans[w].end);
        double to = w + 1 < spans.size() ? spans[w + 1].midpoint() : utt_end + 1e-9;
        rec.boundary = -min_in(bound, spans[w].midpoint(), to);
    }
    return out;
}

ThresholdResult binarize_threshold(const std::vector<double>& values,
                                   const std::vector<std::pair<double, bool>>& calibration) {
    if (calibration.size() < 2)
        throw std::invalid_argument("binarize_threshold: calibration set too small");
    bool has_pos = false, has_neg = false;
    for (const auto& [v, label] : calibration) (label ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw std::invalid_argument(
            "binarize_threshold: calibration subset contains a single class; use k-means mode");

    std::vector<std::pair<double, bool>> sorted = calibration;
    std::sort(sorted.begin(), sorted.end());

    auto accuracy_at = [&](double thr) {
        std::size_t correct = 0;
        for (const auto& [v, label] : sorted)
            if ((v >= thr) == label) ++correct;
        return static_cast<double>(correct) / static_cast<double>(sorted.size());
    };

    double best_thr = 0.0, best_acc = -1.0;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        double thr = 0.5 * (sorted[i].first + sorted[i + 1].first);
        double acc = accuracy_at(thr);
        if (acc > best_acc || (acc == best_acc && thr < best_thr)) {
            best_acc = acc;
            best_thr = thr;
        }
    }

    ThresholdResult res;
    res.threshold = best_thr;
    res.labels.reserve(values.size());
    for (double v : values) res.labels.push_back(v >= best_thr);
    return res;
}

KmeansResult binarize_kmeans(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("binarize_kmeans: need at least 2 values");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });
    if (values[order.front()] == values[order.back()])
        throw std::invalid_argument("binarize_kmeans: all values identical, single cluster");

    std::vector<double> prefix(n + 1, 0.0), prefix_sq(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double v = values[order[i]];
        prefix[i + 1] = prefix[i] + v;
        prefix_sq[i + 1] = prefix_sq[i] + v * v;
    }
    auto wcss = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
        double cnt = static_cast<double>(hi - lo);
        double sum = prefix[hi] - prefix[lo];
        return (prefix_sq[hi] - prefix_sq[lo]) - sum * sum / cnt;
    };

    std::size_t best_split = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 1; p < n; ++p) {
        double cost = wcss(0, p) + wcss(p, n);
        if (cost < best || (cost == best && p > best_split)) {
            best = cost;
            best_split = p;
        }
    }

    KmeansResult res;
    res.centroid_low = (prefix[best_split] - prefix[0]) / static_cast<double>(best_split);
    res.centroid_high = (prefix[n] - prefix[best_split]) / static_cast<double>(n - best_split);
    res.labels.assign(n, false);
    for (std::size_t i = best_split; i < n; ++i) res.labels[order[i]] = true;
    return res;
}

}  // namespace prosowave
