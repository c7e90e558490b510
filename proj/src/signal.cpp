#include "prosowave/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prosowave {

std::size_t FrameSeries::nearest_frame(double t) const {
    if (values.empty()) return 0;
    double k = std::round((t - start_time) / frame_shift);
    if (k < 0) return 0;
    if (k >= static_cast<double>(values.size())) return values.size() - 1;
    return static_cast<std::size_t>(k);
}

EntryKind parse_entry_kind(const std::string& s) {
    if (s == "word") return EntryKind::word;
    if (s == "pause") return EntryKind::pause;
    if (s == "breath") return EntryKind::breath;
    throw std::invalid_argument("unknown alignment entry kind: '" + s + "'");
}

const char* to_string(EntryKind k) {
    switch (k) {
        case EntryKind::word: return "word";
        case EntryKind::pause: return "pause";
        case EntryKind::breath: return "breath";
    }
    return "word";
}

std::vector<std::size_t> WordAlignment::word_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].kind == EntryKind::word) out.push_back(i);
    return out;
}

double WordAlignment::span_start() const {
    if (entries.empty()) throw std::invalid_argument("empty alignment");
    return entries.front().start;
}

double WordAlignment::span_end() const {
    if (entries.empty()) throw std::invalid_argument("empty alignment");
    return entries.back().end;
}

void WordAlignment::validate() const {
    if (entries.empty()) throw std::invalid_argument("alignment has no entries");
    bool has_word = false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (!(e.end > e.start))
            throw std::invalid_argument("alignment entry " + std::to_string(i) +
                                        " ('" + e.label + "') has end <= start");
        if (i > 0 && entries[i - 1].end > e.start + 1e-9)
            throw std::invalid_argument("alignment entries " + std::to_string(i - 1) + " and " +
                                        std::to_string(i) + " overlap");
        if (e.kind == EntryKind::word) has_word = true;
    }
    if (!has_word) throw std::invalid_argument("alignment contains no word entry");
}

void Utterance::validate() const {
    words.validate();
    if (f0.values.empty() || energy.values.empty())
        throw std::invalid_argument("utterance '" + id + "' has an empty track");
    if (std::abs(f0.frame_shift - energy.frame_shift) > 1e-12)
        throw std::invalid_argument("utterance '" + id + "' has mismatched frame shifts");
    if (voicing.size() != f0.size())
        throw std::invalid_argument("utterance '" + id + "' voicing mask length mismatch");
    double cover = f0.start_time + static_cast<double>(f0.size()) * f0.frame_shift;
    double cover_en = energy.start_time + static_cast<double>(energy.size()) * energy.frame_shift;
    double needed = words.span_end();
    if (cover + 1e-9 < needed || cover_en + 1e-9 < needed)
        throw std::invalid_argument("utterance '" + id + "' tracks do not cover the alignment span");
    if (refs && refs->size() != words.word_count())
        throw std::invalid_argument("utterance '" + id + "' reference label count mismatch");
}

FrameSeries normalize(const FrameSeries& series) {
    const auto& v = series.values;
    if (v.size() < 2)
        throw std::invalid_argument("normalize requires at least 2 frames");
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());

    FrameSeries out = series;
    if (var < 1e-12) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        return out;
    }
    double inv_sd = 1.0 / std::sqrt(var);
    for (double& x : out.values) x = (x - mean) * inv_sd;
    return out;
}

FrameSeries combine(const std::vector<FrameSeries>& tracks) {
    if (tracks.empty()) throw std::invalid_argument("combine requires at least one track");
    const std::size_t n = tracks.front().size();
    const double shift = tracks.front().frame_shift;
    for (const auto& t : tracks) {
        if (t.size() != n) throw std::invalid_argument("combine: track lengths differ");
        if (std::abs(t.frame_shift - shift) > 1e-12)
            throw std::invalid_argument("combine: frame shifts differ");
    }
    FrameSeries sum = tracks.front();
    std::fill(sum.values.begin(), sum.values.end(), 0.0);
    for (const auto& t : tracks) {
        FrameSeries norm = normalize(t);
        for (std::size_t k = 0; k < n; ++k) sum.values[k] += norm.values[k];
    }
    return normalize(sum);
}

}  // namespace prosowave
