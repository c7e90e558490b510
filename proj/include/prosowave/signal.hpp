#ifndef PROSOWAVE_SIGNAL_HPP
#define PROSOWAVE_SIGNAL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace prosowave {

/// Uniformly sampled real-valued signal. Frame k sits at
/// start_time + k * frame_shift seconds.
struct FrameSeries {
    std::vector<double> values;
    double frame_shift = 0.005;
    double start_time = 0.0;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t k) const { return start_time + static_cast<double>(k) * frame_shift; }
    double end_time() const { return values.empty() ? start_time : time_at(values.size() - 1); }

    /// Index of the frame closest to time t, clamped to the valid range.
    std::size_t nearest_frame(double t) const;
};

/// Per-frame voicing decision paired with an f0 FrameSeries.
using VoicingMask = std::vector<bool>;

enum class EntryKind { word, pause, breath };

EntryKind parse_entry_kind(const std::string& s);
const char* to_string(EntryKind k);

struct AlignmentEntry {
    std::string label;
    double start = 0.0;
    double end = 0.0;
    EntryKind kind = EntryKind::word;
};

/// Time-stamped word intervals with pause/breath entries interleaved.
struct WordAlignment {
    std::vector<AlignmentEntry> entries;

    /// Indices into `entries` of the word-kind entries, in time order.
    std::vector<std::size_t> word_indices() const;
    std::size_t word_count() const { return word_indices().size(); }

    /// Span of the full alignment (first entry start, last entry end).
    double span_start() const;
    double span_end() const;

    /// Throws std::invalid_argument when entries overlap, are unsorted,
    /// have end <= start, or no word entry exists.
    void validate() const;
};

struct WordRef {
    bool prominent = false;
    bool boundary_after = false;
};

/// One record per word-kind alignment entry.
using ReferenceLabels = std::vector<WordRef>;

/// Per-word annotation result. Continuous prominence/boundary values are
/// >= 0 and exactly 0 when no line qualified; anchors are the finest-scale
/// times of the lines that produced the values.
struct WordProsody {
    int word_index = 0;
    std::string label;
    double prominence = 0.0;
    double boundary = 0.0;
    bool prom_binary = false;
    bool bound_binary = false;
    std::optional<double> prom_anchor;
    std::optional<double> bound_anchor;
};

struct Utterance {
    std::string id;
    FrameSeries f0;
    VoicingMask voicing;
    FrameSeries energy;
    WordAlignment words;
    std::optional<ReferenceLabels> refs;

    /// Checks the cross-track invariants: equal frame shift, voicing mask
    /// length, alignment validity and track coverage of the alignment span.
    void validate() const;
};

/// Zero mean, unit (population) variance. Inputs with variance < 1e-12
/// map to all zeros. Throws std::invalid_argument for length < 2.
FrameSeries normalize(const FrameSeries& series);

/// Pointwise sum of the normalized inputs, renormalized. All inputs must
/// share length and frame shift.
FrameSeries combine(const std::vector<FrameSeries>& tracks);

}  // namespace prosowave

#endif
