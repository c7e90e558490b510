#ifndef PROSOWAVE_EVALUATE_HPP
#define PROSOWAVE_EVALUATE_HPP

#include <map>

#include "prosowave/config.hpp"

namespace prosowave {

struct Confusion {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    std::size_t total() const { return tp + fp + fn + tn; }
};

struct Metrics {
    Confusion confusion;
    double accuracy = 0.0;
    double precision = 0.0;  // 0 when tp+fp = 0
    double recall = 0.0;     // 0 when tp+fn = 0
    double f1 = 0.0;         // 0 when precision+recall = 0
};

Metrics metrics(const std::vector<bool>& pred, const std::vector<bool>& ref);

/// Frequency of the most common class.
double majority_baseline(const std::vector<bool>& refs);

/// Manifest row: "utt_id<TAB>audio_or_track_paths<TAB>alignment_path[<TAB>refs_path]".
/// The second field is either one .wav path or comma-separated key=path
/// pairs with keys f0 and en.
struct ManifestEntry {
    std::string id;
    std::map<std::string, std::string> inputs;
    std::string alignment_path;
    std::string refs_path;  // empty when absent
};

std::vector<ManifestEntry> read_manifest(const std::string& path);

/// Loads one utterance per its manifest entry, running the built-in
/// extractor when a wav is given. Tracks are truncated to a common length.
Utterance load_utterance(const ManifestEntry& entry, const Config& config);

struct TaskReport {
    Metrics loma;
    Metrics raw;
    double majority = 0.0;
    double threshold = 0.0;  // threshold mode only
};

struct CorpusReport {
    std::string features;
    std::string binarize;
    std::size_t utterances = 0;
    std::size_t evaluated_words = 0;
    std::size_t failures = 0;
    bool has_refs = false;
    TaskReport prominence;
    TaskReport boundary;

    /// Table-style text rendering (acc.%, F-score, prec., rec. columns).
    std::string render() const;
};

/// Full corpus run: annotate every utterance, binarize corpus-wide, write
/// per-utterance TSVs into out_dir plus report.txt, and score against the
/// reference labels when present. Failed utterances are logged and skipped;
/// more than 10% failures aborts the run.
CorpusReport run_corpus(const std::string& manifest_path, const Config& config,
                        const std::string& out_dir);

}  // namespace prosowave

#endif
