#include "prosowave/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace prosowave {

Metrics metrics(const std::vector<bool>& pred, const std::vector<bool>& ref) {
    if (pred.size() != ref.size() || pred.empty())
        throw std::invalid_argument("metrics: prediction/reference length mismatch");
    Metrics m;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] && ref[i]) ++m.confusion.tp;
        else if (pred[i] && !ref[i]) ++m.confusion.fp;
        else if (!pred[i] && ref[i]) ++m.confusion.fn;
        else ++m.confusion.tn;
    }
    const auto& c = m.confusion;
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    m.precision = c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
    m.recall = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
    m.f1 = m.precision + m.recall > 0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

double majority_baseline(const std::vector<bool>& refs) {
    if (refs.empty()) throw std::invalid_argument("majority_baseline: empty labels");
    double pos = static_cast<double>(std::count(refs.begin(), refs.end(), true)) /
                 static_cast<double>(refs.size());
    return std::max(pos, 1.0 - pos);
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest " + path);
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty() || std::filesystem::path(p).is_absolute()) return p;
        return (base / p).string();
    };

    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, '\t')) cols.push_back(col);
        if (cols.size() < 3 || cols.size() > 4)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 3 or 4 tab-separated fields");
        ManifestEntry e;
        e.id = cols[0];
        if (cols[1].find('=') == std::string::npos) {
            e.inputs["wav"] = resolve(cols[1]);
        } else {
            std::stringstream ps(cols[1]);
            std::string pair;
            while (std::getline(ps, pair, ',')) {
                auto eq = pair.find('=');
                if (eq == std::string::npos)
                    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                             ": malformed track spec '" + pair + "'");
                std::string key = pair.substr(0, eq);
                if (key != "f0" && key != "en" && key != "wav")
                    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                             ": unknown track key '" + key + "'");
                e.inputs[key] = resolve(pair.substr(eq + 1));
            }
        }
        e.alignment_path = resolve(cols[2]);
        if (cols.size() == 4) e.refs_path = resolve(cols[3]);
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw std::runtime_error(path + ": empty manifest");
    return entries;
}

Utterance load_utterance(const ManifestEntry& entry, const Config& config) {
    Utterance utt;
    utt.id = entry.id;
    if (entry.inputs.count("wav")) {
        Audio audio = read_wav(entry.inputs.at("wav"));
        auto opts = config.extract_options();
        utt.energy = log_energy(audio, opts);
        auto [f0, mask] = autocorr_f0(audio, config.pitch_range(config.pitch_default), opts);
        utt.f0 = std::move(f0);
        utt.voicing = std::move(mask);
    } else {
        if (!entry.inputs.count("f0") || !entry.inputs.count("en"))
            throw std::runtime_error("utterance '" + entry.id + "' needs f0 and en tracks or a wav");
        utt.f0 = read_track(entry.inputs.at("f0"), config.track_format, config.frame_shift);
        utt.energy = read_track(entry.inputs.at("en"), config.track_format, config.frame_shift);
        utt.voicing = voicing_from_f0(utt.f0);
    }
    std::size_t n = std::min(utt.f0.size(), utt.energy.size());
    utt.f0.values.resize(n);
    utt.voicing.resize(n);
    utt.energy.values.resize(n);

    utt.words = read_alignment(entry.alignment_path);
    if (!entry.refs_path.empty()) utt.refs = read_refs(entry.refs_path);
    utt.validate();
    return utt;
}

namespace {

struct CorpusWords {
    // flattened per-word values in manifest order
    std::vector<double> loma_prom, loma_bound, raw_prom, raw_bound;
    std::vector<int> ref_prom, ref_bound;  // -1 when unlabeled
};

std::vector<bool> binarize_corpus(const std::vector<double>& values, const std::vector<int>& refs,
                                  const Config& config, double* threshold_out) {
    if (config.binarize == BinarizeMode::kmeans) {
        if (threshold_out) *threshold_out = 0.0;
        return binarize_kmeans(values).labels;
    }
    std::vector<std::size_t> labeled;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (refs[i] >= 0) labeled.push_back(i);
    if (labeled.size() < 2)
        throw std::runtime_error("threshold binarization needs reference labels (use kmeans mode)");
    std::size_t take = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(config.calib_fraction *
                                              static_cast<double>(labeled.size()))));
    take = std::min(take, labeled.size());
    if (config.calib_selection == CalibSelection::random) {
        std::mt19937_64 gen(config.calib_seed);
        std::shuffle(labeled.begin(), labeled.end(), gen);
        std::sort(labeled.begin(), labeled.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::vector<std::pair<double, bool>> calib;
    for (std::size_t i = 0; i < take; ++i)
        calib.emplace_back(values[labeled[i]], refs[labeled[i]] == 1);
    auto res = binarize_threshold(values, calib);
    if (threshold_out) *threshold_out = res.threshold;
    return res.labels;
}

Metrics score(const std::vector<bool>& pred, const std::vector<int>& refs) {
    std::vector<bool> p, r;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (refs[i] < 0) continue;
        p.push_back(pred[i]);
        r.push_back(refs[i] == 1);
    }
    return metrics(p, r);
}

void render_task(std::ostringstream& out, const char* name, const TaskReport& task, bool has_refs) {
    char buf[160];
    out << "== " << name << " ==\n";
    out << "method        acc.%   F-score  prec.   rec.\n";
    if (has_refs) {
        std::snprintf(buf, sizeof(buf), "cwt-loma      %-7.1f %-8.2f %-7.2f %-7.2f\n",
                      100.0 * task.loma.accuracy, task.loma.f1, task.loma.precision,
                      task.loma.recall);
        out << buf;
        std::snprintf(buf, sizeof(buf), "raw-baseline  %-7.1f %-8.2f %-7.2f %-7.2f\n",
                      100.0 * task.raw.accuracy, task.raw.f1, task.raw.precision, task.raw.recall);
        out << buf;
        std::snprintf(buf, sizeof(buf), "majority      %-7.1f -        -       -\n",
                      100.0 * task.majority);
        out << buf;
    } else {
        out << "(no reference labels; metrics skipped)\n";
    }
    out << "\n";
}

}  // namespace

std::string CorpusReport::render() const {
    std::ostringstream out;
    out << "prosowave corpus report\n";
    out << "features: " << features << "\n";
    out << "binarization: " << binarize << "\n";
    out << "utterances: " << utterances << " (failures: " << failures << ")\n";
    out << "evaluated words: " << evaluated_words << "\n";
    if (binarize == "threshold") {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "thresholds: prominence %.6f, boundary %.6f\n",
                      prominence.threshold, boundary.threshold);
        out << buf;
    }
    out << "\n";
    render_task(out, "Prominence Detection", prominence, has_refs);
    render_task(out, "Boundary Detection", boundary, has_refs);
    return out.str();
}

CorpusReport run_corpus(const std::string& manifest_path, const Config& config,
                        const std::string& out_dir) {
    auto entries = read_manifest(manifest_path);
    std::filesystem::create_directories(out_dir);

    std::vector<Utterance> utterances;
    std::vector<const ManifestEntry*> loaded_entries;
    std::size_t failures = 0;
    for (const auto& entry : entries) {
        try {
            utterances.push_back(load_utterance(entry, config));
            loaded_entries.push_back(&entry);
        } catch (const std::exception& ex) {
            ++failures;
            std::cerr << "warning: skipping utterance '" << entry.id << "': " << ex.what() << "\n";
        }
    }

    AnnotateOptions opt = config.annotate_options();
    if (config.scale_estimation == ScaleEstimation::paragraph) {
        // pool the word scale over the whole manifest
        double span = 0.0, count = 0.0;
        for (const auto& utt : utterances) {
            auto idx = utt.words.word_indices();
            span += utt.words.entries[idx.back()].end - utt.words.entries[idx.front()].start;
            count += static_cast<double>(idx.size());
        }
        if (count > 0) opt.word_scale_override = span / count;
    }

    CorpusWords corpus;
    std::vector<std::vector<WordProsody>> loma_records, raw_records;
    for (std::size_t u = 0; u < utterances.size();) {
        const auto& utt = utterances[u];
        try {
            auto loma = annotate_words(utt, opt);
            auto raw = raw_baseline(utt, opt);
            for (std::size_t w = 0; w < loma.size(); ++w) {
                corpus.loma_prom.push_back(loma[w].prominence);
                corpus.loma_bound.push_back(loma[w].boundary);
                corpus.raw_prom.push_back(raw[w].prominence);
                corpus.raw_bound.push_back(raw[w].boundary);
                corpus.ref_prom.push_back(utt.refs ? ((*utt.refs)[w].prominent ? 1 : 0) : -1);
                corpus.ref_bound.push_back(utt.refs ? ((*utt.refs)[w].boundary_after ? 1 : 0) : -1);
            }
            loma_records.push_back(std::move(loma));
            raw_records.push_back(std::move(raw));
            ++u;
        } catch (const std::exception& ex) {
            ++failures;
            std::cerr << "warning: skipping utterance '" << utt.id << "': " << ex.what() << "\n";
            utterances.erase(utterances.begin() + static_cast<std::ptrdiff_t>(u));
            loaded_entries.erase(loaded_entries.begin() + static_cast<std::ptrdiff_t>(u));
        }
    }

    if (failures * 10 > entries.size())
        throw std::runtime_error("more than 10% of utterances failed (" +
                                 std::to_string(failures) + "/" + std::to_string(entries.size()) + ")");
    if (utterances.empty()) throw std::runtime_error("no utterance could be processed");

    CorpusReport report;
    report.features = opt.features.to_string();
    report.binarize = config.binarize == BinarizeMode::threshold ? "threshold" : "kmeans";
    report.utterances = utterances.size();
    report.failures = failures;

    auto loma_prom_bin =
        binarize_corpus(corpus.loma_prom, corpus.ref_prom, config, &report.prominence.threshold);
    auto loma_bound_bin =
        binarize_corpus(corpus.loma_bound, corpus.ref_bound, config, &report.boundary.threshold);
    auto raw_prom_bin = binarize_corpus(corpus.raw_prom, corpus.ref_prom, config, nullptr);
    auto raw_bound_bin = binarize_corpus(corpus.raw_bound, corpus.ref_bound, config, nullptr);

    // write per-utterance outputs with the corpus-level binary labels
    std::size_t cursor = 0;
    for (std::size_t u = 0; u < utterances.size(); ++u) {
        for (auto& rec : loma_records[u]) {
            rec.prom_binary = loma_prom_bin[cursor];
            rec.bound_binary = loma_bound_bin[cursor];
            ++cursor;
        }
        write_word_prosody((std::filesystem::path(out_dir) / (utterances[u].id + ".prosody.tsv")).string(),
                           loma_records[u]);
    }

    report.has_refs =
        std::any_of(corpus.ref_prom.begin(), corpus.ref_prom.end(), [](int r) { return r >= 0; });
    if (report.has_refs) {
        std::vector<bool> ref_prom, ref_bound;
        for (std::size_t i = 0; i < corpus.ref_prom.size(); ++i) {
            if (corpus.ref_prom[i] >= 0) ref_prom.push_back(corpus.ref_prom[i] == 1);
            if (corpus.ref_bound[i] >= 0) ref_bound.push_back(corpus.ref_bound[i] == 1);
        }
        report.evaluated_words = ref_prom.size();
        report.prominence.loma = score(loma_prom_bin, corpus.ref_prom);
        report.prominence.raw = score(raw_prom_bin, corpus.ref_prom);
        report.prominence.majority = majority_baseline(ref_prom);
        report.boundary.loma = score(loma_bound_bin, corpus.ref_bound);
        report.boundary.raw = score(raw_bound_bin, corpus.ref_bound);
        report.boundary.majority = majority_baseline(ref_bound);
    } else {
        report.evaluated_words = 0;
    }

    std::ofstream rf(std::filesystem::path(out_dir) / "report.txt");
    rf << report.render();
    return report;
}

}  // namespace prosowave
