#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "prosowave/evaluate.hpp"
#include "prosowave/synth.hpp"

using namespace prosowave;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string features;
    std::string gap_fill_energy;
    std::string binarize;
    std::string scale_estimation;
    double calib_fraction = -1.0;

    void add_to(CLI::App& app) {
        app.add_option("--config", config_path, "key=value config file");
        app.add_option("--features", features, "comma list from f0,en,dur");
        app.add_option("--gap-fill-energy", gap_fill_energy, "on|off")
            ->check(CLI::IsMember({"on", "off"}));
        app.add_option("--binarize", binarize, "threshold|kmeans")
            ->check(CLI::IsMember({"threshold", "kmeans"}));
        app.add_option("--calib-fraction", calib_fraction, "labeled fraction for threshold search");
        app.add_option("--scale-estimation", scale_estimation, "utterance|paragraph")
            ->check(CLI::IsMember({"utterance", "paragraph"}));
    }

    Config to_config() const {
        Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
        if (!features.empty()) cfg.set("annotate.features", features);
        if (!gap_fill_energy.empty()) cfg.set("annotate.gap_fill_energy", gap_fill_energy);
        if (!binarize.empty()) cfg.set("annotate.binarize", binarize);
        if (calib_fraction >= 0) cfg.calib_fraction = calib_fraction;
        if (!scale_estimation.empty()) cfg.set("annotate.scale_estimation", scale_estimation);
        return cfg;
    }
};

int run_extract(const std::string& wav, const std::string& out_f0, const std::string& out_en,
                const std::string& pitch, double frame_shift, const CommonFlags& flags) {
    Config cfg = flags.to_config();
    if (frame_shift > 0) cfg.frame_shift = frame_shift;
    Audio audio = read_wav(wav);
    auto opts = cfg.extract_options();
    if (!out_en.empty()) write_track(out_en, log_energy(audio, opts));
    if (!out_f0.empty()) {
        auto [f0, mask] = autocorr_f0(audio, cfg.pitch_range(pitch.empty() ? cfg.pitch_default : pitch), opts);
        (void)mask;  // encoded as zero-valued frames in the track
        write_track(out_f0, f0);
    }
    return 0;
}

int run_annotate(const std::string& manifest, const std::string& out_dir, const CommonFlags& flags,
                 const std::string& dump_scalograms, const std::string& dump_lines) {
    Config cfg = flags.to_config();
    auto entries = read_manifest(manifest);
    std::filesystem::create_directories(out_dir);
    AnnotateOptions opt = cfg.annotate_options();

    // Continuous values first, corpus-level binarization afterwards.
    std::vector<std::vector<WordProsody>> records;
    std::vector<double> prom, bound;
    std::vector<int> ref_prom, ref_bound;
    std::vector<std::string> ids;
    for (const auto& entry : entries) {
        Utterance utt = load_utterance(entry, cfg);
        if (!dump_scalograms.empty()) {
            std::filesystem::create_directories(dump_scalograms);
            double a_w = word_scale(utt);
            auto bands = ScaleSelection::from_word_scale(a_w, opt.band_octaves, opt.ratio);
            write_scalogram((std::filesystem::path(dump_scalograms) / (utt.id + ".prom.sgram")).string(),
                            transform(prominence_signal(utt, opt), bands.prominence_grid));
            write_scalogram((std::filesystem::path(dump_scalograms) / (utt.id + ".bound.sgram")).string(),
                            transform(boundary_signal(utt, opt), bands.boundary_grid));
        }
        if (!dump_lines.empty()) {
            std::filesystem::create_directories(dump_lines);
            double a_w = word_scale(utt);
            auto bands = ScaleSelection::from_word_scale(a_w, opt.band_octaves, opt.ratio);
            write_lines((std::filesystem::path(dump_lines) / (utt.id + ".loma.tsv")).string(),
                        maxima_lines(transform(prominence_signal(utt, opt), bands.prominence_grid), opt.link));
            write_lines((std::filesystem::path(dump_lines) / (utt.id + ".loma-min.tsv")).string(),
                        minima_lines(transform(boundary_signal(utt, opt), bands.boundary_grid), opt.link));
        }
        auto recs = annotate_words(utt, opt);
        for (std::size_t w = 0; w < recs.size(); ++w) {
            prom.push_back(recs[w].prominence);
            bound.push_back(recs[w].boundary);
            ref_prom.push_back(utt.refs ? ((*utt.refs)[w].prominent ? 1 : 0) : -1);
            ref_bound.push_back(utt.refs ? ((*utt.refs)[w].boundary_after ? 1 : 0) : -1);
        }
        records.push_back(std::move(recs));
        ids.push_back(utt.id);
    }

    std::vector<bool> prom_bin, bound_bin;
    if (cfg.binarize == BinarizeMode::kmeans) {
        prom_bin = binarize_kmeans(prom).labels;
        bound_bin = binarize_kmeans(bound).labels;
    } else {
        auto head = [&](const std::vector<double>& v, const std::vector<int>& r) {
            std::vector<std::pair<double, bool>> calib;
            std::size_t labeled = 0;
            for (int x : r) labeled += x >= 0;
            std::size_t take = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::ceil(cfg.calib_fraction * static_cast<double>(labeled))));
            for (std::size_t i = 0; i < v.size() && calib.size() < take; ++i)
                if (r[i] >= 0) calib.emplace_back(v[i], r[i] == 1);
            return binarize_threshold(v, calib).labels;
        };
        prom_bin = head(prom, ref_prom);
        bound_bin = head(bound, ref_bound);
    }

    std::size_t cursor = 0;
    for (std::size_t u = 0; u < records.size(); ++u) {
        for (auto& rec : records[u]) {
            rec.prom_binary = prom_bin[cursor];
            rec.bound_binary = bound_bin[cursor];
            ++cursor;
        }
        write_word_prosody((std::filesystem::path(out_dir) / (ids[u] + ".prosody.tsv")).string(),
                           records[u]);
    }
    std::cout << "annotated " << records.size() << " utterance(s) -> " << out_dir << "\n";
    return 0;
}

int run_evaluate(const std::string& manifest, const std::string& out_dir, const CommonFlags& flags) {
    Config cfg = flags.to_config();
    CorpusReport report = run_corpus(manifest, cfg, out_dir);
    std::cout << report.render();
    return report.failures == 0 ? 0 : 1;
}

int run_synth(const std::string& out_dir, std::size_t count, double snr, std::uint64_t seed) {
    SynthOptions opt;
    opt.utterances = count;
    opt.snr_db = snr;
    opt.seed = seed;
    std::string manifest = generate_corpus(out_dir, opt);
    std::cout << "wrote " << count << " utterances, manifest: " << manifest << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prosowave: unsupervised prosodic prominence and boundary annotation"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* extract = app.add_subcommand("extract", "derive f0/energy tracks from a wav file");
    std::string wav, out_f0, out_en, pitch;
    double frame_shift = 0.0;
    extract->add_option("--wav", wav, "16-bit mono PCM wav")->required();
    extract->add_option("--out-f0", out_f0, "output f0 track (0 = unvoiced)");
    extract->add_option("--out-en", out_en, "output log-energy track");
    extract->add_option("--pitch-range", pitch, "male|female|min:max");
    extract->add_option("--frame-shift", frame_shift, "seconds, default 0.005");
    flags.add_to(*extract);

    auto* annotate = app.add_subcommand("annotate", "annotate a manifest of utterances");
    std::string manifest, out_dir = "annotations", dump_sg, dump_ln;
    annotate->add_option("--manifest", manifest, "utterance manifest TSV")->required();
    annotate->add_option("--out-dir", out_dir, "output directory");
    annotate->add_option("--dump-scalograms", dump_sg, "directory for scalogram dumps");
    annotate->add_option("--dump-lines", dump_ln, "directory for LoMA line dumps");
    flags.add_to(*annotate);

    auto* evaluate = app.add_subcommand("evaluate", "annotate and score against reference labels");
    std::string eval_manifest, eval_out = "evaluation";
    evaluate->add_option("--manifest", eval_manifest, "utterance manifest TSV")->required();
    evaluate->add_option("--out-dir", eval_out, "output directory");
    flags.add_to(*evaluate);

    auto* synth = app.add_subcommand("synth-corpus", "generate a synthetic test corpus");
    std::string synth_out = "synth_corpus";
    std::size_t count = 50;
    double snr = 10.0;
    std::uint64_t seed = 1;
    synth->add_option("--out-dir", synth_out, "output directory");
    synth->add_option("--utterances", count, "number of utterances");
    synth->add_option("--snr", snr, "track SNR in dB");
    synth->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) return run_extract(wav, out_f0, out_en, pitch, frame_shift, flags);
        if (annotate->parsed()) return run_annotate(manifest, out_dir, flags, dump_sg, dump_ln);
        if (evaluate->parsed()) return run_evaluate(eval_manifest, eval_out, flags);
        if (synth->parsed()) return run_synth(synth_out, count, snr, seed);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
