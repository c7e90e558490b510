#include "prosowave/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "prosowave/io.hpp"
#include "prosowave/signal.hpp"

namespace prosowave {

namespace {

/// splitmix64-based generator: stable across platforms and standard
/// libraries, unlike the std distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int a, int b) {  // inclusive
        return a + static_cast<int>(next() % static_cast<std::uint64_t>(b - a + 1));
    }
    bool bernoulli(double p) { return uniform() < p; }
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform(), v = uniform();
        while (u <= 1e-300) u = uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        double theta = 2.0 * std::numbers::pi * v;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct SynthWord {
    double start, end;
    bool prominent, boundary_after;
    double duration() const { return end - start; }
    double mid() const { return 0.5 * (start + end); }
};

double gaussian_bump(double t, double centre, double sigma) {
    double z = (t - centre) / sigma;
    return std::exp(-0.5 * z * z);
}

}  // namespace

std::string generate_corpus(const std::string& out_dir, const SynthOptions& opt) {
    if (opt.utterances == 0) throw std::invalid_argument("generate_corpus: need >= 1 utterance");
    if (opt.words_min < 2 || opt.words_max < opt.words_min)
        throw std::invalid_argument("generate_corpus: bad word count range");
    std::filesystem::create_directories(out_dir);
    Rng rng(opt.seed);
    const double dt = opt.frame_shift;

    std::string manifest_path = (std::filesystem::path(out_dir) / "manifest.tsv").string();
    std::ofstream manifest(manifest_path);
    if (!manifest) throw std::runtime_error("cannot write " + manifest_path);

    for (std::size_t u = 0; u < opt.utterances; ++u) {
        char id[32];
        std::snprintf(id, sizeof(id), "synth%03zu", u);

        // --- linguistic skeleton ----------------------------------------
        const int n_words = rng.uniform_int(opt.words_min, opt.words_max);
        std::vector<bool> prominent(static_cast<std::size_t>(n_words));
        std::vector<bool> phrase_final(static_cast<std::size_t>(n_words), false);
        for (auto&& p : prominent) p = rng.bernoulli(0.4);
        int w = 0;
        while (w < n_words) {
            int len = std::min(rng.uniform_int(3, 5), n_words - w);
            w += len;
            phrase_final[static_cast<std::size_t>(w - 1)] = true;
        }

        WordAlignment alignment;
        std::vector<SynthWord> words;
        double cursor = 0.0;
        if (rng.bernoulli(0.3)) {
            double pause = rng.uniform(0.10, 0.25);
            alignment.entries.push_back({"<p>", cursor, cursor + pause, EntryKind::pause});
            cursor += pause;
        }
        for (int i = 0; i < n_words; ++i) {
            const std::size_t wi = static_cast<std::size_t>(i);
            double dur = rng.uniform(0.22, 0.38);
            if (prominent[wi]) dur *= rng.uniform(1.30, 1.50);
            if (phrase_final[wi]) dur *= rng.uniform(1.15, 1.30);
            char label[16];
            std::snprintf(label, sizeof(label), "w%02d", i);
            alignment.entries.push_back({label, cursor, cursor + dur, EntryKind::word});
            words.push_back({cursor, cursor + dur, prominent[wi], phrase_final[wi]});
            cursor += dur;
            bool final_word = i == n_words - 1;
            if (phrase_final[wi] && (final_word || rng.bernoulli(0.8))) {
                double pause = rng.uniform(0.18, 0.35);
                EntryKind kind = rng.bernoulli(0.2) ? EntryKind::breath : EntryKind::pause;
                alignment.entries.push_back({"<p>", cursor, cursor + pause, kind});
                cursor += pause;
            }
        }
        const double utt_end = cursor;
        const std::size_t frames = static_cast<std::size_t>(std::ceil(utt_end / dt)) + 1;

        // --- voicing layout ----------------------------------------------
        VoicingMask voiced(frames, false);
        for (const auto& word : words) {
            double unvoiced_head = rng.bernoulli(0.5) ? rng.uniform(0.03, 0.08) : 0.0;
            for (std::size_t k = 0; k < frames; ++k) {
                double t = static_cast<double>(k) * dt;
                if (t >= word.start + unvoiced_head && t < word.end) voiced[k] = true;
            }
        }

        // --- structured tracks --------------------------------------------
        std::vector<double> f0(frames, 0.0), en(frames, -2.5);
        std::vector<double> phrase_start, phrase_end;
        {
            double ps = words.front().start;
            for (const auto& word : words) {
                if (word.boundary_after) {
                    phrase_start.push_back(ps);
                    phrase_end.push_back(word.end);
                    ps = word.end;
                }
            }
        }
        std::vector<double> bump_amp_f0(words.size()), bump_amp_en(words.size()),
            bump_sigma(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) {
            bump_amp_f0[i] = words[i].prominent ? rng.uniform(25.0, 40.0) : rng.uniform(3.0, 8.0);
            bump_amp_en[i] = words[i].prominent ? rng.uniform(0.8, 1.4) : rng.uniform(0.10, 0.35);
            bump_sigma[i] = words[i].duration() / 4.0;
        }
        std::vector<double> dip_amp(phrase_end.size());
        for (auto& a : dip_amp) a = rng.uniform(15.0, 25.0);

        for (std::size_t k = 0; k < frames; ++k) {
            double t = static_cast<double>(k) * dt;
            // phrase declination, reset at each phrase start
            double trend = 0.0;
            for (std::size_t p = 0; p < phrase_start.size(); ++p) {
                if (t >= phrase_start[p] && t < phrase_end[p]) {
                    double x = (t - phrase_start[p]) / (phrase_end[p] - phrase_start[p]);
                    trend = 15.0 - 35.0 * x;
                    break;
                }
            }
            double f = 120.0 + trend;
            double e = 0.0;
            for (std::size_t i = 0; i < words.size(); ++i) {
                double b = gaussian_bump(t, words[i].mid(), bump_sigma[i]);
                f += bump_amp_f0[i] * b;
                e += bump_amp_en[i] * b;
            }
            for (std::size_t p = 0; p < phrase_end.size(); ++p)
                f -= dip_amp[p] * gaussian_bump(t, phrase_end[p], 0.05);
            bool in_word = false;
            for (const auto& word : words)
                if (t >= word.start && t < word.end) { in_word = true; break; }
            f0[k] = f;
            en[k] = in_word ? 1.0 + e - 0.3 * (trend / 35.0) : -2.5;
        }

        // --- additive noise at the requested SNR -------------------------
        auto variance = [](const std::vector<double>& v) {
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            double var = 0.0;
            for (double x : v) var += (x - mean) * (x - mean);
            return var / static_cast<double>(v.size());
        };
        double noise_scale = std::pow(10.0, -opt.snr_db / 20.0);
        double f0_sd = std::sqrt(variance(f0)) * noise_scale;
        double en_sd = std::sqrt(variance(en)) * noise_scale;
        for (std::size_t k = 0; k < frames; ++k) {
            f0[k] += f0_sd * rng.normal();
            en[k] += en_sd * rng.normal();
            if (!voiced[k]) f0[k] = 0.0;  // unvoiced convention
            if (voiced[k] && f0[k] < 1.0) f0[k] = 1.0;
        }

        // --- write files ---------------------------------------------------
        FrameSeries f0_track{std::move(f0), dt, 0.0};
        FrameSeries en_track{std::move(en), dt, 0.0};
        ReferenceLabels refs;
        for (const auto& word : words) refs.push_back({word.prominent, word.boundary_after});

        std::string base = std::string(id);
        write_track((std::filesystem::path(out_dir) / (base + ".f0")).string(), f0_track);
        write_track((std::filesystem::path(out_dir) / (base + ".en")).string(), en_track);
        write_alignment((std::filesystem::path(out_dir) / (base + ".align")).string(), alignment);
        write_refs((std::filesystem::path(out_dir) / (base + ".refs")).string(), refs);
        manifest << base << "\tf0=" << base << ".f0,en=" << base << ".en\t" << base << ".align\t"
                 << base << ".refs\n";
    }
    return manifest_path;
}

}  // namespace prosowave
