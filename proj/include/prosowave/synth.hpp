#ifndef PROSOWAVE_SYNTH_HPP
#define PROSOWAVE_SYNTH_HPP

#include <cstdint>
#include <string>

namespace prosowave {

/// Synthetic corpus generator: plants prominence bumps and boundary dips
/// with known word labels into f0/energy tracks plus word alignments, for
/// end-to-end testing without licensed speech data.
struct SynthOptions {
    std::size_t utterances = 50;
    double snr_db = 10.0;
    std::uint64_t seed = 1;
    double frame_shift = 0.005;
    int words_min = 8;
    int words_max = 14;
};

/// Writes {id}.f0/.en/.align/.refs files plus manifest.tsv into out_dir;
/// returns the manifest path. Deterministic for a given seed.
std::string generate_corpus(const std::string& out_dir, const SynthOptions& options = {});

}  // namespace prosowave

#endif
