#ifndef PROSOWAVE_IO_HPP
#define PROSOWAVE_IO_HPP

#include <string>
#include <vector>

#include "prosowave/signal.hpp"

namespace prosowave {

enum class TrackFormat { auto_detect, value_per_line, time_value };

/// Reads a track file: one real per line, or two-column "time<TAB>value".
/// For the two-column form the frame shift is derived from the time stamps
/// (which must be uniform); otherwise `frame_shift` applies.
/// Rejects NaN/Inf and malformed lines with the offending line number.
FrameSeries read_track(const std::string& path,
                       TrackFormat format = TrackFormat::auto_detect,
                       double frame_shift = 0.005);

void write_track(const std::string& path, const FrameSeries& series);

/// TSV rows "start_sec<TAB>end_sec<TAB>label<TAB>kind", kind in {word,pause,breath}.
WordAlignment read_alignment(const std::string& path);
void write_alignment(const std::string& path, const WordAlignment& alignment);

/// TSV rows "word_index<TAB>prominent(0/1)<TAB>boundary_after(0/1)".
ReferenceLabels read_refs(const std::string& path);
void write_refs(const std::string& path, const ReferenceLabels& refs);

/// TSV rows "word_index<TAB>label<TAB>prominence<TAB>boundary<TAB>prom_binary<TAB>bound_binary"
/// with six decimal places on the continuous values.
void write_word_prosody(const std::string& path, const std::vector<WordProsody>& records);
std::vector<WordProsody> read_word_prosody(const std::string& path);

std::string word_prosody_to_string(const std::vector<WordProsody>& records);

/// Splits "key=value,key=value" track specs used in manifests, and derives
/// a voicing mask from an f0 track (frames with value 0 are unvoiced).
VoicingMask voicing_from_f0(const FrameSeries& f0);

}  // namespace prosowave

#endif
