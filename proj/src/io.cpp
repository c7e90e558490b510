#include "prosowave/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace prosowave {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_real(const std::string& tok, const std::string& path, std::size_t line_no) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        parse_fail(path, line_no, "not a number: '" + tok + "'");
    }
    if (pos != tok.size()) parse_fail(path, line_no, "trailing characters in number: '" + tok + "'");
    if (!std::isfinite(v)) parse_fail(path, line_no, "non-finite value: '" + tok + "'");
    return v;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

bool skippable(const std::string& line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) return c == '#';
    return true;
}

}  // namespace

FrameSeries read_track(const std::string& path, TrackFormat format, double frame_shift) {
    auto in = open_in(path);
    std::vector<double> times, values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto tok = tokens(line);
        if (format == TrackFormat::auto_detect)
            format = tok.size() >= 2 ? TrackFormat::time_value : TrackFormat::value_per_line;
        if (format == TrackFormat::value_per_line) {
            if (tok.size() != 1) parse_fail(path, line_no, "expected one value per line");
            values.push_back(parse_real(tok[0], path, line_no));
        } else {
            if (tok.size() != 2) parse_fail(path, line_no, "expected 'time value'");
            times.push_back(parse_real(tok[0], path, line_no));
            values.push_back(parse_real(tok[1], path, line_no));
        }
    }
    if (values.empty()) throw std::runtime_error(path + ": empty track");

    FrameSeries out;
    out.values = std::move(values);
    if (format == TrackFormat::time_value) {
        out.start_time = times.front();
        if (times.size() > 1) {
            double dt = times[1] - times[0];
            if (dt <= 0) throw std::runtime_error(path + ": time stamps not increasing");
            for (std::size_t i = 1; i < times.size(); ++i)
                if (std::abs(times[i] - times[i - 1] - dt) > 1e-6)
                    throw std::runtime_error(path + ":" + std::to_string(i + 1) +
                                             ": non-uniform time step");
            out.frame_shift = dt;
        } else {
            out.frame_shift = frame_shift;
        }
    } else {
        out.frame_shift = frame_shift;
    }
    if (out.frame_shift <= 0) throw std::runtime_error(path + ": frame shift must be positive");
    return out;
}

void write_track(const std::string& path, const FrameSeries& series) {
    auto out = open_out(path);
    char buf[64];
    for (double v : series.values) {
        std::snprintf(buf, sizeof(buf), "%.6f\n", v);
        out << buf;
    }
}

WordAlignment read_alignment(const std::string& path) {
    auto in = open_in(path);
    WordAlignment alignment;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto tok = tokens(line);
        if (tok.size() != 4) parse_fail(path, line_no, "expected 'start end label kind'");
        AlignmentEntry e;
        e.start = parse_real(tok[0], path, line_no);
        e.end = parse_real(tok[1], path, line_no);
        e.label = tok[2];
        try {
            e.kind = parse_entry_kind(tok[3]);
        } catch (const std::invalid_argument& ex) {
            parse_fail(path, line_no, ex.what());
        }
        alignment.entries.push_back(std::move(e));
    }
    try {
        alignment.validate();
    } catch (const std::invalid_argument& ex) {
        throw std::runtime_error(path + ": " + ex.what());
    }
    return alignment;
}

void write_alignment(const std::string& path, const WordAlignment& alignment) {
    auto out = open_out(path);
    char buf[128];
    for (const auto& e : alignment.entries) {
        std::snprintf(buf, sizeof(buf), "%.6f\t%.6f\t", e.start, e.end);
        out << buf << e.label << '\t' << to_string(e.kind) << '\n';
    }
}

ReferenceLabels read_refs(const std::string& path) {
    auto in = open_in(path);
    ReferenceLabels refs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto tok = tokens(line);
        if (tok.size() != 3) parse_fail(path, line_no, "expected 'word_index prominent boundary_after'");
        std::size_t idx = static_cast<std::size_t>(parse_real(tok[0], path, line_no));
        if (idx != refs.size())
            parse_fail(path, line_no, "word indices must be consecutive from 0");
        if ((tok[1] != "0" && tok[1] != "1") || (tok[2] != "0" && tok[2] != "1"))
            parse_fail(path, line_no, "labels must be 0 or 1");
        refs.push_back({tok[1] == "1", tok[2] == "1"});
    }
    if (refs.empty()) throw std::runtime_error(path + ": empty reference labels");
    return refs;
}

void write_refs(const std::string& path, const ReferenceLabels& refs) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < refs.size(); ++i)
        out << i << '\t' << (refs[i].prominent ? 1 : 0) << '\t'
            << (refs[i].boundary_after ? 1 : 0) << '\n';
}

std::string word_prosody_to_string(const std::vector<WordProsody>& records) {
    std::string out;
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%d\t%s\t%.6f\t%.6f\t%d\t%d\n", r.word_index,
                      r.label.c_str(), r.prominence, r.boundary, r.prom_binary ? 1 : 0,
                      r.bound_binary ? 1 : 0);
        out += buf;
    }
    return out;
}

void write_word_prosody(const std::string& path, const std::vector<WordProsody>& records) {
    auto out = open_out(path);
    out << word_prosody_to_string(records);
}

std::vector<WordProsody> read_word_prosody(const std::string& path) {
    auto in = open_in(path);
    std::vector<WordProsody> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto tok = tokens(line);
        if (tok.size() != 6) parse_fail(path, line_no, "expected 6 columns");
        WordProsody r;
        r.word_index = static_cast<int>(parse_real(tok[0], path, line_no));
        r.label = tok[1];
        r.prominence = parse_real(tok[2], path, line_no);
        r.boundary = parse_real(tok[3], path, line_no);
        r.prom_binary = tok[4] == "1";
        r.bound_binary = tok[5] == "1";
        records.push_back(std::move(r));
    }
    return records;
}

VoicingMask voicing_from_f0(const FrameSeries& f0) {
    VoicingMask mask(f0.size());
    for (std::size_t k = 0; k < f0.size(); ++k) mask[k] = f0.values[k] != 0.0;
    return mask;
}

}  // namespace prosowave
