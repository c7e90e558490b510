#ifndef PROSOWAVE_LOMA_HPP
#define PROSOWAVE_LOMA_HPP

#include <string>

#include "prosowave/cwt.hpp"

namespace prosowave {

struct ExtremumPoint {
    double time = 0.0;      // seconds
    int scale_index = 0;    // j into the grid
    double amplitude = 0.0; // Ws at the point
    std::size_t frame = 0;
};

enum class Polarity { peak, valley };

/// Chain of scalogram extrema linked across adjacent scales, finest first.
struct LomaLine {
    std::vector<ExtremumPoint> points;
    double strength = 0.0;
    Polarity polarity = Polarity::peak;

    /// Finest-scale point of the line; its time is the line's anchor.
    const ExtremumPoint& anchor() const { return points.front(); }
};

struct LinkOptions {
    double max_distance = 0.200;     // seconds between linked extrema
    bool fallback_other_side = false;
};

/// Interior strict-left / non-strict-right local maxima; on plateaus the
/// leftmost frame wins. Endpoints are never maxima.
std::vector<ExtremumPoint> local_maxima(const std::vector<double>& row, double frame_shift,
                                        double start_time = 0.0, int scale_index = 0);

/// Weight of the term at scale index k in a line's cumulative sum:
/// 1 for k = 0, log(k+1) * ratio^(-k/2) otherwise.
double scale_weight(int scale_index, double ratio);

/// Weighted sum of a line's amplitudes with scale_weight coefficients.
double line_strength(const LomaLine& line, double ratio);

/// Links local maxima across scales from the finest level upward. Points are
/// processed in descending order of their cumulative weighted sums; each one
/// claims the nearest unclaimed maximum one scale up, searching right when
/// the cross-scale derivative at its position is non-negative and left
/// otherwise, within max_distance. Returns every maximal chain.
std::vector<LomaLine> link_lines(const Scalogram& sg, const LinkOptions& options = {});

/// link_lines with polarity peak (identical behaviour, explicit name).
std::vector<LomaLine> maxima_lines(const Scalogram& sg, const LinkOptions& options = {});

/// Lines of minimum amplitude: maxima lines of the negated scalogram,
/// marked as valleys. Strengths are computed on the negated coefficients,
/// so deeper valleys score higher.
std::vector<LomaLine> minima_lines(const Scalogram& sg, const LinkOptions& options = {});

/// TSV dump "line_id polarity strength k time amplitude" for plot overlays.
void write_lines(const std::string& path, const std::vector<LomaLine>& lines);

}  // namespace prosowave

#endif
