#ifndef PROSOWAVE_CWT_HPP
#define PROSOWAVE_CWT_HPP

#include <string>

#include "prosowave/signal.hpp"

namespace prosowave {

/// Geometric scale grid: scale(j) = a0 * ratio^j, j = 0..count-1.
/// Half-octave separation (ratio = sqrt 2) throughout.
struct ScaleGrid {
    double a0 = 0.1;       // finest scale, seconds
    int count = 7;
    double ratio = 1.4142135623730951;

    double scale(int j) const;
    std::vector<double> scales() const;
    void validate() const;
};

/// Scales x frames matrix of wavelet coefficients.
struct Scalogram {
    std::vector<std::vector<double>> coeffs;
    ScaleGrid grid;
    double frame_shift = 0.005;
    double start_time = 0.0;

    std::size_t frames() const { return coeffs.empty() ? 0 : coeffs.front().size(); }
    double time_at(std::size_t k) const { return start_time + static_cast<double>(k) * frame_shift; }
};

/// Mexican hat mother wavelet, 2/(sqrt(3) pi^(1/4)) (1 - t^2) exp(-t^2/2).
double mexican_hat(double t);

/// Frequency at which the transform's response to a sinusoid peaks for a
/// given scale: sqrt(2.5) / (2 pi sigma).
double mexican_hat_center_frequency(double scale);

/// Continuous wavelet transform with periodic signal extension:
/// coeffs[j][k] = scale_j^(-1/2) * sum_m s[m] psi((m-k) dt / scale_j) dt.
/// Kernels are truncated at +-truncation_sigma units and re-centred to zero
/// mean so constants map to zero at every scale.
Scalogram transform(const FrameSeries& signal, const ScaleGrid& grid,
                    double truncation_sigma = 3.5);

/// Approximate inverse: c * sum_j ratio^(-j/2) * coeffs[j].
FrameSeries reconstruct(const Scalogram& sg, double c);

/// Least-squares reconstruction constant:
/// <original, reconstruct(sg,1)> / <reconstruct(sg,1), reconstruct(sg,1)>.
double fit_c(const FrameSeries& original, const Scalogram& sg);

/// TSV dump with a "scales: ...; frame_shift: ..." header, for plotting.
void write_scalogram(const std::string& path, const Scalogram& sg);

}  // namespace prosowave

#endif
