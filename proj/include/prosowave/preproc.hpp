#ifndef PROSOWAVE_PREPROC_HPP
#define PROSOWAVE_PREPROC_HPP

#include "prosowave/signal.hpp"

namespace prosowave {

/// Gaussian smoothing kernels are truncated at +-3.5 sigma, matching the
/// effective support used for the wavelet kernels.
inline constexpr double kKernelTruncationSigma = 3.5;

/// Family of Gaussian smoothing kernels with geometrically shrinking widths:
/// member i has standard deviation w_max^((n-i)/n) * w_min^(-i/n) frames
/// (w_max converted from seconds), so width runs from w_max down to 1/w_min.
struct SmoothingFamily {
    double w_max = 0.100;   // seconds
    double w_min = 1.0;     // frames
    int n = 100;

    /// Kernel standard deviations in frames, widest first, n+1 members.
    std::vector<double> widths_frames(double frame_shift) const;
};

/// Gaussian smoothing with kernel mass renormalized at the signal edges,
/// so output values stay within [min(input), max(input)].
FrameSeries gaussian_smooth(const FrameSeries& series, double sigma_frames);

/// Iterated maximum-with-smoothed recursion that lifts silent gaps:
/// out_0 = max{g, smooth_0(g)}, out_i = max{g, smooth_i(out_{i-1})}.
/// Pointwise, input <= output <= max(input).
FrameSeries fill_gain(const FrameSeries& gain, const SmoothingFamily& family = {});

struct F0FillOptions {
    SmoothingFamily fill{0.100, 1.0, 200};
    SmoothingFamily final_pass{0.025, 1.0, 50};
    bool final_smoothing = true;
    /// Value returned (as a constant signal) when no frame is voiced.
    double fallback_value = 1.0;
};

/// Same recursion as fill_gain but restricted to unvoiced frames: voiced
/// frames keep their original values throughout the recursion. The result
/// is then passed through the gain recursion once more with a narrower
/// family to remove perturbation around the gaps (disable with
/// final_smoothing=false to observe the raw recursion output).
FrameSeries fill_f0(const FrameSeries& f0, const VoicingMask& voiced,
                    const F0FillOptions& options = {});

/// Continuous duration signal over the word span: a natural cubic spline
/// through the (word midpoint, word duration) knots, sampled at frame_shift
/// from the first word boundary to the last. Pause/breath entries contribute
/// no knots; inside their spans the nearest word's duration is held.
FrameSeries duration_signal(const WordAlignment& words, double frame_shift);

/// Same spline evaluated on an arbitrary frame grid (used to match the
/// acoustic tracks of an utterance).
FrameSeries duration_signal_on_grid(const WordAlignment& words, double frame_shift,
                                    double start_time, std::size_t n_frames);

/// Central finite difference, one-sided at the edges. Length >= 3 required.
FrameSeries duration_derivative(const FrameSeries& duration);

}  // namespace prosowave

#endif
