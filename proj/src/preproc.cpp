#include "prosowave/preproc.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace prosowave {

std::vector<double> SmoothingFamily::widths_frames(double frame_shift) const {
    if (w_max <= 0 || w_min <= 0 || n < 1)
        throw std::invalid_argument("smoothing family requires w_max > 0, w_min > 0, n >= 1");
    if (frame_shift <= 0) throw std::invalid_argument("frame shift must be positive");
    double w_max_frames = w_max / frame_shift;
    std::vector<double> widths(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(n);
        // geometric path from w_max (i=0) to 1/w_min (i=n)
        widths[static_cast<std::size_t>(i)] =
            std::pow(w_max_frames, 1.0 - t) * std::pow(w_min, -t);
    }
    return widths;
}

FrameSeries gaussian_smooth(const FrameSeries& series, double sigma_frames) {
    if (sigma_frames <= 0) throw std::invalid_argument("sigma must be positive");
    const auto& v = series.values;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
    const std::ptrdiff_t radius =
        static_cast<std::ptrdiff_t>(std::ceil(kKernelTruncationSigma * sigma_frames));

    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double mass = 0.0;
    for (std::ptrdiff_t m = -radius; m <= radius; ++m) {
        double w = std::exp(-0.5 * (static_cast<double>(m) / sigma_frames) *
                            (static_cast<double>(m) / sigma_frames));
        kernel[static_cast<std::size_t>(m + radius)] = w;
        mass += w;
    }
    for (double& w : kernel) w /= mass;

    FrameSeries out = series;
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        double acc = 0.0, wsum = 0.0;
        std::ptrdiff_t lo = std::max<std::ptrdiff_t>(-radius, -k);
        std::ptrdiff_t hi = std::min<std::ptrdiff_t>(radius, n - 1 - k);
        for (std::ptrdiff_t m = lo; m <= hi; ++m) {
            double w = kernel[static_cast<std::size_t>(m + radius)];
            acc += w * v[static_cast<std::size_t>(k + m)];
            wsum += w;
        }
        out.values[static_cast<std::size_t>(k)] = acc / wsum;
    }
    return out;
}

FrameSeries fill_gain(const FrameSeries& gain, const SmoothingFamily& family) {
    if (gain.values.empty()) throw std::invalid_argument("fill_gain: empty signal");
    auto widths = family.widths_frames(gain.frame_shift);
    FrameSeries current = gain;
    for (double sigma : widths) {
        FrameSeries smoothed = gaussian_smooth(current, sigma);
        for (std::size_t k = 0; k < gain.size(); ++k)
            current.values[k] = std::max(gain.values[k], smoothed.values[k]);
    }
    return current;
}

FrameSeries fill_f0(const FrameSeries& f0, const VoicingMask& voiced,
                    const F0FillOptions& options) {
    if (f0.values.empty()) throw std::invalid_argument("fill_f0: empty signal");
    if (voiced.size() != f0.size())
        throw std::invalid_argument("fill_f0: voicing mask length mismatch");

    bool any_voiced = std::find(voiced.begin(), voiced.end(), true) != voiced.end();
    if (!any_voiced) {
        std::cerr << "warning: fill_f0: all frames unvoiced, using fallback value "
                  << options.fallback_value << "\n";
        FrameSeries constant = f0;
        std::fill(constant.values.begin(), constant.values.end(), options.fallback_value);
        return options.final_smoothing ? fill_gain(constant, options.final_pass) : constant;
    }

    auto widths = options.fill.widths_frames(f0.frame_shift);
    FrameSeries current = f0;
    for (double sigma : widths) {
        FrameSeries smoothed = gaussian_smooth(current, sigma);
        for (std::size_t k = 0; k < f0.size(); ++k) {
            if (voiced[k])
                current.values[k] = f0.values[k];
            else
                current.values[k] = std::max(f0.values[k], smoothed.values[k]);
        }
    }
    if (options.final_smoothing) current = fill_gain(current, options.final_pass);
    return current;
}

namespace {

/// Natural cubic spline through (x_i, y_i): second derivatives solved with
/// the Thomas algorithm, zero curvature at both ends.
class NaturalSpline {
  public:
    NaturalSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
        const std::size_t n = x_.size();
        if (n < 2) return;
        if (n == 2) return;  // linear, second derivatives stay zero
        std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h0 = x_[i] - x_[i - 1];
            double h1 = x_[i + 1] - x_[i];
            diag[i] = (h0 + h1) / 3.0;
            upper[i] = h1 / 6.0;
            rhs[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        // forward sweep over interior rows (sub-diagonal is h0/6)
        for (std::size_t i = 2; i + 1 < n; ++i) {
            double h0 = x_[i] - x_[i - 1];
            double factor = (h0 / 6.0) / diag[i - 1];
            diag[i] -= factor * upper[i - 1];
            rhs[i] -= factor * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
            if (i == 1) break;
        }
    }

    /// Clamped evaluation: constant beyond the first/last knot.
    double operator()(double t) const {
        const std::size_t n = x_.size();
        if (n == 1) return y_[0];
        if (t <= x_.front()) return y_.front();
        if (t >= x_.back()) return y_.back();
        std::size_t i = static_cast<std::size_t>(
            std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) - 1;
        double h = x_[i + 1] - x_[i];
        double a = (x_[i + 1] - t) / h;
        double b = (t - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

  private:
    std::vector<double> x_, y_;
    std::vector<double> m_;
};

}  // namespace

FrameSeries duration_signal_on_grid(const WordAlignment& words, double frame_shift,
                                    double start_time, std::size_t n_frames) {
    words.validate();
    if (frame_shift <= 0) throw std::invalid_argument("frame shift must be positive");
    if (n_frames == 0) throw std::invalid_argument("duration_signal: zero frames requested");

    std::vector<double> knot_t, knot_d;
    std::vector<std::pair<double, double>> pauses;   // span
    std::vector<std::pair<double, double>> word_spans;
    for (const auto& e : words.entries) {
        if (e.kind == EntryKind::word) {
            double d = e.end - e.start;
            knot_t.push_back(e.start + d / 2.0);
            knot_d.push_back(d);
            word_spans.emplace_back(e.start, e.end);
        } else {
            pauses.emplace_back(e.start, e.end);
        }
    }
    NaturalSpline spline(knot_t, knot_d);

    auto nearest_word_duration = [&](double t) {
        double best = knot_d.front();
        double best_dist = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < word_spans.size(); ++i) {
            double dist = t < word_spans[i].first   ? word_spans[i].first - t
                          : t > word_spans[i].second ? t - word_spans[i].second
                                                     : 0.0;
            if (dist < best_dist) {
                best_dist = dist;
                best = knot_d[i];
            }
        }
        return best;
    };

    FrameSeries out;
    out.frame_shift = frame_shift;
    out.start_time = start_time;
    out.values.resize(n_frames);
    for (std::size_t k = 0; k < n_frames; ++k) {
        double t = start_time + static_cast<double>(k) * frame_shift;
        bool in_pause = false;
        for (const auto& p : pauses)
            if (t >= p.first && t < p.second) { in_pause = true; break; }
        out.values[k] = in_pause ? nearest_word_duration(t) : spline(t);
    }
    return out;
}

FrameSeries duration_signal(const WordAlignment& words, double frame_shift) {
    words.validate();
    auto idx = words.word_indices();
    double x0 = words.entries[idx.front()].start;
    double xN = words.entries[idx.back()].end;
    std::size_t n_frames = static_cast<std::size_t>(std::floor((xN - x0) / frame_shift + 1e-9)) + 1;
    return duration_signal_on_grid(words, frame_shift, x0, n_frames);
}

FrameSeries duration_derivative(const FrameSeries& duration) {
    const auto& v = duration.values;
    if (v.size() < 3) throw std::invalid_argument("duration_derivative requires length >= 3");
    FrameSeries out = duration;
    const double dt = duration.frame_shift;
    out.values[0] = (v[1] - v[0]) / dt;
    for (std::size_t k = 1; k + 1 < v.size(); ++k)
        out.values[k] = (v[k + 1] - v[k - 1]) / (2.0 * dt);
    out.values[v.size() - 1] = (v[v.size() - 1] - v[v.size() - 2]) / dt;
    return out;
}

}  // namespace prosowave
