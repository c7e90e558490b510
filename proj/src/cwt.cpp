#include "prosowave/cwt.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace prosowave {

double ScaleGrid::scale(int j) const { return a0 * std::pow(ratio, j); }

std::vector<double> ScaleGrid::scales() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = scale(j);
    return out;
}

void ScaleGrid::validate() const {
    if (a0 <= 0) throw std::invalid_argument("scale grid: a0 must be positive");
    if (count < 1) throw std::invalid_argument("scale grid: need at least one scale");
    if (ratio <= 1) throw std::invalid_argument("scale grid: ratio must exceed 1");
}

double mexican_hat(double t) {
    static const double norm = 2.0 / (std::sqrt(3.0) * std::pow(std::numbers::pi, 0.25));
    return norm * (1.0 - t * t) * std::exp(-0.5 * t * t);
}

double mexican_hat_center_frequency(double scale) {
    return std::sqrt(2.5) / (2.0 * std::numbers::pi * scale);
}

Scalogram transform(const FrameSeries& signal, const ScaleGrid& grid, double truncation_sigma) {
    grid.validate();
    const auto& s = signal.values;
    const std::size_t n = s.size();
    if (n < 2) throw std::invalid_argument("transform: signal too short");
    for (double x : s)
        if (!std::isfinite(x)) throw std::invalid_argument("transform: non-finite input");
    const double dt = signal.frame_shift;

    {
        double coarsest = grid.scale(grid.count - 1);
        double support = 2.0 * truncation_sigma * coarsest / dt + 1.0;
        if (support > 4.0 * static_cast<double>(n))
            std::cerr << "warning: coarsest scale " << coarsest
                      << " s has kernel support beyond 4x signal length\n";
    }

    Scalogram sg;
    sg.grid = grid;
    sg.frame_shift = dt;
    sg.start_time = signal.start_time;
    sg.coeffs.resize(static_cast<std::size_t>(grid.count));

    for (int j = 0; j < grid.count; ++j) {
        const double sigma = grid.scale(j);
        const std::ptrdiff_t radius =
            static_cast<std::ptrdiff_t>(std::floor(truncation_sigma * sigma / dt));
        std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
        double mean = 0.0;
        for (std::ptrdiff_t m = -radius; m <= radius; ++m) {
            double w = mexican_hat(static_cast<double>(m) * dt / sigma);
            kernel[static_cast<std::size_t>(m + radius)] = w;
            mean += w;
        }
        mean /= static_cast<double>(kernel.size());
        // re-centre so the discrete kernel has exactly zero mean
        for (double& w : kernel) w -= mean;

        const double gain = dt / std::sqrt(sigma);
        auto& row = sg.coeffs[static_cast<std::size_t>(j)];
        row.resize(n);
        const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
        for (std::ptrdiff_t k = 0; k < nn; ++k) {
            double acc = 0.0;
            for (std::ptrdiff_t m = -radius; m <= radius; ++m) {
                std::ptrdiff_t idx = (k + m) % nn;
                if (idx < 0) idx += nn;
                acc += s[static_cast<std::size_t>(idx)] * kernel[static_cast<std::size_t>(m + radius)];
            }
            row[static_cast<std::size_t>(k)] = acc * gain;
        }
    }
    return sg;
}

FrameSeries reconstruct(const Scalogram& sg, double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("reconstruct: c must be finite");
    if (sg.coeffs.empty()) throw std::invalid_argument("reconstruct: empty scalogram");
    FrameSeries out;
    out.frame_shift = sg.frame_shift;
    out.start_time = sg.start_time;
    out.values.assign(sg.frames(), 0.0);
    for (int j = 0; j < sg.grid.count; ++j) {
        const double w = c * std::pow(sg.grid.ratio, -0.5 * j);
        const auto& row = sg.coeffs[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += w * row[k];
    }
    return out;
}

double fit_c(const FrameSeries& original, const Scalogram& sg) {
    FrameSeries unit = reconstruct(sg, 1.0);
    if (unit.size() != original.size())
        throw std::invalid_argument("fit_c: length mismatch");
    double dot = 0.0, energy = 0.0;
    for (std::size_t k = 0; k < unit.size(); ++k) {
        dot += original.values[k] * unit.values[k];
        energy += unit.values[k] * unit.values[k];
    }
    if (energy <= 0.0) {
        std::cerr << "warning: fit_c: zero-energy reconstruction\n";
        return 0.0;
    }
    return dot / energy;
}

void write_scalogram(const std::string& path, const Scalogram& sg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "scales:";
    char buf[64];
    for (double s : sg.grid.scales()) {
        std::snprintf(buf, sizeof(buf), " %.6f", s);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "; frame_shift: %.6f\n", sg.frame_shift);
    out << buf;
    for (const auto& row : sg.coeffs) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            std::snprintf(buf, sizeof(buf), k ? "\t%.9g" : "%.9g", row[k]);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace prosowave
