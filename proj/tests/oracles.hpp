// Test-only helpers and independent oracles. Everything here recomputes
// results by a different route than the library (dense solves, brute-force
// enumeration, direct formulas) so the tests stay meaningful.
#ifndef PROSOWAVE_TESTS_ORACLES_HPP
#define PROSOWAVE_TESTS_ORACLES_HPP

#include <unistd.h>

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace oracles {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // population
};

inline Moments moments(const std::vector<double>& v) {
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    for (double x : v) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(v.size());
    return m;
}

/// Natural cubic spline solved with dense Gaussian elimination (the library
/// uses a tridiagonal sweep). Returns the interpolant value at t, clamped.
inline double dense_natural_spline(const std::vector<double>& x, const std::vector<double>& y,
                                   double t) {
    const std::size_t n = x.size();
    if (n == 1) return y[0];
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();

    // unknowns: second derivatives m_0..m_{n-1}, with m_0 = m_{n-1} = 0
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    a[0][0] = 1.0;
    a[n - 1][n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        a[i][i - 1] = h0 / 6.0;
        a[i][i] = (h0 + h1) / 3.0;
        a[i][i + 1] = h1 / 6.0;
        a[i][n] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    }
    for (std::size_t col = 0; col < n; ++col) {  // no pivoting needed: diagonally dominant
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0.0) continue;
            double f = a[row][col] / a[col][col];
            for (std::size_t k = col; k <= n; ++k) a[row][k] -= f * a[col][k];
        }
    }
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = a[i][n] / a[i][i];

    std::size_t i = 0;
    while (i + 2 < n && t > x[i + 1]) ++i;
    double h = x[i + 1] - x[i];
    double A = (x[i + 1] - t) / h, B = (t - x[i]) / h;
    return A * y[i] + B * y[i + 1] +
           ((A * A * A - A) * m[i] + (B * B * B - B) * m[i + 1]) * h * h / 6.0;
}

struct KmeansSplit {
    std::size_t low_count = 0;
    double wcss = 0.0;
};

/// Brute-force 1-D two-means: every split of the sorted values, means and
/// WCSS recomputed from scratch; ties resolve to the larger low cluster.
inline KmeansSplit brute_force_kmeans(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    KmeansSplit best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t p = 1; p < n; ++p) {
        double mean_lo = 0.0, mean_hi = 0.0;
        for (std::size_t i = 0; i < p; ++i) mean_lo += values[i];
        for (std::size_t i = p; i < n; ++i) mean_hi += values[i];
        mean_lo /= static_cast<double>(p);
        mean_hi /= static_cast<double>(n - p);
        double wcss = 0.0;
        for (std::size_t i = 0; i < p; ++i) wcss += (values[i] - mean_lo) * (values[i] - mean_lo);
        for (std::size_t i = p; i < n; ++i) wcss += (values[i] - mean_hi) * (values[i] - mean_hi);
        if (wcss < best.wcss || (wcss == best.wcss && p > best.low_count)) best = {p, wcss};
    }
    return best;
}

/// Best classification accuracy over a dense threshold grid.
inline double grid_scan_best_accuracy(const std::vector<std::pair<double, bool>>& data,
                                      double resolution = 0.001) {
    double lo = data.front().first, hi = lo;
    for (const auto& [v, l] : data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double best = 0.0;
    for (double thr = lo - resolution; thr <= hi + resolution; thr += resolution) {
        std::size_t correct = 0;
        for (const auto& [v, l] : data)
            if ((v >= thr) == l) ++correct;
        best = std::max(best, static_cast<double>(correct) / static_cast<double>(data.size()));
    }
    return best;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("prosowave_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace oracles

#endif
