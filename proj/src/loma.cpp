#include "prosowave/loma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace prosowave {

std::vector<ExtremumPoint> local_maxima(const std::vector<double>& row, double frame_shift,
                                        double start_time, int scale_index) {
    if (row.size() < 3) throw std::invalid_argument("local_maxima requires length >= 3");
    std::vector<ExtremumPoint> out;
    for (std::size_t k = 1; k + 1 < row.size(); ++k) {
        if (row[k] > row[k - 1] && row[k] >= row[k + 1]) {
            ExtremumPoint p;
            p.frame = k;
            p.time = start_time + static_cast<double>(k) * frame_shift;
            p.scale_index = scale_index;
            p.amplitude = row[k];
            out.push_back(p);
        }
    }
    return out;
}

double scale_weight(int scale_index, double ratio) {
    if (scale_index == 0) return 1.0;
    return std::log(static_cast<double>(scale_index) + 1.0) *
           std::pow(ratio, -0.5 * static_cast<double>(scale_index));
}

double line_strength(const LomaLine& line, double ratio) {
    if (line.points.empty()) throw std::invalid_argument("line_strength: empty line");
    double sum = 0.0;
    for (const auto& p : line.points) sum += scale_weight(p.scale_index, ratio) * p.amplitude;
    return sum;
}

namespace {

struct Node {
    ExtremumPoint point;
    double cum = 0.0;     // weighted sum of this point and its descendants
    int parent = -1;      // index into the next level up
    bool has_child = false;
};

std::vector<LomaLine> link(const std::vector<std::vector<double>>& coeffs, const ScaleGrid& grid,
                           double frame_shift, double start_time, const LinkOptions& opt,
                           Polarity polarity) {
    const int n_levels = static_cast<int>(coeffs.size());
    if (n_levels < 2) throw std::invalid_argument("link_lines requires at least 2 scales");

    std::vector<std::vector<Node>> levels(static_cast<std::size_t>(n_levels));
    for (int j = 0; j < n_levels; ++j) {
        auto maxima = local_maxima(coeffs[static_cast<std::size_t>(j)], frame_shift, start_time, j);
        auto& nodes = levels[static_cast<std::size_t>(j)];
        nodes.reserve(maxima.size());
        for (auto& p : maxima) {
            Node nd;
            nd.point = p;
            nd.cum = scale_weight(j, grid.ratio) * p.amplitude;
            nodes.push_back(nd);
        }
    }

    // Nearest unclaimed candidate on one side of `t`, within max_distance.
    auto find_candidate = [&](const std::vector<Node>& cands, double t, bool right) -> int {
        if (cands.empty()) return -1;
        if (right) {
            std::size_t i = static_cast<std::size_t>(
                std::lower_bound(cands.begin(), cands.end(), t,
                                 [](const Node& n, double v) { return n.point.time < v; }) -
                cands.begin());
            for (; i < cands.size(); ++i) {
                if (cands[i].has_child) continue;
                return cands[i].point.time - t <= opt.max_distance + 1e-12 ? static_cast<int>(i) : -1;
            }
        } else {
            std::ptrdiff_t i = std::upper_bound(cands.begin(), cands.end(), t,
                                                [](double v, const Node& n) { return v < n.point.time; }) -
                               cands.begin() - 1;
            for (; i >= 0; --i) {
                if (cands[static_cast<std::size_t>(i)].has_child) continue;
                return t - cands[static_cast<std::size_t>(i)].point.time <= opt.max_distance + 1e-12
                           ? static_cast<int>(i)
                           : -1;
            }
        }
        return -1;
    };

    for (int j = 0; j + 1 < n_levels; ++j) {
        auto& children = levels[static_cast<std::size_t>(j)];
        auto& parents = levels[static_cast<std::size_t>(j + 1)];

        std::vector<std::size_t> order(children.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (children[a].cum != children[b].cum) return children[a].cum > children[b].cum;
            return children[a].point.time < children[b].point.time;
        });

        for (std::size_t ci : order) {
            Node& child = children[ci];
            const std::size_t f = child.point.frame;
            double deriv = coeffs[static_cast<std::size_t>(j + 1)][f] -
                           coeffs[static_cast<std::size_t>(j)][f];
            bool prefer_right = deriv >= 0.0;
            int pi = find_candidate(parents, child.point.time, prefer_right);
            if (pi < 0 && opt.fallback_other_side)
                pi = find_candidate(parents, child.point.time, !prefer_right);
            if (pi < 0) continue;  // line terminates here
            Node& parent = parents[static_cast<std::size_t>(pi)];
            parent.has_child = true;
            parent.cum += child.cum;
            child.parent = pi;
        }
    }

    std::vector<LomaLine> lines;
    for (int j = 0; j < n_levels; ++j) {
        const auto& nodes = levels[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].has_child) continue;  // interior point of some chain
            LomaLine line;
            line.polarity = polarity;
            int level = j;
            int idx = static_cast<int>(i);
            while (idx >= 0) {
                const Node& nd = levels[static_cast<std::size_t>(level)][static_cast<std::size_t>(idx)];
                line.points.push_back(nd.point);
                idx = nd.parent;
                ++level;
            }
            line.strength = line_strength(line, grid.ratio);
            lines.push_back(std::move(line));
        }
    }
    std::sort(lines.begin(), lines.end(), [](const LomaLine& a, const LomaLine& b) {
        if (a.anchor().time != b.anchor().time) return a.anchor().time < b.anchor().time;
        return a.anchor().scale_index < b.anchor().scale_index;
    });
    return lines;
}

}  // namespace

std::vector<LomaLine> link_lines(const Scalogram& sg, const LinkOptions& options) {
    return link(sg.coeffs, sg.grid, sg.frame_shift, sg.start_time, options, Polarity::peak);
}

std::vector<LomaLine> maxima_lines(const Scalogram& sg, const LinkOptions& options) {
    return link_lines(sg, options);
}

std::vector<LomaLine> minima_lines(const Scalogram& sg, const LinkOptions& options) {
    std::vector<std::vector<double>> negated = sg.coeffs;
    for (auto& row : negated)
        for (double& v : row) v = -v;
    return link(negated, sg.grid, sg.frame_shift, sg.start_time, options, Polarity::valley);
}

void write_lines(const std::string& path, const std::vector<LomaLine>& lines) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    char buf[160];
    for (std::size_t id = 0; id < lines.size(); ++id) {
        const auto& line = lines[id];
        for (const auto& p : line.points) {
            std::snprintf(buf, sizeof(buf), "%zu\t%s\t%.6f\t%d\t%.6f\t%.6f\n", id,
                          line.polarity == Polarity::peak ? "peak" : "valley", line.strength,
                          p.scale_index, p.time, p.amplitude);
            out << buf;
        }
    }
}

}  // namespace prosowave
