#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prosowave/annotate.hpp"
#include "prosowave/cwt.hpp"
#include "prosowave/evaluate.hpp"
#include "prosowave/extract.hpp"
#include "prosowave/loma.hpp"
#include "prosowave/preproc.hpp"
#include "prosowave/synth.hpp"

namespace py = pybind11;
using namespace prosowave;

namespace {

FrameSeries to_series(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr,
                      double frame_shift, double start_time = 0.0) {
    if (arr.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
    FrameSeries s;
    s.frame_shift = frame_shift;
    s.start_time = start_time;
    s.values.assign(arr.data(), arr.data() + arr.size());
    return s;
}

py::array_t<double> from_series(const FrameSeries& s) {
    return py::array_t<double>(static_cast<py::ssize_t>(s.values.size()), s.values.data());
}

VoicingMask to_mask(const py::array_t<bool, py::array::c_style | py::array::forcecast>& arr) {
    VoicingMask mask(static_cast<std::size_t>(arr.size()));
    for (py::ssize_t i = 0; i < arr.size(); ++i) mask[static_cast<std::size_t>(i)] = arr.data()[i];
    return mask;
}

WordAlignment to_alignment(const std::vector<std::tuple<double, double, std::string, std::string>>& rows) {
    WordAlignment a;
    for (const auto& [start, end, label, kind] : rows)
        a.entries.push_back({label, start, end, parse_entry_kind(kind)});
    a.validate();
    return a;
}

Utterance make_utterance(const py::array_t<double>& f0, const py::array_t<double>& energy,
                         const std::vector<std::tuple<double, double, std::string, std::string>>& alignment,
                         double frame_shift) {
    Utterance utt;
    utt.id = "py";
    utt.f0 = to_series(f0, frame_shift);
    utt.energy = to_series(energy, frame_shift);
    utt.voicing = voicing_from_f0(utt.f0);
    utt.words = to_alignment(alignment);
    return utt;
}

AnnotateOptions options_from_kwargs(const std::string& features, bool gap_fill_energy) {
    AnnotateOptions opt;
    opt.features = FeatureSet::parse(features);
    opt.gap_fill_energy = gap_fill_energy;
    return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "prosowave: CWT/LoMA prosodic prominence and boundary annotation";

    py::class_<ScaleGrid>(m, "ScaleGrid")
        .def(py::init([](double a0, int count, double ratio) {
                 ScaleGrid g{a0, count, ratio};
                 g.validate();
                 return g;
             }),
             py::arg("a0"), py::arg("count"), py::arg("ratio") = 1.4142135623730951)
        .def_readonly("a0", &ScaleGrid::a0)
        .def_readonly("count", &ScaleGrid::count)
        .def_readonly("ratio", &ScaleGrid::ratio)
        .def("scales", &ScaleGrid::scales);

    py::class_<Scalogram>(m, "Scalogram")
        .def_property_readonly("coeffs",
                               [](const Scalogram& sg) {
                                   py::array_t<double> out(
                                       {static_cast<py::ssize_t>(sg.coeffs.size()),
                                        static_cast<py::ssize_t>(sg.frames())});
                                   auto buf = out.mutable_unchecked<2>();
                                   for (py::ssize_t j = 0; j < buf.shape(0); ++j)
                                       for (py::ssize_t k = 0; k < buf.shape(1); ++k)
                                           buf(j, k) = sg.coeffs[static_cast<std::size_t>(j)]
                                                                [static_cast<std::size_t>(k)];
                                   return out;
                               })
        .def_property_readonly("scales", [](const Scalogram& sg) { return sg.grid.scales(); })
        .def_readonly("frame_shift", &Scalogram::frame_shift);

    py::class_<ExtremumPoint>(m, "ExtremumPoint")
        .def_readonly("time", &ExtremumPoint::time)
        .def_readonly("scale_index", &ExtremumPoint::scale_index)
        .def_readonly("amplitude", &ExtremumPoint::amplitude)
        .def("__repr__", [](const ExtremumPoint& p) {
            return "ExtremumPoint(t=" + std::to_string(p.time) +
                   ", j=" + std::to_string(p.scale_index) + ")";
        });

    py::class_<LomaLine>(m, "LomaLine")
        .def_readonly("points", &LomaLine::points)
        .def_readonly("strength", &LomaLine::strength)
        .def_property_readonly("polarity",
                               [](const LomaLine& l) {
                                   return l.polarity == Polarity::peak ? "peak" : "valley";
                               })
        .def_property_readonly("anchor_time", [](const LomaLine& l) { return l.anchor().time; })
        .def("__repr__", [](const LomaLine& l) {
            return "LomaLine(anchor=" + std::to_string(l.anchor().time) +
                   ", strength=" + std::to_string(l.strength) + ")";
        });

    py::class_<WordProsody>(m, "WordProsody")
        .def_readonly("word_index", &WordProsody::word_index)
        .def_readonly("label", &WordProsody::label)
        .def_readonly("prominence", &WordProsody::prominence)
        .def_readonly("boundary", &WordProsody::boundary)
        .def_readonly("prom_binary", &WordProsody::prom_binary)
        .def_readonly("bound_binary", &WordProsody::bound_binary)
        .def("__repr__", [](const WordProsody& w) {
            return "WordProsody(" + w.label + ", prom=" + std::to_string(w.prominence) +
                   ", bound=" + std::to_string(w.boundary) + ")";
        });

    m.def(
        "normalize",
        [](const py::array_t<double>& values) {
            return from_series(normalize(to_series(values, 0.005)));
        },
        py::arg("values"), "Zero-mean, unit-variance normalization (zeros when degenerate).");

    m.def(
        "combine",
        [](const std::vector<py::array_t<double>>& tracks) {
            std::vector<FrameSeries> series;
            for (const auto& t : tracks) series.push_back(to_series(t, 0.005));
            return from_series(combine(series));
        },
        py::arg("tracks"), "Sum of normalized tracks, renormalized.");

    m.def("mexican_hat", &mexican_hat, py::arg("t"));
    m.def("mexican_hat_center_frequency", &mexican_hat_center_frequency, py::arg("scale"));

    m.def(
        "cwt",
        [](const py::array_t<double>& values, double frame_shift, const ScaleGrid& grid) {
            return transform(to_series(values, frame_shift), grid);
        },
        py::arg("values"), py::arg("frame_shift"), py::arg("grid"),
        "Continuous wavelet transform with periodic extension.");

    m.def(
        "reconstruct",
        [](const Scalogram& sg, double c) { return from_series(reconstruct(sg, c)); },
        py::arg("scalogram"), py::arg("c"));

    m.def(
        "fit_c",
        [](const py::array_t<double>& original, const Scalogram& sg) {
            return fit_c(to_series(original, sg.frame_shift), sg);
        },
        py::arg("original"), py::arg("scalogram"));

    m.def(
        "fill_gain",
        [](const py::array_t<double>& values, double frame_shift, double w_max, int n) {
            return from_series(
                fill_gain(to_series(values, frame_shift), SmoothingFamily{w_max, 1.0, n}));
        },
        py::arg("values"), py::arg("frame_shift") = 0.005, py::arg("w_max") = 0.100,
        py::arg("n") = 100);

    m.def(
        "fill_f0",
        [](const py::array_t<double>& values, const py::array_t<bool>& voiced, double frame_shift,
           bool final_smoothing) {
            F0FillOptions opts;
            opts.final_smoothing = final_smoothing;
            return from_series(fill_f0(to_series(values, frame_shift), to_mask(voiced), opts));
        },
        py::arg("values"), py::arg("voiced"), py::arg("frame_shift") = 0.005,
        py::arg("final_smoothing") = true);

    m.def(
        "duration_signal",
        [](const std::vector<std::tuple<double, double, std::string, std::string>>& alignment,
           double frame_shift) {
            return from_series(duration_signal(to_alignment(alignment), frame_shift));
        },
        py::arg("alignment"), py::arg("frame_shift") = 0.005,
        "Cubic-spline duration signal from (start, end, label, kind) rows.");

    m.def(
        "duration_derivative",
        [](const py::array_t<double>& values, double frame_shift) {
            return from_series(duration_derivative(to_series(values, frame_shift)));
        },
        py::arg("values"), py::arg("frame_shift") = 0.005);

    m.def(
        "maxima_lines",
        [](const Scalogram& sg, double max_distance) {
            return maxima_lines(sg, LinkOptions{max_distance, false});
        },
        py::arg("scalogram"), py::arg("max_distance") = 0.200);
    m.def(
        "minima_lines",
        [](const Scalogram& sg, double max_distance) {
            return minima_lines(sg, LinkOptions{max_distance, false});
        },
        py::arg("scalogram"), py::arg("max_distance") = 0.200);

    m.def(
        "word_scale",
        [](const std::vector<std::tuple<double, double, std::string, std::string>>& alignment) {
            return word_scale(to_alignment(alignment));
        },
        py::arg("alignment"));

    m.def(
        "annotate",
        [](const py::array_t<double>& f0, const py::array_t<double>& energy,
           const std::vector<std::tuple<double, double, std::string, std::string>>& alignment,
           double frame_shift, const std::string& features, bool gap_fill_energy) {
            return annotate_words(make_utterance(f0, energy, alignment, frame_shift),
                                  options_from_kwargs(features, gap_fill_energy));
        },
        py::arg("f0"), py::arg("energy"), py::arg("alignment"), py::arg("frame_shift") = 0.005,
        py::arg("features") = "f0,en,dur", py::arg("gap_fill_energy") = true,
        "Per-word prominence/boundary values for one utterance (f0 frames with "
        "value 0 are treated as unvoiced).");

    m.def(
        "raw_baseline",
        [](const py::array_t<double>& f0, const py::array_t<double>& energy,
           const std::vector<std::tuple<double, double, std::string, std::string>>& alignment,
           double frame_shift, const std::string& features, bool gap_fill_energy) {
            return raw_baseline(make_utterance(f0, energy, alignment, frame_shift),
                                options_from_kwargs(features, gap_fill_energy));
        },
        py::arg("f0"), py::arg("energy"), py::arg("alignment"), py::arg("frame_shift") = 0.005,
        py::arg("features") = "f0,en,dur", py::arg("gap_fill_energy") = true);

    m.def(
        "binarize_threshold",
        [](const std::vector<double>& values, const std::vector<double>& calib_values,
           const std::vector<bool>& calib_labels) {
            if (calib_values.size() != calib_labels.size())
                throw std::invalid_argument("calibration values/labels length mismatch");
            std::vector<std::pair<double, bool>> calib;
            for (std::size_t i = 0; i < calib_values.size(); ++i)
                calib.emplace_back(calib_values[i], calib_labels[i]);
            auto res = binarize_threshold(values, calib);
            return py::make_tuple(res.threshold, res.labels);
        },
        py::arg("values"), py::arg("calib_values"), py::arg("calib_labels"));

    m.def(
        "binarize_kmeans",
        [](const std::vector<double>& values) {
            auto res = binarize_kmeans(values);
            return py::make_tuple(py::make_tuple(res.centroid_low, res.centroid_high), res.labels);
        },
        py::arg("values"));

    m.def(
        "metrics",
        [](const std::vector<bool>& pred, const std::vector<bool>& ref) {
            auto m = prosowave::metrics(pred, ref);
            py::dict out;
            out["accuracy"] = m.accuracy;
            out["precision"] = m.precision;
            out["recall"] = m.recall;
            out["f1"] = m.f1;
            out["tp"] = m.confusion.tp;
            out["fp"] = m.confusion.fp;
            out["fn"] = m.confusion.fn;
            out["tn"] = m.confusion.tn;
            return out;
        },
        py::arg("pred"), py::arg("ref"));

    m.def("generate_corpus",
          [](const std::string& out_dir, std::size_t utterances, double snr_db,
             std::uint64_t seed) {
              SynthOptions opt;
              opt.utterances = utterances;
              opt.snr_db = snr_db;
              opt.seed = seed;
              return generate_corpus(out_dir, opt);
          },
          py::arg("out_dir"), py::arg("utterances") = 50, py::arg("snr_db") = 10.0,
          py::arg("seed") = 1);

    m.attr("__version__") = "0.1.0";
}
