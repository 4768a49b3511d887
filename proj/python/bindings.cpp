#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lineseg/dataset.hpp"
#include "lineseg/filters.hpp"
#include "lineseg/gpi.hpp"
#include "lineseg/metrics.hpp"
#include "lineseg/postprocess.hpp"
#include "lineseg/synth.hpp"
#include "lineseg/tauch.hpp"

namespace py = pybind11;
using namespace lineseg;

namespace {

GrayImage to_gray(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  GrayImage img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), img.data.begin());
  return img;
}

py::array_t<double> from_gray(const GrayImage& img) {
  py::array_t<double> a({img.height, img.width});
  std::copy(img.data.begin(), img.data.end(), a.mutable_data());
  return a;
}

BinaryMask to_mask(const py::array_t<bool, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  BinaryMask m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  for (py::ssize_t i = 0; i < a.size(); ++i) m.data[i] = a.data()[i] ? 1 : 0;
  return m;
}

py::array_t<bool> from_mask(const BinaryMask& m) {
  py::array_t<bool> a({m.height, m.width});
  for (std::size_t i = 0; i < m.data.size(); ++i) a.mutable_data()[i] = m.data[i] != 0;
  return a;
}

InstanceMap to_labels(const py::array_t<std::int32_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  InstanceMap m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), m.labels.begin());
  return m;
}

py::array_t<std::int32_t> from_labels(const InstanceMap& m) {
  py::array_t<std::int32_t> a({m.height, m.width});
  std::copy(m.labels.begin(), m.labels.end(), a.mutable_data());
  return a;
}

StructuringElement make_se(const std::string& shape, int a, int b) {
  if (shape == "rectangle") return StructuringElement::rectangle(a, b);
  if (shape == "ellipse") return StructuringElement::ellipse(a, b);
  if (shape == "circle") return StructuringElement::circle(a);
  throw py::value_error("shape must be 'rectangle', 'ellipse' or 'circle'");
}

py::dict metrics_dict(const PageMetrics& pm) {
  py::dict d;
  d["piu"] = pm.piu;
  d["liu"] = pm.liu;
  d["dr"] = pm.dr;
  d["ra"] = pm.ra;
  d["fm"] = pm.fm;
  d["n_gt_lines"] = pm.n_gt_lines;
  d["n_pred_lines"] = pm.n_pred_lines;
  d["n_matches"] = pm.n_matches;
  py::list pairs;
  for (const MatchPair& p : pm.match_pairs)
    pairs.append(py::make_tuple(p.pred_label, p.gt_label, p.score));
  d["match_pairs"] = pairs;
  return d;
}

Degradation parse_degradation(const std::string& s) {
  if (s == "none") return Degradation::None;
  if (s == "faded") return Degradation::Faded;
  if (s == "stains") return Degradation::Stains;
  throw py::value_error("degradation must be 'none', 'faded' or 'stains'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Text-line segmentation toolkit: classical pipelines, evaluation "
            "metrics and a synthetic page generator.";

  py::class_<TauchConfig>(m, "TauchConfig")
      .def(py::init<>())
      .def_readwrite("eta", &TauchConfig::eta)
      .def_readwrite("dilation_w", &TauchConfig::dilation_w)
      .def_readwrite("dilation_h", &TauchConfig::dilation_h)
      .def_readwrite("blob_threshold", &TauchConfig::blob_threshold)
      .def_readwrite("separator_factor", &TauchConfig::separator_factor)
      .def_readwrite("min_height_frac", &TauchConfig::min_height_frac)
      .def_readwrite("max_height_frac", &TauchConfig::max_height_frac)
      .def_readwrite("min_height_px", &TauchConfig::min_height_px)
      .def_readwrite("max_height_px", &TauchConfig::max_height_px)
      .def_readwrite("connectivity", &TauchConfig::connectivity)
      .def_readwrite("vertical_dilation_factor", &TauchConfig::vertical_dilation_factor)
      .def_readwrite("sigma_factor", &TauchConfig::sigma_factor);

  py::class_<GpiConfig>(m, "GpiConfig")
      .def(py::init<>())
      .def_readwrite("tv_weight", &GpiConfig::tv_weight)
      .def_readwrite("tv_max_iter", &GpiConfig::tv_max_iter)
      .def_readwrite("tv_tol", &GpiConfig::tv_tol)
      .def_readwrite("tophat_radius", &GpiConfig::tophat_radius)
      .def_readwrite("blur_kw", &GpiConfig::blur_kw)
      .def_readwrite("blur_kh", &GpiConfig::blur_kh)
      .def_readwrite("valley_threshold", &GpiConfig::valley_threshold)
      .def_readwrite("ellipse_w", &GpiConfig::ellipse_w)
      .def_readwrite("ellipse_h", &GpiConfig::ellipse_h)
      .def_readwrite("extrapolation_margin", &GpiConfig::extrapolation_margin)
      .def_readwrite("area_threshold_factor", &GpiConfig::area_threshold_factor)
      .def_readwrite("area_percentile", &GpiConfig::area_percentile)
      .def_readwrite("connectivity", &GpiConfig::connectivity);

  py::class_<SrcbParams>(m, "SrcbParams")
      .def(py::init<>())
      .def_readwrite("d_max", &SrcbParams::d_max)
      .def_readwrite("g_min", &SrcbParams::g_min)
      .def_readwrite("stroke", &SrcbParams::stroke)
      .def_readwrite("min_area_factor", &SrcbParams::min_area_factor)
      .def_readwrite("connectivity", &SrcbParams::connectivity);

  // --- synthetic pages ---
  m.def(
      "generate_page",
      [](int width, int height, int columns, int lines_per_column, int char_height,
         int line_spacing, int baseline_curvature, int ink_level, int bg_level, double noise_std,
         const std::string& degradation, double fade_alpha, int stain_count,
         std::uint64_t seed) {
        PageSpec spec;
        spec.width = width;
        spec.height = height;
        spec.columns = columns;
        spec.lines_per_column = lines_per_column;
        spec.char_height = char_height;
        spec.line_spacing = line_spacing;
        spec.baseline_curvature = baseline_curvature;
        spec.ink_level = ink_level;
        spec.bg_level = bg_level;
        spec.noise_std = noise_std;
        spec.degradation = parse_degradation(degradation);
        spec.fade_alpha = fade_alpha;
        spec.stain_count = stain_count;
        spec.seed = seed;
        const SynthPage page = generate_page(spec);
        return py::make_tuple(from_gray(page.image), from_labels(page.gt));
      },
      py::arg("width") = 360, py::arg("height") = 260, py::arg("columns") = 1,
      py::arg("lines_per_column") = 8, py::arg("char_height") = 12, py::arg("line_spacing") = 16,
      py::arg("baseline_curvature") = 0, py::arg("ink_level") = 60, py::arg("bg_level") = 220,
      py::arg("noise_std") = 0.0, py::arg("degradation") = "none", py::arg("fade_alpha") = 0.0,
      py::arg("stain_count") = 0, py::arg("seed") = 0,
      "Render a synthetic manuscript page; returns (image, ground_truth).");

  // --- filters ---
  m.def("otsu_threshold", [](py::array_t<double> img) { return otsu_threshold(to_gray(img)); });
  m.def("otsu_binarize",
        [](py::array_t<double> img) { return from_mask(otsu_binarize(to_gray(img))); });
  m.def(
      "sauvola_binarize",
      [](py::array_t<double> img, int window, double k, double R) {
        return from_mask(sauvola_binarize(to_gray(img), window, k, R));
      },
      py::arg("image"), py::arg("window") = 25, py::arg("k") = 0.2, py::arg("R") = 128.0);
  m.def(
      "tv_denoise",
      [](py::array_t<double> img, double weight, int max_iter, double tol) {
        return from_gray(tv_denoise(to_gray(img), weight, max_iter, tol));
      },
      py::arg("image"), py::arg("weight") = 0.1, py::arg("max_iter") = 200,
      py::arg("tol") = 1e-4);
  m.def(
      "anisotropic_gaussian",
      [](py::array_t<double> img, double sigma_u, double sigma_v, double phi) {
        return from_gray(anisotropic_gaussian(to_gray(img), {sigma_u, sigma_v, phi}));
      },
      py::arg("image"), py::arg("sigma_u"), py::arg("sigma_v"), py::arg("phi") = 0.0);
  m.def(
      "elongated_blur",
      [](py::array_t<double> img, int kw, int kh) {
        return from_gray(elongated_blur(to_gray(img), kw, kh));
      },
      py::arg("image"), py::arg("kw") = 31, py::arg("kh") = 5);

  // --- raster operations ---
  m.def(
      "label_components",
      [](py::array_t<bool> mask, int connectivity) {
        return from_labels(label_components(to_mask(mask), connectivity));
      },
      py::arg("mask"), py::arg("connectivity") = 8);
  m.def(
      "dilate",
      [](py::array_t<bool> mask, const std::string& shape, int a, int b) {
        return from_mask(dilate(to_mask(mask), make_se(shape, a, b)));
      },
      py::arg("mask"), py::arg("shape") = "rectangle", py::arg("a") = 3, py::arg("b") = 3);
  m.def(
      "erode",
      [](py::array_t<bool> mask, const std::string& shape, int a, int b) {
        return from_mask(erode(to_mask(mask), make_se(shape, a, b)));
      },
      py::arg("mask"), py::arg("shape") = "rectangle", py::arg("a") = 3, py::arg("b") = 3);
  m.def(
      "top_hat",
      [](py::array_t<double> img, int radius) {
        return from_gray(top_hat(to_gray(img), StructuringElement::circle(radius)));
      },
      py::arg("image"), py::arg("radius") = 15);
  m.def("normalize_labels",
        [](py::array_t<std::int32_t> m) { return from_labels(normalize_labels(to_labels(m))); });

  // --- pipelines ---
  m.def(
      "run_tauch",
      [](py::array_t<double> img, const TauchConfig& cfg) {
        return from_labels(run_tauch(to_gray(img), cfg));
      },
      py::arg("image"), py::arg("config") = TauchConfig{},
      "Anisotropic-Gaussian line detection followed by marker-guided watershed.");
  m.def(
      "run_gpi",
      [](py::array_t<double> img, std::int64_t area_threshold, const GpiConfig& cfg) {
        return from_labels(run_gpi(to_gray(img), cfg, area_threshold));
      },
      py::arg("image"), py::arg("area_threshold"), py::arg("config") = GpiConfig{},
      "TV + top-hat preprocessing, curve fitting, intersection refinement.");
  m.def(
      "watershed_segment",
      [](py::array_t<std::int32_t> markers, py::array_t<bool> region, py::array_t<double> relief) {
        return from_labels(watershed_segment(to_labels(markers), to_mask(region), to_gray(relief)));
      },
      py::arg("markers"), py::arg("region"), py::arg("relief"));
  m.def(
      "compute_area_threshold",
      [](const std::vector<std::int64_t>& areas, double factor, double percentile) {
        return compute_area_threshold(areas, factor, percentile);
      },
      py::arg("areas"), py::arg("factor") = 1.2, py::arg("percentile") = 0.95);
  m.def(
      "srcb_postprocess",
      [](py::array_t<std::int32_t> labels, const SrcbParams& params) {
        return from_labels(srcb_postprocess(to_labels(labels), params));
      },
      py::arg("labels"), py::arg("params") = SrcbParams{});
  m.def(
      "close_postprocess",
      [](py::array_t<std::int32_t> labels, int se_w, int se_h) {
        return from_labels(close_postprocess(to_labels(labels), se_w, se_h));
      },
      py::arg("labels"), py::arg("se_w") = 7, py::arg("se_h") = 7);

  // --- metrics ---
  m.def("evaluate_page", [](py::array_t<std::int32_t> pred, py::array_t<std::int32_t> gt) {
    return metrics_dict(evaluate_page(to_labels(pred), to_labels(gt)));
  });
  m.def("pixel_iu", [](py::array_t<bool> pred, py::array_t<bool> gt) {
    return pixel_iu(to_mask(pred), to_mask(gt));
  });
  m.def("line_iu", [](py::array_t<std::int32_t> pred, py::array_t<std::int32_t> gt) {
    return line_iu(to_labels(pred), to_labels(gt));
  });
  m.def(
      "one_to_one_matches",
      [](py::array_t<std::int32_t> pred, py::array_t<std::int32_t> gt, double threshold) {
        py::list out;
        for (const MatchPair& p : one_to_one_matches(to_labels(pred), to_labels(gt), threshold))
          out.append(py::make_tuple(p.pred_label, p.gt_label, p.score));
        return out;
      },
      py::arg("pred"), py::arg("gt"), py::arg("threshold") = 0.75);
  m.def("dr_ra_fm", [](int matches, int n_gt, int n_pred) {
    const DrRaFm r = dr_ra_fm(matches, n_gt, n_pred);
    return py::make_tuple(r.dr, r.ra, r.fm);
  });

  // --- instance PNG coding ---
  m.def("encode_instance_png", [](py::array_t<std::int32_t> labels) {
    const auto bytes = encode_instance_png(to_labels(labels));
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  });
  m.def("decode_instance_png", [](py::bytes data) {
    const std::string s = data;
    return from_labels(decode_instance_png(
        std::vector<std::uint8_t>(s.begin(), s.end())));
  });
  m.def("instance_color", [](std::int32_t label) {
    const auto c = instance_color(label);
    return py::make_tuple(c[0], c[1], c[2]);
  });

  m.attr("__version__") = "0.1.0";
}
