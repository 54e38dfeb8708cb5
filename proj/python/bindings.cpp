#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tilt/candywrap.hpp"
#include "tilt/error.hpp"
#include "tilt/phantoms.hpp"
#include "tilt/pipeline.hpp"
#include "tilt/projection.hpp"
#include "tilt/tvreg.hpp"

namespace py = pybind11;
using namespace tilt;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const Image& img) {
  Array a({img.rows, img.cols});
  std::copy(img.data.begin(), img.data.end(), a.mutable_data());
  return a;
}

Image to_image(const Array& a, double pixel_size) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  Image img(int(a.shape(0)), int(a.shape(1)), pixel_size);
  std::copy(a.data(), a.data() + img.size(), img.data.begin());
  return img;
}

py::array_t<bool> to_bool(const BinaryGrid& g) {
  py::array_t<bool> a({g.rows(), g.cols()});
  auto* p = a.mutable_data();
  for (size_t i = 0; i < g.raw().size(); ++i) p[i] = g.raw()[i] != 0;
  return a;
}

MaskKind mask_kind(const std::string& name) {
  if (name == "+R") return MaskKind::PlusR;
  if (name == "+L") return MaskKind::PlusL;
  if (name == "-R") return MaskKind::MinusR;
  if (name == "-L") return MaskKind::MinusL;
  throw py::value_error("mask kind must be one of +R, +L, -R, -L");
}

}  // namespace

PYBIND11_MODULE(_tilt, m) {
  m.doc() = "Boundary recovery for limited-angle tomography";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, (std::string(error_code_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("fixture_names", &fixture_names);

  m.def(
      "phantom", [](const std::string& name, int size) { return to_array(make_phantom(fixture(name, size))); },
      py::arg("name"), py::arg("size") = 256);

  m.def(
      "cw_distance", [](double x, double y, double theta) { return cw_distance_canonical(x, y, theta); },
      py::arg("x"), py::arg("y"), py::arg("theta"));

  m.def(
      "mask", [](const std::string& kind, double s, int n) { return to_bool(basic_mask(mask_kind(kind), s, n).grid); },
      py::arg("kind"), py::arg("s"), py::arg("n") = 64);

  m.def(
      "project",
      [](const Array& image, std::vector<double> angles, double pixel_size, double noise, uint64_t seed) {
        Image img = to_image(image, pixel_size);
        if (img.rows != img.cols) throw py::value_error("image must be square");
        auto g = make_geometry(img.rows, std::move(angles), pixel_size);
        Sinogram s = add_noise(forward_project(img, g), noise, seed);
        Array out({int(g.views()), g.detector_count});
        std::copy(s.data.begin(), s.data.end(), out.mutable_data());
        return out;
      },
      py::arg("image"), py::arg("angles"), py::arg("pixel_size"), py::arg("noise") = 0.0, py::arg("seed") = 0);

  m.def(
      "reconstruct",
      [](const Array& sino, std::vector<double> angles, int size, double pixel_size, double alpha, int iterations) {
        auto g = make_geometry(size, std::move(angles), pixel_size);
        if (sino.ndim() != 2 || size_t(sino.shape(0)) != g.views() || sino.shape(1) != g.detector_count)
          throw py::value_error("sinogram shape does not match the geometry");
        Sinogram s;
        s.geometry = g;
        s.data.assign(sino.data(), sino.data() + sino.size());
        TvConfig cfg;
        cfg.alpha = alpha;
        cfg.iterations = iterations;
        TvResult r;
        {
          py::gil_scoped_release release;
          r = reconstruct_tv(s, g, cfg);
        }
        return to_array(r.image);
      },
      py::arg("sinogram"), py::arg("angles"), py::arg("size"), py::arg("pixel_size"), py::arg("alpha") = 1.0,
      py::arg("iterations") = 500);

  m.def(
      "tilt",
      [](const Array& image, int level, double threshold, int line_length, int mask_n, double s_max) {
        TiltConfig cfg;
        cfg.level = level;
        cfg.threshold = threshold;
        cfg.line_length = line_length;
        cfg.mask_n = mask_n;
        cfg.s_max = s_max;
        Image img = to_image(image, 1.0);
        TiltReport rep;
        {
          py::gil_scoped_release release;
          rep = run_tilt(img, cfg);
        }
        py::list comps;
        for (const auto& f : rep.found) {
          py::array_t<double> curve({py::ssize_t(f.spline.curve.size()), py::ssize_t(2)});
          auto* p = curve.mutable_data();
          for (size_t i = 0; i < f.spline.curve.size(); ++i) p[2 * i] = f.spline.curve[i].x, p[2 * i + 1] = f.spline.curve[i].y;
          py::dict d;
          d["birth_s"] = f.birth_s;
          d["voxels"] = f.matrix.count;
          d["projection"] = to_bool(f.projection);
          d["arcs"] = f.spline.arcs;
          d["curve"] = curve;
          comps.append(d);
        }
        py::dict out;
        out["complete"] = rep.complete;
        out["final_s"] = rep.final_s;
        out["subband_size"] = rep.subband_size;
        out["components"] = comps;
        return out;
      },
      py::arg("image"), py::arg("level") = 7, py::arg("threshold") = 0.1, py::arg("line_length") = 9,
      py::arg("mask_n") = 64, py::arg("s_max") = 12.0);
}
