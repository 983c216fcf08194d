#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "texseg/bilevel.hpp"
#include "texseg/diffops.hpp"
#include "texseg/metrics.hpp"
#include "texseg/multiphase.hpp"
#include "texseg/proximal.hpp"
#include "texseg/synthetic.hpp"
#include "texseg/threepart.hpp"
#include "texseg/twophase.hpp"

namespace py = pybind11;
using namespace texseg;

namespace {

Image to_image(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    Image img(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
    std::copy(a.data(), a.data() + img.size(), img.data.begin());
    return img;
}

py::array_t<double> to_array(const Image& img) {
    py::array_t<double> a({img.rows, img.cols});
    std::copy(img.data.begin(), img.data.end(), a.mutable_data());
    return a;
}

py::list to_array_list(const std::vector<Image>& imgs) {
    py::list out;
    for (const Image& im : imgs) out.append(to_array(im));
    return out;
}

}  // namespace

PYBIND11_MODULE(_texseg, m) {
    m.doc() = "Variational grayscale decomposition and segmentation";

    m.def("shrink", [](py::array_t<double, py::array::c_style | py::array::forcecast> x,
                       double tau) { return to_array(shrink(to_image(x), tau)); },
          py::arg("x"), py::arg("tau"), "Elementwise soft thresholding");

    m.def("project_noise",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> x, double nu) {
              return to_array(project_noise(to_image(x), NoiseBall{nu}));
          },
          py::arg("x"), py::arg("nu"),
          "Projection onto the Haar-coefficient sup-norm ball of radius nu");

    m.def("dir_grad",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> f, int K) {
              return to_array_list(dir_grad(to_image(f), K));
          },
          py::arg("f"), py::arg("K"), "Directional forward-difference stack");

    m.def("dir_div",
          [](const std::vector<py::array_t<double, py::array::c_style | py::array::forcecast>>&
                 layers) {
              DirField g;
              for (const auto& a : layers) g.push_back(to_image(a));
              return to_array(dir_div(g, static_cast<int>(g.size())));
          },
          py::arg("layers"), "Backward-difference divergence of a direction stack");

    m.def("mse",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
             py::array_t<double, py::array::c_style | py::array::forcecast> b) {
              return mse(to_image(a), to_image(b));
          });

    m.def("sparsity_pct",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> v) {
              return sparsity_pct(to_image(v));
          });

    m.def("two_plateau", [](int rows, int cols) { return to_array(synth_two_plateau(rows, cols)); });
    m.def("squares_stripes",
          [](int rows, int cols) { return to_array(synth_squares_stripes(rows, cols)); });
    m.def("add_gaussian_noise",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> x, double sigma,
             uint64_t seed) { return to_array(add_gaussian_noise(to_image(x), sigma, seed)); },
          py::arg("x"), py::arg("sigma"), py::arg("seed"));

    m.def("decompose",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> f, int iters,
             double nu) {
              ThreePartParams p;
              p.iters = iters;
              if (nu >= 0) p.nu = nu;
              ThreePartState st = threepart_decompose(to_image(f), p);
              py::dict out;
              out["u"] = to_array(st.u);
              out["v"] = to_array(st.v);
              out["eps"] = to_array(st.eps);
              return out;
          },
          py::arg("f"), py::arg("iters") = 50, py::arg("nu") = -1.0,
          "Three-part split f = u + v + eps with default parameters");

    m.def("twophase",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> f, int iters,
             double nu) {
              TwoPhaseParams p;
              p.iters = iters;
              if (nu >= 0) p.nu = nu;
              TwoPhaseState st = twophase_segment(to_image(f), p);
              py::dict out;
              out["p"] = to_array(st.p);
              out["c1"] = st.c1;
              out["c2"] = st.c2;
              out["v"] = to_array(st.v);
              out["eps"] = to_array(st.eps);
              return out;
          },
          py::arg("f"), py::arg("iters") = 100, py::arg("nu") = -1.0,
          "Two-region piecewise-constant + texture segmentation");

    m.def("multiphase",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> f, int N, int iters,
             double nu) {
              MultiphaseParams p;
              p.N = N;
              p.iters = iters;
              if (nu >= 0) p.nu = nu;
              MultiphaseState st = multiphase_segment(to_image(f), p);
              py::dict out;
              out["u"] = to_array(st.u);
              out["v"] = to_array(st.v);
              out["eps"] = to_array(st.eps);
              out["b"] = to_array(bias_field(st));
              out["p"] = to_array_list(st.p);
              out["c"] = st.c;
              out["err_u"] = st.err_u;
              return out;
          },
          py::arg("f"), py::arg("N") = 3, py::arg("iters") = 200, py::arg("nu") = -1.0,
          "Joint multiphase decomposition and segmentation");

    m.def("bilevel",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> f, int N, int T1,
             int T2) {
              BilevelParams p;
              p.N = N;
              p.T1 = T1;
              p.T2 = T2;
              BilevelState st = bilevel_segment(to_image(f), p);
              PhaseSet hard = bilevel_binarize(st.dec.u, st.c, st.q, p.beta5);
              py::dict out;
              out["u"] = to_array(st.dec.u);
              out["v"] = to_array(st.dec.v);
              out["eps"] = to_array(st.dec.eps);
              out["p"] = to_array_list(hard);
              out["c"] = st.c;
              return out;
          },
          py::arg("f"), py::arg("N") = 3, py::arg("T1") = 10, py::arg("T2") = 10,
          "Alternating decomposition / multiphase labeling with hard output labels");
}
