#include "texseg/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace texseg {

namespace {
// FFTW's planner is not thread-safe; execution of a plan is.
std::mutex planner_mutex;
}  // namespace

Spectrum dft_forward(const Image& x) {
    if (!all_finite(x)) throw std::invalid_argument("dft_forward: non-finite input");
    const int n = x.rows * x.cols;
    std::vector<fftw_complex> in(n), out(n);
    for (int i = 0; i < n; ++i) {
        in[i][0] = x.data[i];
        in[i][1] = 0.0;
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_plan plan = fftw_plan_dft_2d(x.rows, x.cols, in.data(), out.data(),
                                          FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    Spectrum X(x.rows, x.cols);
    for (int i = 0; i < n; ++i) X.data[i] = {out[i][0], out[i][1]};
    return X;
}

Image dft_inverse(const Spectrum& X) {
    const int n = X.rows * X.cols;
    std::vector<fftw_complex> in(n), out(n);
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(X.data[i].real()) || !std::isfinite(X.data[i].imag()))
            throw std::invalid_argument("dft_inverse: non-finite input");
        in[i][0] = X.data[i].real();
        in[i][1] = X.data[i].imag();
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_plan plan = fftw_plan_dft_2d(X.rows, X.cols, in.data(), out.data(),
                                          FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    Image x(X.rows, X.cols);
    const double scale = 1.0 / static_cast<double>(n);
    for (int i = 0; i < n; ++i) x.data[i] = out[i][0] * scale;
    return x;
}

std::complex<double> row_symbol(int a, int d1) {
    const double w = 2.0 * M_PI * a / d1;
    return {std::cos(w) - 1.0, std::sin(w)};
}

std::complex<double> col_symbol(int b, int d2) {
    const double w = 2.0 * M_PI * b / d2;
    return {std::cos(w) - 1.0, std::sin(w)};
}

std::complex<double> dir_symbol(int l, int K, int a, int b, int d1, int d2) {
    const double ang = M_PI * l / K;
    return std::sin(ang) * row_symbol(a, d1) + std::cos(ang) * col_symbol(b, d2);
}

}  // namespace texseg
