#pragma once

#include <complex>
#include <vector>

#include "texseg/image.hpp"

namespace texseg {

// DFT-domain representation with the unnormalized forward convention
//   F[a,b] = sum_k f[k1,k2] exp(-j 2*pi (k1*a/d1 + k2*b/d2)),
// so the inverse carries the 1/(d1*d2) factor.  Solver formulas only use
// ratios of spectra and are therefore normalization-independent.
struct Spectrum {
    int rows = 0;
    int cols = 0;
    std::vector<std::complex<double>> data;

    Spectrum() = default;
    Spectrum(int r, int c)
        : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c)) {}

    std::complex<double>& operator()(int i, int j) {
        return data[static_cast<size_t>(i) * cols + j];
    }
    std::complex<double> operator()(int i, int j) const {
        return data[static_cast<size_t>(i) * cols + j];
    }
    size_t size() const { return data.size(); }
};

Spectrum dft_forward(const Image& x);

// Takes the real part after inversion, matching the Re[F^{-1}{...}] usage
// of the frequency-domain solver steps.
Image dft_inverse(const Spectrum& X);

// z1 - 1 evaluated at row frequency a (z1 = exp(j 2 pi a / d1)).
std::complex<double> row_symbol(int a, int d1);
// z2 - 1 evaluated at column frequency b.
std::complex<double> col_symbol(int b, int d2);

// Forward-difference symbol of direction l out of K at frequency (a, b):
//   sin(pi l/K) (z1 - 1) + cos(pi l/K) (z2 - 1).
std::complex<double> dir_symbol(int l, int K, int a, int b, int d1, int d2);

}  // namespace texseg
