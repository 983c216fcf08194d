#pragma once

#include "texseg/image.hpp"

namespace texseg {

// Residual ball A(nu) = { eps : ||T(eps)||_inf <= nu } with T the periodic
// orthonormal Haar transform.
struct NoiseBall {
    double nu = 0.0;
};

inline double shrink(double x, double tau) {
    if (x > tau) return x - tau;
    if (x < -tau) return x + tau;
    return 0.0;
}

// Soft thresholding, the l1 proximal operator.  Exact zeros in the dead
// zone make downstream sparsity counts meaningful.
Image shrink(const Image& x, double tau);

// Coefficient soft-thresholding: T^{-1}(shrink(T(x), nu)).  For the
// orthonormal Haar T, x - cst(x, nu) clips every coefficient to [-nu, nu].
Image cst(const Image& x, double nu);

// Euclidean projection onto A(nu): x - cst(x, nu).
Image project_noise(const Image& x, const NoiseBall& ball);

Image clip_unit(const Image& x);

// p_n[k] = exp(-score_n[k]/xi) / sum_i exp(-score_i[k]/xi), stabilized by
// subtracting the per-pixel minimum score.
PhaseSet softmax_phases(const std::vector<Image>& scores, double xi);

}  // namespace texseg
