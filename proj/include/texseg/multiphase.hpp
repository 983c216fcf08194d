#pragma once

#include "texseg/dualsolvers.hpp"
#include "texseg/image.hpp"

namespace texseg {

// Single-loop ALM model: f = u + v + eps with u additionally tied to a
// piecewise-constant approximation sum_n c_n p_n through a smoothed
// multiphase labeling.  The bias field b = u - sum_n c_n p_n is derived,
// never stored.
struct MultiphaseParams {
    int L = 2, S = 2, M = 2;
    int N = 3;
    double mu1 = 0.1;   // texture ball radius
    double mu3 = 0.1;   // phase-boundary length weight
    double mu4 = 0.01;  // bias-field weight
    double c_mu2 = 0.14;  // adaptive texture-sparsity constant
    double nu = 10.0 / 255.0;
    double xi = 0.001;
    double alpha = 0.1;  // quadratic penalty tying v to its witness field
    double beta = 0.04;  // ALM penalty on f = u + v + eps
    double tau = 0.1;
    int iters = 500;
    void validate() const;
};

struct MultiphaseState {
    Image u, v, eps;
    PhaseSet p;
    std::vector<double> c;
    DirField r;                  // L-layer dual of the u problem
    DirField g;                  // S-layer texture witness field
    std::vector<DirField> q;     // N fields of M layers, phase duals
    Image lambda;
    double mu2 = 0.0;            // adaptive, carried across iterations
    std::vector<double> err_u;   // log relative change per iteration
};

MultiphaseState multiphase_segment(const Image& f, const MultiphaseParams& params);

// b = u - sum_n c_n p_n
Image bias_field(const MultiphaseState& state);

// sum_n c_n p_n + b + v + eps reconstruction; identical to u + v + eps.
Image reconstruct(const MultiphaseState& state);

// Err_u(t) = ln(||u_t - u_{t-1}|| / ||u_{t-1}||); -inf when the previous
// iterate has zero norm or the difference vanishes.
std::vector<double> relative_error_trace(const std::vector<Image>& history);

}  // namespace texseg
