#pragma once

#include "texseg/diffops.hpp"
#include "texseg/image.hpp"

namespace texseg {

// Two-region piecewise-constant + texture segmentation: a single relaxed
// indicator p with region means c1/c2, sparse texture v, and a bounded
// residual eps, solved by ALM/ADMM with frequency-domain subproblems.
struct TwoPhaseParams {
    int L = 9;
    int S = 9;
    double theta = 0.9;
    double beta4 = 0.03;
    double c_beta1 = 1.0;  // beta1 = c_beta1 * beta4
    double c_beta2 = 1.3;  // beta2 = c_beta2 * beta3
    double c_mu1 = 0.03;   // adaptive sparsity constants
    double c_mu2 = 0.03;
    double mu1 = -1.0;  // fixed overrides; used instead of c_mu* when >= 0
    double mu2 = -1.0;
    double nu = 0.05;
    int iters = 100;

    double beta1() const { return c_beta1 * beta4; }
    double beta3() const { return theta / (1.0 - theta) * beta4; }
    double beta2() const { return c_beta2 * beta3(); }
    void validate() const;
};

struct TwoPhaseState {
    Image p;  // relaxed indicator in [0,1]
    double c1 = 0.0, c2 = 0.0;
    Image v, eps;
    DirField r;        // L layers
    DirField w, g;     // S layers
    DirField lambda1;  // L layers
    DirField lambda2;  // S layers
    Image lambda3, lambda4;
    std::vector<double> err_p;  // ln relative change of p per iteration
};

TwoPhaseState twophase_segment(const Image& f, const TwoPhaseParams& params);

// p_bin[k] = 1 iff p[k] >= threshold.
Image twophase_binarize(const TwoPhaseState& state, double threshold);

}  // namespace texseg
