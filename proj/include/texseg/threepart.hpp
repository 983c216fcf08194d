#pragma once

#include "texseg/diffops.hpp"
#include "texseg/image.hpp"

namespace texseg {

// ALM/ADMM three-part decomposition f = u + v + eps: directional-TV
// smooth part u, sparse directional texture v synthesized from a field g,
// and a coefficient-bounded residual eps.
struct ThreePartParams {
    int L = 9;
    int S = 9;
    double c_mu1 = 0.03;
    double c_mu2 = 0.03;
    double c_beta1 = 1.0;
    double c_beta2 = 1.3;
    double theta = 0.9;  // in (0,1); balances beta3 against beta4
    double beta4 = 0.04;
    double nu = 16.0 / 255.0;
    double gamma = 1.0;  // relaxation of the multiplier steps
    int iters = 100;

    double beta1() const { return c_beta1 * beta4; }
    double beta3() const { return theta / (1.0 - theta) * beta4; }
    double beta2() const { return c_beta2 * beta3(); }
    void validate() const;
};

struct ThreePartState {
    Image u, v, eps;
    DirField r;        // L layers, directional differences of u
    DirField w, g;     // S layers each; w is the sparse copy of g
    DirField lambda1;  // L layers
    DirField lambda2;  // S layers
    Image lambda3, lambda4;
    std::vector<double> err_u;  // ln relative change of u per step
};

ThreePartState make_threepart_state(const Image& f, const ThreePartParams& params);

// One full sweep: r/w shrinks, Gauss-Seidel frequency-domain g solve,
// v shrink with adaptive mu2, frequency-domain u solve, residual
// projection, then the four gamma-relaxed multiplier updates.
void threepart_step(ThreePartState& state, const Image& f, const ThreePartParams& params);

ThreePartState threepart_decompose(const Image& f, const ThreePartParams& params);

}  // namespace texseg
