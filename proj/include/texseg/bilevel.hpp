#pragma once

#include "texseg/dualsolvers.hpp"
#include "texseg/threepart.hpp"

namespace texseg {

// Outer loop alternating the three-part decomposition (level 1) with one
// smoothed multiphase labeling step on its smooth component (level 2).
struct BilevelParams {
    ThreePartParams decomp;  // level-1 knobs; decomp.iters is ignored here
    int M = 2;
    int N = 3;
    double xi = 0.001;
    double mu3 = 0.1;
    double tau = 0.1;
    int T1 = 50;  // outer iterations
    int T2 = 50;  // level-1 steps per outer iteration
    double beta5 = 100.0;  // binarization weight
    bool segmentation = true;  // false runs level 1 only
    void validate() const;
};

struct BilevelState {
    ThreePartState dec;
    PhaseSet p;
    std::vector<DualState> q;  // N fields of M layers
    std::vector<double> c;
};

// One level-2 sweep: phase means (empty phases keep their mean), softmax
// labeling with boundary-length duals, then the q dual step.
void level2_step(PhaseSet& p, std::vector<DualState>& q, std::vector<double>& c,
                 const Image& u, int M, int N, double xi, double mu3);

BilevelState bilevel_segment(const Image& f, const BilevelParams& params);

// Hard labeling: phase h wins at a pixel iff it minimizes
// div^-_M q_n + beta5/2 (u - c_n)^2; ties go to the lowest index.
PhaseSet bilevel_binarize(const Image& u, const std::vector<double>& c,
                          const std::vector<DualState>& q, double beta5);

// b = u - sum_n c_n p_n for the bilevel state.
Image bilevel_bias(const BilevelState& state);

}  // namespace texseg
