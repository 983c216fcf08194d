#pragma once

#include <utility>

#include "texseg/diffops.hpp"
#include "texseg/image.hpp"

namespace texseg {

// Chambolle-style dual field; every layer vector stays inside the
// per-pixel unit ball after each update.
struct DualState {
    DirField field;
    double step = 0.1;
    int iterations = 0;
};

// Witness ball for the texture norm: ||v||_G <= mu1 iff v = div^- g with
// ||g||_inf <= mu1.
struct GsBall {
    double mu1 = 0.0;
};

DualState make_dual_state(int K, int rows, int cols, double tau);

// One semi-implicit dual update of q against target G:
//   q <- (q + tau grad(G)) / (1 + tau |grad(G)|),
// followed by renormalization of any per-pixel vector that exceeds the
// unit sphere by rounding.
void chambolle_step(DualState& q, const Image& target, int K);

// Directional-TV + l2 fidelity: min_u ||grad_K u||_1 + mu/2 ||u - h||^2.
// Dual iteration on r with target div^- r - mu*h; u = h - div^- r / mu.
std::pair<Image, DualState> dtv_l2_solve(const Image& h, double mu, int K,
                                         double tau, int iters);

struct GsL1Result {
    Image v;
    DualState g;
    Image lambda1;
};

// Texture-ball + l1 + l2 fidelity model solved with an augmented
// Lagrangian: alternate the g dual step, the v shrink, and the multiplier
// update lambda1 += alpha (v - mu div^- g).
GsL1Result gs_l1_solve(const Image& f, double mu, double beta, double alpha,
                       int S, double tau, int iters);

struct PdPhasesResult {
    PhaseSet p;
    std::vector<DualState> q;
};

// Smoothed primal-dual multiphase labeling: alternate
//   p = softmax_phases(weight (u - c_n)^2 + div^-_M q_n, xi)
//   q_n <- chambolle step against p_n.
// q0 empty means zero initialization.
PdPhasesResult smoothed_pd_phases(const Image& u, const std::vector<double>& c,
                                  double weight, int M, double xi, double tau,
                                  int iters, std::vector<DualState> q0 = {});

}  // namespace texseg
