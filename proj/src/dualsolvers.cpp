#include "texseg/dualsolvers.hpp"

#include <stdexcept>

#include "texseg/proximal.hpp"

namespace texseg {

DualState make_dual_state(int K, int rows, int cols, double tau) {
    DualState s;
    s.field.assign(K, Image(rows, cols));
    s.step = tau;
    return s;
}

void chambolle_step(DualState& q, const Image& target, int K) {
    DirField grad = dir_grad(target, K);
    Image mag = field_magnitude(grad);
    for (int l = 0; l < K; ++l) {
        for (size_t i = 0; i < mag.size(); ++i) {
            q.field[l].data[i] = (q.field[l].data[i] + q.step * grad[l].data[i]) /
                                 (1.0 + q.step * mag.data[i]);
        }
    }
    // rounding can push a pixel vector slightly outside the unit ball
    Image qmag = field_magnitude(q.field);
    for (size_t i = 0; i < qmag.size(); ++i) {
        if (qmag.data[i] > 1.0) {
            for (int l = 0; l < K; ++l) q.field[l].data[i] /= qmag.data[i];
        }
    }
    ++q.iterations;
}

std::pair<Image, DualState> dtv_l2_solve(const Image& h, double mu, int K,
                                         double tau, int iters) {
    if (mu <= 0) throw std::invalid_argument("dtv_l2_solve: mu must be > 0");
    DualState r = make_dual_state(K, h.rows, h.cols, tau);
    for (int t = 0; t < iters; ++t) {
        Image target = dir_div(r.field, K) - mu * h;
        chambolle_step(r, target, K);
    }
    Image u = h - (1.0 / mu) * dir_div(r.field, K);
    return {u, r};
}

GsL1Result gs_l1_solve(const Image& f, double mu, double beta, double alpha,
                       int S, double tau, int iters) {
    if (alpha <= 0 || beta <= 0)
        throw std::invalid_argument("gs_l1_solve: weights must be > 0");
    if (mu < 0) throw std::invalid_argument("gs_l1_solve: mu must be >= 0");
    GsL1Result res;
    res.g = make_dual_state(S, f.rows, f.cols, tau);
    res.v = Image(f.rows, f.cols);
    res.lambda1 = Image(f.rows, f.cols);
    const double denom = alpha + beta;
    for (int t = 0; t < iters; ++t) {
        Image target = alpha * mu * dir_div(res.g.field, S) - res.lambda1 - alpha * res.v;
        chambolle_step(res.g, target, S);
        Image divg = dir_div(res.g.field, S);
        Image arg = (beta / denom) * f + (alpha * mu / denom) * divg -
                    (1.0 / denom) * res.lambda1;
        res.v = shrink(arg, 1.0 / denom);
        res.lambda1 = res.lambda1 + alpha * (res.v - mu * divg);
    }
    return res;
}

PdPhasesResult smoothed_pd_phases(const Image& u, const std::vector<double>& c,
                                  double weight, int M, double xi, double tau,
                                  int iters, std::vector<DualState> q0) {
    const int N = static_cast<int>(c.size());
    if (N < 2) throw std::invalid_argument("smoothed_pd_phases: need N >= 2");
    PdPhasesResult res;
    if (q0.empty()) {
        for (int n = 0; n < N; ++n)
            res.q.push_back(make_dual_state(M, u.rows, u.cols, tau));
    } else {
        if (static_cast<int>(q0.size()) != N)
            throw std::invalid_argument("smoothed_pd_phases: q0 size mismatch");
        res.q = std::move(q0);
    }
    for (int t = 0; t < iters; ++t) {
        std::vector<Image> scores;
        scores.reserve(N);
        for (int n = 0; n < N; ++n) {
            Image s = dir_div(res.q[n].field, M);
            for (size_t i = 0; i < s.size(); ++i) {
                const double d = u.data[i] - c[n];
                s.data[i] += weight * d * d;
            }
            scores.push_back(std::move(s));
        }
        res.p = softmax_phases(scores, xi);
        for (int n = 0; n < N; ++n) chambolle_step(res.q[n], res.p[n], M);
    }
    return res;
}

}  // namespace texseg
