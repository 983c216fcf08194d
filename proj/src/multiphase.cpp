#include "texseg/multiphase.hpp"

#include <limits>
#include <stdexcept>

#include "texseg/proximal.hpp"

namespace texseg {

void MultiphaseParams::validate() const {
    if (L < 1 || S < 1 || M < 1) throw std::invalid_argument("multiphase: L, S, M must be >= 1");
    if (N < 2) throw std::invalid_argument("multiphase: need N >= 2 phases");
    if (mu1 < 0 || mu3 <= 0 || mu4 < 0 || c_mu2 <= 0 || nu < 0)
        throw std::invalid_argument("multiphase: invalid weight");
    if (xi <= 0 || tau <= 0 || alpha <= 0 || beta <= 0)
        throw std::invalid_argument("multiphase: xi, tau, alpha, beta must be > 0");
}

MultiphaseState multiphase_segment(const Image& f, const MultiphaseParams& params) {
    params.validate();
    if (!all_finite(f)) throw std::invalid_argument("multiphase_segment: non-finite input");
    const int d1 = f.rows, d2 = f.cols;
    const int N = params.N, L = params.L, S = params.S, M = params.M;
    const double alpha = params.alpha, beta = params.beta;
    const double mu4b = params.mu4 + beta;

    MultiphaseState st;
    st.u = f;
    st.v = Image(d1, d2);
    st.eps = Image(d1, d2);
    st.p.assign(N, Image(d1, d2));
    st.c.resize(N);
    // intensity-quantile seeds, the 8-bit ladder mapped to [0,1]
    for (int n = 0; n < N; ++n)
        st.c[n] = static_cast<double>(n * (255 / N)) / 255.0;
    st.r = make_dual_state(L, d1, d2, params.tau).field;
    st.g = make_dual_state(S, d1, d2, params.tau).field;
    st.q.assign(N, make_dual_state(M, d1, d2, params.tau).field);
    st.lambda = Image(d1, d2);
    // adaptive mu2 needs a starting value before the first t_v exists;
    // seed it from an assumed unit coefficient magnitude
    st.mu2 = beta * params.c_mu2 / std::max(1e-12, 1.0 - alpha * params.c_mu2);

    DualState rd{st.r, params.tau, 0};
    DualState gd{st.g, params.tau, 0};
    std::vector<DualState> qd(N);
    for (int n = 0; n < N; ++n) qd[n] = DualState{st.q[n], params.tau, 0};

    const size_t npix = f.size();
    for (int t = 0; t < params.iters; ++t) {
        Image u_prev = st.u;

        // 1. target of the u problem: blend of the piecewise-constant
        //    approximation and the constraint channel
        Image h(d1, d2);
        for (size_t k = 0; k < npix; ++k) {
            double pc = 0;
            for (int n = 0; n < N; ++n) pc += st.c[n] * st.p[n].data[k];
            h.data[k] = (params.mu4 / mu4b) * pc +
                        (beta / mu4b) * (f.data[k] - st.v.data[k] - st.eps.data[k] +
                                         st.lambda.data[k] / beta);
        }

        // 2-3. dual step on r, then the closed-form u
        Image rtarget = dir_div(rd.field, L) - mu4b * h;
        chambolle_step(rd, rtarget, L);
        st.u = h - (1.0 / mu4b) * dir_div(rd.field, L);

        // 4. dual step on the texture witness field
        Image gtarget = params.mu1 * alpha * dir_div(gd.field, S) - st.lambda - alpha * st.v;
        chambolle_step(gd, gtarget, S);

        // 5. texture shrink; t_v is formed with the carried mu2, then mu2
        //    is refreshed from max|t_v| before thresholding
        Image divg = dir_div(gd.field, S);
        const double bm = beta / st.mu2;
        Image t_v(d1, d2);
        for (size_t k = 0; k < npix; ++k) {
            t_v.data[k] = (bm / (alpha + bm)) * (f.data[k] - st.u.data[k] - st.eps.data[k] +
                                                 st.lambda.data[k] / beta) +
                          (alpha * params.mu1 / (alpha + bm)) * divg.data[k];
        }
        double thr = params.c_mu2 * max_abs(t_v);
        const double thr_cap = (1.0 - 1e-9) / alpha;
        if (thr >= thr_cap) thr = thr_cap;  // keeps mu2 positive and finite
        if (thr > 0) st.mu2 = beta * thr / (1.0 - alpha * thr);
        st.v = shrink(t_v, thr);

        // 6. residual projection
        st.eps = project_noise(f - st.u - st.v + (1.0 / beta) * st.lambda,
                               NoiseBall{params.nu});

        // 7. phase softmax
        std::vector<Image> scores;
        scores.reserve(N);
        for (int n = 0; n < N; ++n) {
            Image s = dir_div(qd[n].field, M);
            const double w = params.mu4 / (2.0 * params.mu3);
            for (size_t k = 0; k < npix; ++k) {
                const double d = st.u.data[k] - st.c[n];
                s.data[k] += w * d * d;
            }
            scores.push_back(std::move(s));
        }
        st.p = softmax_phases(scores, params.xi);

        // 8. phase duals
        for (int n = 0; n < N; ++n) chambolle_step(qd[n], st.p[n], M);

        // 9. means; a numerically empty phase keeps its previous mean
        for (int n = 0; n < N; ++n) {
            double wsum = 0, usum = 0;
            for (size_t k = 0; k < npix; ++k) {
                wsum += st.p[n].data[k];
                usum += st.u.data[k] * st.p[n].data[k];
            }
            if (wsum > 1e-12 * static_cast<double>(npix)) st.c[n] = usum / wsum;
        }

        // multiplier
        st.lambda = st.lambda + beta * (f - st.u - st.v - st.eps);

        const double denom = norm2(u_prev);
        const double diff = norm2(st.u - u_prev);
        st.err_u.push_back((denom == 0.0 || diff == 0.0)
                               ? -std::numeric_limits<double>::infinity()
                               : std::log(diff / denom));
    }

    st.r = rd.field;
    st.g = gd.field;
    for (int n = 0; n < N; ++n) st.q[n] = qd[n].field;
    return st;
}

Image bias_field(const MultiphaseState& state) {
    Image b = state.u;
    for (size_t k = 0; k < b.size(); ++k) {
        double pc = 0;
        for (size_t n = 0; n < state.p.size(); ++n)
            pc += state.c[n] * state.p[n].data[k];
        b.data[k] -= pc;
    }
    return b;
}

Image reconstruct(const MultiphaseState& state) {
    return state.u + state.v + state.eps;
}

std::vector<double> relative_error_trace(const std::vector<Image>& history) {
    if (history.size() < 2)
        throw std::invalid_argument("relative_error_trace: need at least two iterates");
    std::vector<double> trace;
    trace.reserve(history.size() - 1);
    for (size_t t = 1; t < history.size(); ++t) {
        const double denom = norm2(history[t - 1]);
        const double diff = norm2(history[t] - history[t - 1]);
        trace.push_back((denom == 0.0 || diff == 0.0)
                            ? -std::numeric_limits<double>::infinity()
                            : std::log(diff / denom));
    }
    return trace;
}

}  // namespace texseg
