#include "texseg/bilevel.hpp"

#include <stdexcept>

#include "texseg/proximal.hpp"

namespace texseg {

void BilevelParams::validate() const {
    decomp.validate();
    if (M < 1) throw std::invalid_argument("bilevel: M must be >= 1");
    if (N < 2) throw std::invalid_argument("bilevel: need N >= 2 phases");
    if (T1 < 1 || T2 < 1) throw std::invalid_argument("bilevel: T1, T2 must be >= 1");
    if (xi <= 0 || mu3 <= 0 || tau <= 0 || beta5 <= 0)
        throw std::invalid_argument("bilevel: xi, mu3, tau, beta5 must be > 0");
}

void level2_step(PhaseSet& p, std::vector<DualState>& q, std::vector<double>& c,
                 const Image& u, int M, int N, double xi, double mu3) {
    const size_t npix = u.size();
    // means from the previous labeling; an empty phase keeps its mean
    for (int n = 0; n < N; ++n) {
        double wsum = 0, usum = 0;
        for (size_t k = 0; k < npix; ++k) {
            wsum += p[n].data[k];
            usum += u.data[k] * p[n].data[k];
        }
        if (wsum > 1e-12 * static_cast<double>(npix)) c[n] = usum / wsum;
    }
    std::vector<Image> scores;
    scores.reserve(N);
    for (int n = 0; n < N; ++n) {
        Image s = dir_div(q[n].field, M);
        for (size_t k = 0; k < npix; ++k) {
            const double d = u.data[k] - c[n];
            s.data[k] += 0.5 * mu3 * d * d;
        }
        scores.push_back(std::move(s));
    }
    p = softmax_phases(scores, xi);
    for (int n = 0; n < N; ++n) chambolle_step(q[n], p[n], M);
}

BilevelState bilevel_segment(const Image& f, const BilevelParams& params) {
    params.validate();
    BilevelState st;
    st.dec = make_threepart_state(f, params.decomp);
    st.p.assign(params.N, Image(f.rows, f.cols));
    st.q.assign(params.N, make_dual_state(params.M, f.rows, f.cols, params.tau));
    st.c.resize(params.N);
    for (int n = 0; n < params.N; ++n)
        st.c[n] = static_cast<double>(n * (255 / params.N)) / 255.0;

    for (int t1 = 0; t1 < params.T1; ++t1) {
        for (int t2 = 0; t2 < params.T2; ++t2)
            threepart_step(st.dec, f, params.decomp);
        if (params.segmentation)
            level2_step(st.p, st.q, st.c, st.dec.u, params.M, params.N, params.xi,
                        params.mu3);
    }
    return st;
}

PhaseSet bilevel_binarize(const Image& u, const std::vector<double>& c,
                          const std::vector<DualState>& q, double beta5) {
    const int N = static_cast<int>(c.size());
    if (static_cast<int>(q.size()) != N)
        throw std::invalid_argument("bilevel_binarize: c/q size mismatch");
    std::vector<Image> scores;
    scores.reserve(N);
    for (int n = 0; n < N; ++n) {
        Image s = dir_div(q[n].field, static_cast<int>(q[n].field.size()));
        for (size_t k = 0; k < u.size(); ++k) {
            const double d = u.data[k] - c[n];
            s.data[k] += 0.5 * beta5 * d * d;
        }
        scores.push_back(std::move(s));
    }
    PhaseSet out(N, Image(u.rows, u.cols));
    for (size_t k = 0; k < u.size(); ++k) {
        int best = 0;
        for (int n = 1; n < N; ++n)
            if (scores[n].data[k] < scores[best].data[k]) best = n;
        out[best].data[k] = 1.0;
    }
    return out;
}

Image bilevel_bias(const BilevelState& state) {
    Image b = state.dec.u;
    for (size_t k = 0; k < b.size(); ++k) {
        double pc = 0;
        for (size_t n = 0; n < state.p.size(); ++n)
            pc += state.c[n] * state.p[n].data[k];
        b.data[k] -= pc;
    }
    return b;
}

}  // namespace texseg
