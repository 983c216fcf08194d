#include "texseg/threepart.hpp"

#include <limits>
#include <stdexcept>

#include "texseg/fft.hpp"
#include "texseg/proximal.hpp"

namespace texseg {

void ThreePartParams::validate() const {
    if (L < 1 || S < 1) throw std::invalid_argument("threepart: L, S must be >= 1");
    if (theta <= 0 || theta >= 1) throw std::invalid_argument("threepart: theta must be in (0,1)");
    if (beta4 <= 0 || beta1() <= 0 || beta2() <= 0 || beta3() <= 0)
        throw std::invalid_argument("threepart: generated betas must be > 0");
    if (nu < 0) throw std::invalid_argument("threepart: nu must be >= 0");
    if (gamma <= 0) throw std::invalid_argument("threepart: gamma must be > 0");
}

ThreePartState make_threepart_state(const Image& f, const ThreePartParams& params) {
    params.validate();
    ThreePartState st;
    st.u = f;  // u starts at the input; everything else at zero
    st.v = Image(f.rows, f.cols);
    st.eps = Image(f.rows, f.cols);
    st.r.assign(params.L, Image(f.rows, f.cols));
    st.w.assign(params.S, Image(f.rows, f.cols));
    st.g.assign(params.S, Image(f.rows, f.cols));
    st.lambda1.assign(params.L, Image(f.rows, f.cols));
    st.lambda2.assign(params.S, Image(f.rows, f.cols));
    st.lambda3 = Image(f.rows, f.cols);
    st.lambda4 = Image(f.rows, f.cols);
    return st;
}

void threepart_step(ThreePartState& state, const Image& f, const ThreePartParams& params) {
    require_same_dims(state.u, f, "threepart_step");
    const Image u_entry = state.u;
    const int L = params.L, S = params.S;
    const int d1 = f.rows, d2 = f.cols;
    const double b1 = params.beta1(), b2 = params.beta2(), b3 = params.beta3(),
                 b4 = params.beta4;

    // r shrinks against the directional differences of the previous u
    for (int b = 0; b < L; ++b) {
        Image arg = dir_fwd_diff(state.u, b, L) - (1.0 / b1) * state.lambda1[b];
        state.r[b] = shrink(arg, 1.0 / b1);
    }

    // w shrinks with per-direction adaptive mu1 = c_mu1 * beta2 * max|t_w|
    for (int a = 0; a < S; ++a) {
        Image t_w = state.g[a] - (1.0 / b2) * state.lambda2[a];
        state.w[a] = shrink(t_w, params.c_mu1 * max_abs(t_w));
    }

    // g solve per direction in the frequency domain; the cross-direction
    // sum uses the most recently updated spectra (Gauss-Seidel over a)
    std::vector<Spectrum> G(S);
    for (int a = 0; a < S; ++a) G[a] = dft_forward(state.g[a]);
    Spectrum V = dft_forward(state.v);
    Spectrum L3 = dft_forward(state.lambda3);
    for (int a = 0; a < S; ++a) {
        Spectrum W = dft_forward(state.w[a]);
        Spectrum L2 = dft_forward(state.lambda2[a]);
        Spectrum Gnew(d1, d2);
        for (int i = 0; i < d1; ++i) {
            for (int j = 0; j < d2; ++j) {
                const std::complex<double> sa = dir_symbol(a, S, i, j, d1, d2);
                const double A = b2 + b3 * std::norm(sa);
                std::complex<double> cross = 0;
                for (int s = 0; s < S; ++s) {
                    if (s == a) continue;
                    cross += dir_symbol(s, S, i, j, d1, d2) * G[s](i, j);
                }
                const std::complex<double> B =
                    b2 * (W(i, j) + L2(i, j) / b2) +
                    b3 * std::conj(sa) * (V(i, j) - cross + L3(i, j) / b3);
                Gnew(i, j) = B / A;
            }
        }
        state.g[a] = dft_inverse(Gnew);
        G[a] = std::move(Gnew);
    }

    // v shrink with adaptive mu2 = c_mu2 * (beta3+beta4) * max|t_v|
    Image synth = dir_div_fwd(state.g, S);
    Image t_v = (b3 / (b3 + b4)) * (synth - (1.0 / b3) * state.lambda3) +
                (b4 / (b3 + b4)) * (f - state.u - state.eps + (1.0 / b4) * state.lambda4);
    state.v = shrink(t_v, params.c_mu2 * max_abs(t_v));

    // u solve in the frequency domain
    Spectrum F = dft_forward(f);
    Spectrum Vn = dft_forward(state.v);
    Spectrum E = dft_forward(state.eps);
    Spectrum L4 = dft_forward(state.lambda4);
    std::vector<Spectrum> R(L), L1(L);
    for (int l = 0; l < L; ++l) {
        R[l] = dft_forward(state.r[l]);
        L1[l] = dft_forward(state.lambda1[l]);
    }
    Spectrum U(d1, d2);
    for (int i = 0; i < d1; ++i) {
        for (int j = 0; j < d2; ++j) {
            double X = b4;
            std::complex<double> Y =
                b4 * (F(i, j) - Vn(i, j) - E(i, j) + L4(i, j) / b4);
            for (int l = 0; l < L; ++l) {
                const std::complex<double> sl = dir_symbol(l, L, i, j, d1, d2);
                X += b1 * std::norm(sl);
                Y += b1 * std::conj(sl) * (R[l](i, j) + L1[l](i, j) / b1);
            }
            U(i, j) = Y / X;
        }
    }
    state.u = dft_inverse(U);

    // residual projection onto the coefficient ball
    state.eps = project_noise(f - state.u - state.v + (1.0 / b4) * state.lambda4,
                              NoiseBall{params.nu});

    // multiplier updates, relaxed by gamma
    for (int b = 0; b < L; ++b)
        state.lambda1[b] =
            state.lambda1[b] + params.gamma * b1 * (state.r[b] - dir_fwd_diff(state.u, b, L));
    for (int a = 0; a < S; ++a)
        state.lambda2[a] =
            state.lambda2[a] + params.gamma * b2 * (state.w[a] - state.g[a]);
    state.lambda3 =
        state.lambda3 + params.gamma * b3 * (state.v - dir_div_fwd(state.g, S));
    state.lambda4 =
        state.lambda4 + params.gamma * b4 * (f - state.u - state.v - state.eps);

    const double denom = norm2(u_entry);
    const double diff = norm2(state.u - u_entry);
    state.err_u.push_back((denom == 0.0 || diff == 0.0)
                              ? -std::numeric_limits<double>::infinity()
                              : std::log(diff / denom));
}

ThreePartState threepart_decompose(const Image& f, const ThreePartParams& params) {
    ThreePartState st = make_threepart_state(f, params);
    for (int t = 0; t < params.iters; ++t) threepart_step(st, f, params);
    return st;
}

}  // namespace texseg
