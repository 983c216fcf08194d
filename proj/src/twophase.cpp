#include "texseg/twophase.hpp"

#include <limits>
#include <stdexcept>

#include "texseg/fft.hpp"
#include "texseg/proximal.hpp"

namespace texseg {

void TwoPhaseParams::validate() const {
    if (L < 1 || S < 1) throw std::invalid_argument("twophase: L, S must be >= 1");
    if (theta <= 0 || theta >= 1) throw std::invalid_argument("twophase: theta must be in (0,1)");
    if (beta4 <= 0 || beta1() <= 0 || beta2() <= 0 || beta3() <= 0)
        throw std::invalid_argument("twophase: generated betas must be > 0");
    if (nu < 0) throw std::invalid_argument("twophase: nu must be >= 0");
    if (mu1 < 0 && c_mu1 <= 0) throw std::invalid_argument("twophase: need mu1 or c_mu1");
    if (mu2 < 0 && c_mu2 <= 0) throw std::invalid_argument("twophase: need mu2 or c_mu2");
}

TwoPhaseState twophase_segment(const Image& f, const TwoPhaseParams& params) {
    params.validate();
    if (!all_finite(f)) throw std::invalid_argument("twophase_segment: non-finite input");
    const int L = params.L, S = params.S;
    const int d1 = f.rows, d2 = f.cols;
    const size_t npix = f.size();
    const double b1 = params.beta1(), b2 = params.beta2(), b3 = params.beta3(),
                 b4 = params.beta4;

    TwoPhaseState st;
    // seed the indicator by a mean split; the loop is agnostic to the
    // particular binary seed
    const double favg = mean(f);
    st.p = Image(d1, d2);
    for (size_t k = 0; k < npix; ++k) st.p.data[k] = f.data[k] >= favg ? 1.0 : 0.0;
    double cmax = f.data[0], cmin = f.data[0];
    for (double x : f.data) {
        cmax = std::max(cmax, x);
        cmin = std::min(cmin, x);
    }
    st.c1 = cmax;
    st.c2 = cmin;
    st.v = Image(d1, d2);
    st.eps = Image(d1, d2);
    st.r.assign(L, Image(d1, d2));
    st.w.assign(S, Image(d1, d2));
    st.g.assign(S, Image(d1, d2));
    st.lambda1.assign(L, Image(d1, d2));
    st.lambda2.assign(S, Image(d1, d2));
    st.lambda3 = Image(d1, d2);
    st.lambda4 = Image(d1, d2);

    for (int t = 0; t < params.iters; ++t) {
        const Image p_entry = st.p;
        // 1-2. region means from the texture- and residual-corrected image
        Image base = f - st.v - st.eps + (1.0 / b4) * st.lambda4;
        double s1 = 0, s2 = 0, w1 = 0, w2 = 0;
        for (size_t k = 0; k < npix; ++k) {
            s1 += base.data[k] * st.p.data[k];
            w1 += st.p.data[k];
            s2 += base.data[k] * (1.0 - st.p.data[k]);
            w2 += 1.0 - st.p.data[k];
        }
        if (w1 > 1e-8 * static_cast<double>(npix)) st.c1 = s1 / w1;
        if (w2 > 1e-8 * static_cast<double>(npix)) st.c2 = s2 / w2;

        // 3. r shrinks against the directional differences of p
        for (int a = 0; a < L; ++a) {
            Image arg = dir_fwd_diff(st.p, a, L) - (1.0 / b1) * st.lambda1[a];
            st.r[a] = shrink(arg, 1.0 / b1);
        }

        // 4. w shrinks (fixed mu1 or adaptive per direction)
        for (int a = 0; a < S; ++a) {
            Image t_w = st.g[a] - (1.0 / b2) * st.lambda2[a];
            const double thr =
                params.mu1 >= 0 ? params.mu1 / b2 : params.c_mu1 * max_abs(t_w);
            st.w[a] = shrink(t_w, thr);
        }

        // 5. g solve per direction; cross terms use the previous sweep's
        //    spectra throughout (Jacobi within the block)
        std::vector<Spectrum> Gprev(S);
        for (int a = 0; a < S; ++a) Gprev[a] = dft_forward(st.g[a]);
        Spectrum V = dft_forward(st.v);
        Spectrum L3s = dft_forward(st.lambda3);
        for (int a = 0; a < S; ++a) {
            Spectrum W = dft_forward(st.w[a]);
            Spectrum L2s = dft_forward(st.lambda2[a]);
            Spectrum Gnew(d1, d2);
            for (int i = 0; i < d1; ++i) {
                for (int j = 0; j < d2; ++j) {
                    const std::complex<double> sa = dir_symbol(a, S, i, j, d1, d2);
                    const double A = b2 + b3 * std::norm(sa);
                    std::complex<double> cross = 0;
                    for (int s = 0; s < S; ++s) {
                        if (s == a) continue;
                        cross += dir_symbol(s, S, i, j, d1, d2) * Gprev[s](i, j);
                    }
                    const std::complex<double> B =
                        b2 * (W(i, j) + L2s(i, j) / b2) +
                        b3 * std::conj(sa) * (V(i, j) - cross + L3s(i, j) / b3);
                    Gnew(i, j) = B / A;
                }
            }
            st.g[a] = dft_inverse(Gnew);
        }

        // 6. texture shrink combining the witness synthesis and the
        //    per-region fidelity channels
        Image synth = dir_div_fwd(st.g, S);
        Image J(d1, d2);
        for (size_t k = 0; k < npix; ++k) {
            const double r1 = f.data[k] - st.c1 - st.eps.data[k] + st.lambda4.data[k] / b4;
            const double r2 = f.data[k] - st.c2 - st.eps.data[k] + st.lambda4.data[k] / b4;
            J.data[k] = (b3 / (b3 + b4)) * (synth.data[k] - st.lambda3.data[k] / b3) +
                        (b4 / (b3 + b4)) *
                            (r1 * st.p.data[k] + r2 * (1.0 - st.p.data[k]));
        }
        const double vthr =
            params.mu2 >= 0 ? params.mu2 / (b3 + b4) : params.c_mu2 * max_abs(J);
        st.v = shrink(J, vthr);

        // 7. p solve in the frequency domain, then clamp to [0,1]
        std::vector<Spectrum> R(L), L1s(L);
        for (int l = 0; l < L; ++l) {
            R[l] = dft_forward(st.r[l]);
            L1s[l] = dft_forward(st.lambda1[l]);
        }
        Image himg(d1, d2);
        for (size_t k = 0; k < npix; ++k) {
            const double a1 = f.data[k] - st.c1 - st.v.data[k] - st.eps.data[k] +
                              st.lambda4.data[k] / b4;
            const double a2 = f.data[k] - st.c2 - st.v.data[k] - st.eps.data[k] +
                              st.lambda4.data[k] / b4;
            himg.data[k] = -0.5 * a1 * a1 + 0.5 * a2 * a2;
        }
        Spectrum H = dft_forward(himg);
        Spectrum P(d1, d2);
        for (int i = 0; i < d1; ++i) {
            for (int j = 0; j < d2; ++j) {
                double X = b4;
                std::complex<double> Y = b4 * H(i, j);
                for (int l = 0; l < L; ++l) {
                    const std::complex<double> sl = dir_symbol(l, L, i, j, d1, d2);
                    X += b1 * std::norm(sl);
                    Y += b1 * std::conj(sl) * (R[l](i, j) + L1s[l](i, j) / b1);
                }
                P(i, j) = Y / X;
            }
        }
        st.p = clip_unit(dft_inverse(P));

        // 8. residual projection with per-region targets
        Image eps_tilde(d1, d2);
        for (size_t k = 0; k < npix; ++k) {
            const double r1 = f.data[k] - st.c1 - st.v.data[k] + st.lambda4.data[k] / b4;
            const double r2 = f.data[k] - st.c2 - st.v.data[k] + st.lambda4.data[k] / b4;
            eps_tilde.data[k] = r1 * st.p.data[k] + r2 * (1.0 - st.p.data[k]);
        }
        st.eps = project_noise(eps_tilde, NoiseBall{params.nu});

        // II. multipliers
        for (int a = 0; a < L; ++a)
            st.lambda1[a] = st.lambda1[a] + b1 * (st.r[a] - dir_fwd_diff(st.p, a, L));
        for (int a = 0; a < S; ++a)
            st.lambda2[a] = st.lambda2[a] + b2 * (st.w[a] - st.g[a]);
        st.lambda3 = st.lambda3 + b3 * (st.v - dir_div_fwd(st.g, S));
        Image resid(d1, d2);
        for (size_t k = 0; k < npix; ++k) {
            const double r1 = f.data[k] - st.c1 - st.v.data[k] - st.eps.data[k];
            const double r2 = f.data[k] - st.c2 - st.v.data[k] - st.eps.data[k];
            resid.data[k] = r1 * st.p.data[k] + r2 * (1.0 - st.p.data[k]);
        }
        st.lambda4 = st.lambda4 + b4 * resid;

        const double denom = norm2(p_entry);
        const double diff = norm2(st.p - p_entry);
        st.err_p.push_back((denom == 0.0 || diff == 0.0)
                               ? -std::numeric_limits<double>::infinity()
                               : std::log(diff / denom));
    }
    return st;
}

Image twophase_binarize(const TwoPhaseState& state, double threshold) {
    if (threshold <= 0 || threshold >= 1)
        throw std::invalid_argument("twophase_binarize: threshold must be in (0,1)");
    Image out(state.p.rows, state.p.cols);
    for (size_t k = 0; k < state.p.size(); ++k)
        out.data[k] = state.p.data[k] >= threshold ? 1.0 : 0.0;
    return out;
}

}  // namespace texseg
