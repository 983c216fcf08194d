#include "texseg/proximal.hpp"

#include <stdexcept>

#include "texseg/haar.hpp"

namespace texseg {

Image shrink(const Image& x, double tau) {
    if (tau < 0) throw std::invalid_argument("shrink: negative threshold");
    Image out(x.rows, x.cols);
    for (size_t i = 0; i < x.size(); ++i) out.data[i] = shrink(x.data[i], tau);
    return out;
}

Image cst(const Image& x, double nu) {
    if (nu < 0) throw std::invalid_argument("cst: negative threshold");
    return haar_inverse(shrink(haar_forward(x), nu));
}

Image project_noise(const Image& x, const NoiseBall& ball) {
    return x - cst(x, ball.nu);
}

Image clip_unit(const Image& x) {
    Image out(x.rows, x.cols);
    for (size_t i = 0; i < x.size(); ++i)
        out.data[i] = std::min(1.0, std::max(0.0, x.data[i]));
    return out;
}

PhaseSet softmax_phases(const std::vector<Image>& scores, double xi) {
    if (xi <= 0) throw std::invalid_argument("softmax_phases: xi must be > 0");
    const int N = static_cast<int>(scores.size());
    if (N < 2) throw std::invalid_argument("softmax_phases: need at least two phases");
    for (int n = 1; n < N; ++n) require_same_dims(scores[0], scores[n], "softmax_phases");

    PhaseSet p(N, Image(scores[0].rows, scores[0].cols));
    const size_t npix = scores[0].size();
    for (size_t k = 0; k < npix; ++k) {
        double lo = scores[0].data[k];
        for (int n = 1; n < N; ++n) lo = std::min(lo, scores[n].data[k]);
        double denom = 0;
        for (int n = 0; n < N; ++n) {
            const double e = std::exp(-(scores[n].data[k] - lo) / xi);
            p[n].data[k] = e;
            denom += e;
        }
        for (int n = 0; n < N; ++n) p[n].data[k] /= denom;
    }
    return p;
}

}  // namespace texseg
