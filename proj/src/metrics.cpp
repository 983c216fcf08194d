#include "texseg/metrics.hpp"

#include <stdexcept>

namespace texseg {

double mse(const Image& a, const Image& b) {
    require_same_dims(a, b, "mse");
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

double sparsity_pct(const Image& v) {
    size_t nz = 0;
    for (double x : v.data)
        if (x != 0.0) ++nz;
    return 100.0 * static_cast<double>(nz) / static_cast<double>(v.size());
}

double phase_histogram_mass(const Image& p, double band) {
    if (band <= 0 || band >= 0.5)
        throw std::invalid_argument("phase_histogram_mass: band must be in (0, 0.5)");
    size_t hits = 0;
    for (double x : p.data)
        if (x <= band || x >= 1.0 - band) ++hits;
    return static_cast<double>(hits) / static_cast<double>(p.size());
}

Image extract_contours(const PhaseSet& p_bin) {
    if (p_bin.empty()) throw std::invalid_argument("extract_contours: empty phase set");
    const int r = p_bin[0].rows, c = p_bin[0].cols;
    // recover the label map, checking the hard-partition property
    std::vector<int> label(static_cast<size_t>(r) * c, -1);
    for (size_t n = 0; n < p_bin.size(); ++n) {
        require_same_dims(p_bin[0], p_bin[n], "extract_contours");
        for (size_t k = 0; k < p_bin[n].size(); ++k) {
            const double x = p_bin[n].data[k];
            if (x != 0.0 && x != 1.0)
                throw std::invalid_argument("extract_contours: non-binary phase");
            if (x == 1.0) {
                if (label[k] != -1)
                    throw std::invalid_argument("extract_contours: overlapping phases");
                label[k] = static_cast<int>(n);
            }
        }
    }
    for (int lab : label)
        if (lab == -1) throw std::invalid_argument("extract_contours: uncovered pixel");

    Image out(r, c);
    auto at = [&](int i, int j) { return label[static_cast<size_t>(i) * c + j]; };
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) {
            const int lab = at(i, j);
            const bool edge = lab != at((i + 1) % r, j) || lab != at((i - 1 + r) % r, j) ||
                              lab != at(i, (j + 1) % c) || lab != at(i, (j - 1 + c) % c);
            out(i, j) = edge ? 1.0 : 0.0;
        }
    }
    return out;
}

}  // namespace texseg
