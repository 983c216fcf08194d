#include "texseg/synthetic.hpp"

#include <random>

namespace texseg {

Image synth_two_plateau(int rows, int cols, double hi, double lo) {
    Image f(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) f(i, j) = j < cols / 2 ? hi : lo;
    return f;
}

Image synth_squares_stripes(int rows, int cols) {
    Image f(rows, cols, 0.25);
    const int r0 = rows / 8, r1 = rows / 2;
    const int c0 = cols / 8, c1 = cols / 2;
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) f(i, j) = 0.8;
    const int sr0 = rows * 9 / 16, sr1 = rows * 15 / 16;
    const int sc0 = cols / 8, sc1 = cols * 7 / 8;
    for (int i = sr0; i < sr1; ++i)
        for (int j = sc0; j < sc1; ++j)
            // phase offset keeps every sampled stripe value away from zero
            f(i, j) = 0.5 + 0.3 * std::sin(2.0 * M_PI * j / 4.0 + M_PI / 4.0);
    return f;
}

Image synth_squares_stripes_mask(int rows, int cols) {
    Image m(rows, cols);
    const int sr0 = rows * 9 / 16, sr1 = rows * 15 / 16;
    const int sc0 = cols / 8, sc1 = cols * 7 / 8;
    for (int i = sr0; i < sr1; ++i)
        for (int j = sc0; j < sc1; ++j) m(i, j) = 1.0;
    return m;
}

Image synth_star_field(int rows, int cols, uint64_t seed) {
    Image f(rows, cols);
    const double ci = (rows - 1) / 2.0, cj = (cols - 1) / 2.0;
    const double s = std::min(rows, cols) / 5.0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double d2 = (i - ci) * (i - ci) + (j - cj) * (j - cj);
            f(i, j) = 0.2 + 0.5 * std::exp(-d2 / (2.0 * s * s));
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> ri(0, rows - 1), rj(0, cols - 1);
    for (int k = 0; k < 12; ++k) {
        const int i = ri(rng), j = rj(rng);
        f(i, j) = std::min(1.0, f(i, j) + 0.3);
    }
    return f;
}

Image synth_illum_ramp(int rows, int cols) {
    Image f(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const double ramp = 0.2 * i / (rows > 1 ? rows - 1 : 1);
        for (int j = 0; j < cols; ++j) {
            double base = 0.2;
            if (j >= cols / 3) base = 0.45;
            if (j >= 2 * cols / 3) base = 0.7;
            f(i, j) = base + ramp;
        }
    }
    return f;
}

Image add_gaussian_noise(const Image& x, double sigma, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, sigma);
    Image out = x;
    for (double& v : out.data) v += dist(rng);
    return out;
}

}  // namespace texseg
