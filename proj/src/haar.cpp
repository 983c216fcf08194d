#include "texseg/haar.hpp"

namespace texseg {

namespace {

const double kInvSqrt2 = 0.70710678118654752440;

void haar_rows_fwd(Image& x, int r, int c) {
    std::vector<double> tmp(c);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c / 2; ++j) {
            const double a = x(i, 2 * j), b = x(i, 2 * j + 1);
            tmp[j] = (a + b) * kInvSqrt2;
            tmp[c / 2 + j] = (a - b) * kInvSqrt2;
        }
        for (int j = 0; j < c; ++j) x(i, j) = tmp[j];
    }
}

void haar_cols_fwd(Image& x, int r, int c) {
    std::vector<double> tmp(r);
    for (int j = 0; j < c; ++j) {
        for (int i = 0; i < r / 2; ++i) {
            const double a = x(2 * i, j), b = x(2 * i + 1, j);
            tmp[i] = (a + b) * kInvSqrt2;
            tmp[r / 2 + i] = (a - b) * kInvSqrt2;
        }
        for (int i = 0; i < r; ++i) x(i, j) = tmp[i];
    }
}

void haar_rows_inv(Image& x, int r, int c) {
    std::vector<double> tmp(c);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c / 2; ++j) {
            const double s = x(i, j), d = x(i, c / 2 + j);
            tmp[2 * j] = (s + d) * kInvSqrt2;
            tmp[2 * j + 1] = (s - d) * kInvSqrt2;
        }
        for (int j = 0; j < c; ++j) x(i, j) = tmp[j];
    }
}

void haar_cols_inv(Image& x, int r, int c) {
    std::vector<double> tmp(r);
    for (int j = 0; j < c; ++j) {
        for (int i = 0; i < r / 2; ++i) {
            const double s = x(i, j), d = x(r / 2 + i, j);
            tmp[2 * i] = (s + d) * kInvSqrt2;
            tmp[2 * i + 1] = (s - d) * kInvSqrt2;
        }
        for (int i = 0; i < r; ++i) x(i, j) = tmp[i];
    }
}

}  // namespace

int haar_levels(int rows, int cols) {
    int levels = 0;
    while (rows % 2 == 0 && cols % 2 == 0 && rows > 1 && cols > 1) {
        ++levels;
        rows /= 2;
        cols /= 2;
    }
    return levels;
}

Image haar_forward(const Image& x) {
    Image out = x;
    int r = x.rows, c = x.cols;
    const int levels = haar_levels(r, c);
    for (int lv = 0; lv < levels; ++lv) {
        // transform the top-left approximation block in place
        Image block(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) block(i, j) = out(i, j);
        haar_rows_fwd(block, r, c);
        haar_cols_fwd(block, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) out(i, j) = block(i, j);
        r /= 2;
        c /= 2;
    }
    return out;
}

Image haar_inverse(const Image& x) {
    Image out = x;
    const int levels = haar_levels(x.rows, x.cols);
    for (int lv = levels - 1; lv >= 0; --lv) {
        const int r = x.rows >> lv, c = x.cols >> lv;
        Image block(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) block(i, j) = out(i, j);
        haar_cols_inv(block, r, c);
        haar_rows_inv(block, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) out(i, j) = block(i, j);
    }
    return out;
}

}  // namespace texseg
