#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace texseg {

// Real-valued d1 x d2 grid on a periodic lattice, row-major.
struct Image {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Image() = default;
    Image(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c), fill) {
        if (r < 1 || c < 1) throw std::invalid_argument("Image: dims must be >= 1");
    }

    double& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    size_t size() const { return data.size(); }
    bool same_dims(const Image& o) const { return rows == o.rows && cols == o.cols; }
};

// Ordered stack of K direction layers (angle pi*k/K for layer k).
using DirField = std::vector<Image>;

// N relaxed indicator images forming a partition of unity.
using PhaseSet = std::vector<Image>;

inline void require_same_dims(const Image& a, const Image& b, const char* where) {
    if (!a.same_dims(b)) throw std::invalid_argument(std::string(where) + ": dim mismatch");
}

inline bool all_finite(const Image& x) {
    for (double v : x.data)
        if (!std::isfinite(v)) return false;
    return true;
}

inline double dot(const Image& a, const Image& b) {
    require_same_dims(a, b, "dot");
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

inline double dot(const DirField& a, const DirField& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: layer count mismatch");
    double s = 0;
    for (size_t l = 0; l < a.size(); ++l) s += dot(a[l], b[l]);
    return s;
}

inline double norm2(const Image& x) { return std::sqrt(dot(x, x)); }

inline double norm1(const Image& x) {
    double s = 0;
    for (double v : x.data) s += std::fabs(v);
    return s;
}

inline double max_abs(const Image& x) {
    double m = 0;
    for (double v : x.data) m = std::max(m, std::fabs(v));
    return m;
}

inline Image operator+(const Image& a, const Image& b) {
    require_same_dims(a, b, "operator+");
    Image out(a.rows, a.cols);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
}

inline Image operator-(const Image& a, const Image& b) {
    require_same_dims(a, b, "operator-");
    Image out(a.rows, a.cols);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

inline Image operator*(double s, const Image& a) {
    Image out(a.rows, a.cols);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = s * a.data[i];
    return out;
}

inline Image operator-(const Image& a, double s) {
    Image out(a.rows, a.cols);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] - s;
    return out;
}

inline Image hadamard(const Image& a, const Image& b) {
    require_same_dims(a, b, "hadamard");
    Image out(a.rows, a.cols);
    for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] * b.data[i];
    return out;
}

inline double mean(const Image& x) {
    double s = 0;
    for (double v : x.data) s += v;
    return s / static_cast<double>(x.size());
}

}  // namespace texseg
