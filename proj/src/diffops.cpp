#include "texseg/diffops.hpp"

#include <stdexcept>

namespace texseg {

Image apply_circulant(const CirculantDiff& D, const Image& x, ApplySide side,
                      bool transposed) {
    if (side == ApplySide::left) {
        if (D.axis != Axis::rows || D.dim != x.rows)
            throw std::invalid_argument("apply_circulant: left side needs a row-axis matrix of matching dim");
    } else {
        if (D.axis != Axis::cols || D.dim != x.cols)
            throw std::invalid_argument("apply_circulant: right side needs a col-axis matrix of matching dim");
    }
    const int r = x.rows, c = x.cols;
    Image out(r, c);
    if (side == ApplySide::left) {
        // D x: rows i of the result mix rows of x
        for (int i = 0; i < r; ++i) {
            const int ip = transposed ? (i - 1 + r) % r : (i + 1) % r;
            for (int j = 0; j < c; ++j) out(i, j) = x(ip, j) - x(i, j);
        }
    } else {
        // x D^T (or x D when transposed)
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < c; ++j) {
                const int jp = transposed ? (j - 1 + c) % c : (j + 1) % c;
                out(i, j) = x(i, jp) - x(i, j);
            }
        }
    }
    return out;
}

Image dir_fwd_diff(const Image& f, int l, int K) {
    if (l < 0 || l >= K) throw std::out_of_range("dir_fwd_diff: direction index out of range");
    const double s = std::sin(M_PI * l / K);
    const double c = std::cos(M_PI * l / K);
    const int r = f.rows, cc = f.cols;
    Image out(r, cc);
    for (int i = 0; i < r; ++i) {
        const int ip = (i + 1) % r;
        for (int j = 0; j < cc; ++j) {
            const int jp = (j + 1) % cc;
            out(i, j) = s * (f(ip, j) - f(i, j)) + c * (f(i, jp) - f(i, j));
        }
    }
    return out;
}

Image dir_bwd_diff(const Image& f, int l, int K) {
    if (l < 0 || l >= K) throw std::out_of_range("dir_bwd_diff: direction index out of range");
    const double s = std::sin(M_PI * l / K);
    const double c = std::cos(M_PI * l / K);
    const int r = f.rows, cc = f.cols;
    Image out(r, cc);
    for (int i = 0; i < r; ++i) {
        const int im = (i - 1 + r) % r;
        for (int j = 0; j < cc; ++j) {
            const int jm = (j - 1 + cc) % cc;
            out(i, j) = s * (f(i, j) - f(im, j)) + c * (f(i, j) - f(i, jm));
        }
    }
    return out;
}

DirField dir_grad(const Image& f, int K) {
    if (K < 1) throw std::invalid_argument("dir_grad: K must be >= 1");
    DirField g;
    g.reserve(K);
    for (int l = 0; l < K; ++l) g.push_back(dir_fwd_diff(f, l, K));
    return g;
}

Image dir_div(const DirField& g, int K) {
    if (static_cast<int>(g.size()) != K)
        throw std::invalid_argument("dir_div: layer count mismatch");
    Image out(g[0].rows, g[0].cols);
    for (int l = 0; l < K; ++l) {
        Image d = dir_bwd_diff(g[l], l, K);
        for (size_t i = 0; i < out.size(); ++i) out.data[i] += d.data[i];
    }
    return out;
}

Image dir_div_fwd(const DirField& g, int K) {
    if (static_cast<int>(g.size()) != K)
        throw std::invalid_argument("dir_div_fwd: layer count mismatch");
    Image out(g[0].rows, g[0].cols);
    for (int l = 0; l < K; ++l) {
        Image d = dir_fwd_diff(g[l], l, K);
        for (size_t i = 0; i < out.size(); ++i) out.data[i] += d.data[i];
    }
    return out;
}

double adjoint_residual(const Image& f, const DirField& g, int K) {
    return dot(dir_grad(f, K), g) + dot(f, dir_div(g, K));
}

Image field_magnitude(const DirField& g) {
    Image out(g[0].rows, g[0].cols);
    for (const Image& layer : g) {
        require_same_dims(out, layer, "field_magnitude");
        for (size_t i = 0; i < out.size(); ++i) out.data[i] += layer.data[i] * layer.data[i];
    }
    for (double& v : out.data) v = std::sqrt(v);
    return out;
}

}  // namespace texseg
