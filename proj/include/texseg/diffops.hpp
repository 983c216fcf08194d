#pragma once

#include "texseg/image.hpp"

namespace texseg {

// Periodic difference matrix: -1 on the diagonal, +1 on the superdiagonal,
// +1 in the bottom-left corner.  D1 acts on rows (d1 x d1), D2 on columns.
enum class Axis { rows, cols };

struct CirculantDiff {
    Axis axis;
    int dim;  // d1 for rows, d2 for cols
};

enum class ApplySide { left, right_transpose };

// side = left:            D * x    (row-axis matrix)
// side = right_transpose: x * D^T  (column-axis matrix)
// transposed flips the matrix itself, giving D^T * x and x * D.
Image apply_circulant(const CirculantDiff& D, const Image& x, ApplySide side,
                      bool transposed = false);

// Forward difference along direction angle pi*l/K:
//   sin(pi l/K) D1 x + cos(pi l/K) x D2^T
Image dir_fwd_diff(const Image& f, int l, int K);

// Backward difference: -[sin(pi l/K) D1^T x + cos(pi l/K) x D2]
Image dir_bwd_diff(const Image& f, int l, int K);

DirField dir_grad(const Image& f, int K);

// Minus-variant divergence sum_l dir_bwd_diff(g_l, l, K), the adjoint
// partner of dir_grad up to sign.
Image dir_div(const DirField& g, int K);

// Forward-variant divergence sum_l dir_fwd_diff(g_l, l, K); this is the
// synthesis operator of the texture constraint in the decomposition loops.
Image dir_div_fwd(const DirField& g, int K);

// <dir_grad(f), g> + <f, dir_div(g)>; zero up to rounding.
double adjoint_residual(const Image& f, const DirField& g, int K);

// Per-pixel Euclidean magnitude across layers.
Image field_magnitude(const DirField& g);

}  // namespace texseg
