#pragma once

#include "texseg/image.hpp"

namespace texseg {

// Separable periodic orthonormal Haar transform.  The number of levels is
// limited by the 2-divisibility of the dims (identity when either dim is
// odd), so forward/inverse are exact inverses and the transform preserves
// the l2 norm.
int haar_levels(int rows, int cols);

Image haar_forward(const Image& x);
Image haar_inverse(const Image& x);

}  // namespace texseg
