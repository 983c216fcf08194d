#pragma once

#include <cstdint>

#include "texseg/image.hpp"

namespace texseg {

// Ground-truth generators for the acceptance experiments; all values on
// the [0,1] intensity scale.

// Left half at hi, right half at lo.
Image synth_two_plateau(int rows, int cols, double hi = 0.94, double lo = 0.38);

// Flat background, one bright square plateau, and a rectangle of vertical
// sinusoidal stripes.  stripe_mask marks the stripe rectangle.
Image synth_squares_stripes(int rows, int cols);
Image synth_squares_stripes_mask(int rows, int cols);

// Smooth central blob plus a few isolated bright pixels.
Image synth_star_field(int rows, int cols, uint64_t seed);

// Three vertical intensity plateaus with an added smooth illumination
// ramp, so no single global threshold separates them.
Image synth_illum_ramp(int rows, int cols);

// Adds i.i.d. zero-mean Gaussian noise (unclamped), seeded.
Image add_gaussian_noise(const Image& x, double sigma, uint64_t seed);

}  // namespace texseg
