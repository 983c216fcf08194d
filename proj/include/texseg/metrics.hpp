#pragma once

#include "texseg/image.hpp"

namespace texseg {

// Mean squared error on the normalized [0,1] intensity scale.
double mse(const Image& a, const Image& b);

// Percentage of exactly nonzero entries; shrink outputs exact zeros, so
// this is a meaningful sparsity count.
double sparsity_pct(const Image& v);

// Fraction of pixels with p <= band or p >= 1 - band.
double phase_histogram_mass(const Image& p, double band);

// Marks pixels whose periodic 4-neighborhood contains a different label.
// Input must be a hard partition (binary phases, exactly one 1 per pixel).
Image extract_contours(const PhaseSet& p_bin);

}  // namespace texseg
