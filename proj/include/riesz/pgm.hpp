#pragma once

// Binary PGM (P5) input and output, 8 or 16 bits per sample, big-endian.

#include <string>

#include "riesz/image2d.hpp"

namespace riesz {

/// Samples are returned as stored (0..maxval).
ImageBuffer read_pgm(const std::string& path);

/// Affine map applied on output: stored = round(scale * value + offset).
struct PgmRescale {
    double scale = 1.0;
    double offset = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
    int maxval = 255;
};

/// Rescales [min, max] of the image onto [0, maxval] and writes it.
PgmRescale write_pgm(const std::string& path, const ImageBuffer& img, int bit_depth = 16);

/// JSON record of the rescale, written next to the image.
void write_rescale_sidecar(const std::string& path, const PgmRescale& rescale);

}  // namespace riesz
