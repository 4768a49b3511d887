#pragma once

#include "lineseg/raster.hpp"

namespace lineseg {

// Oriented Gaussian: distinct standard deviations along the rotated axes
// (u, v), u being the major axis at angle phi from the x axis.
struct AnisoGaussParams {
  double sigma_u = 1.0;
  double sigma_v = 1.0;
  double phi = 0.0;  // radians

  // sigma_u = eta * sigma_v. eta >= 1.
  static AnisoGaussParams from_elongation(double sigma_v, double eta, double phi);
};

// Threshold maximizing between-class variance over the 256-bin histogram of
// the (rounded, clamped) intensities. Ties resolve to the smallest t. A
// single-bin histogram returns that bin.
int otsu_threshold(const GrayImage& img);

// Ink = intensity bin <= otsu threshold (dark-text convention). Constant
// images produce an all-background mask.
BinaryMask otsu_binarize(const GrayImage& img);

// Bright-side counterpart: foreground = intensity bin > otsu threshold.
// Used on response images where the structures of interest are bright.
BinaryMask otsu_binarize_bright(const GrayImage& img);

// Sauvola adaptive binarization: ink iff v < mean * (1 + k*(std/R - 1))
// over the window centered at the pixel, replicate border padding.
BinaryMask sauvola_binarize(const GrayImage& img, int window = 25, double k = 0.2,
                            double R = 128.0);

// ROF total-variation denoising via Chambolle's dual projection scheme.
// Intensities are rescaled to [0,1] internally, so `weight` has its usual
// magnitude (default 0.1). Stops at max_iter or when the maximum per-pixel
// change of u falls below tol (on the [0,1] scale).
GrayImage tv_denoise(const GrayImage& img, double weight = 0.1, int max_iter = 200,
                     double tol = 1e-4);

// Isotropic discrete total variation (forward differences), on the stored
// 0..255 scale.
double total_variation(const GrayImage& img);

// Convolution with the oriented Gaussian, kernel truncated where the
// Mahalanobis distance (u/sigma_u)^2 + (v/sigma_v)^2 exceeds 9 (the 3-sigma
// ellipse), normalized to unit sum, replicate border padding.
GrayImage anisotropic_gaussian(const GrayImage& img, const AnisoGaussParams& p);

// Box-mean convolution with a kw x kh kernel (wide, short for horizontal
// text), replicate padding. Requires kw > kh >= 1.
GrayImage elongated_blur(const GrayImage& img, int kw, int kh);

}  // namespace lineseg
