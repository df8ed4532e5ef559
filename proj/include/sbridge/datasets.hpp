#pragma once

#include <string>
#include <vector>

#include "sbridge/numerics.hpp"
#include "sbridge/rng.hpp"

namespace sbridge {

// Synthetic benchmark datasets. Rows are grouped by class in label order and
// every generator is a pure function of (parameters, rng state), so a fixed
// seed reproduces the same matrix bit for bit.
struct LabeledDataset {
    Matrix x;
    std::vector<int> y;
    std::string name;

    // Labels are 0-based and contiguous; noise injectors add one fresh class.
    int classes() const;
};

// Two interleaved half-circles ("two moons"): class 0 on the upper arc of the
// unit circle, class 1 on a lower arc shifted by (1, -0.5). Classes split
// n as evenly as possible (class 0 gets the odd point). Gaussian jitter of
// scale noise_sigma is added to both coordinates.
LabeledDataset gen_moons(int n, double noise_sigma, Rng rng);

// Two concentric circles with radii 1 and radius_ratio; throws InvalidRatio
// unless radius_ratio is strictly inside (0, 1).
LabeledDataset gen_circles(int n, double radius_ratio, double noise_sigma, Rng rng);

// Smiley face, four classes of n/4 points each (remainder spread over the
// earliest classes): two Gaussian eyes at (-0.4, 0.35) and (0.4, 0.35) with
// sigma 0.08, a mouth arc of radius 0.6 spanning 210..330 degrees, and the
// face outline of radius 1; arcs carry jitter of sigma 0.02.
LabeledDataset gen_smile(int n, Rng rng);

// Seven-class composite scene mixing cluster shapes (fixed layout):
//   0: full ring, radius 3.0, centered (0, 0), jitter 0.10          (24.8%)
//   1: inner ring, radius 1.7, same center and jitter               (18.8%)
//   2: spiral arm, r = 0.5 + 0.55u for u in [0.6pi, 1.7pi], sampled
//      uniformly by arc length, centered (7.3, 0), jitter 0.12      (11.3%)
//   3: the same arm rotated half a turn                             ( 7.5%)
//   4-6: isotropic Gaussian blobs, sigma 0.35, at (-5.2, 2.1),
//      (-5.2, -2.1) and (-7.8, 0)                                   (12.5% each)
// Class sizes are the rounded proportions with the remainder absorbed by the
// last class; at the reference size n = 3594 they are 891, 676, 406, 270,
// 449, 449, 453.
LabeledDataset gen_impossible(int n, Rng rng);
inline constexpr int kImpossibleSize = 3594;

// Isotropic Gaussian blobs in `dims` dimensions around centers drawn
// uniformly from [-10, 10]^dims; used for sizing experiments.
LabeledDataset gen_blobs(int n, int dims, int classes, double sigma, Rng rng);

// Perturbs every coordinate with N(0, sigma^2); labels are unchanged.
LabeledDataset add_gaussian_noise(const LabeledDataset& ds, double sigma, Rng rng);

// Appends `count` points drawn uniformly from the bounding box of ds.x,
// labeled as one fresh class after the existing ones.
LabeledDataset add_uniform_noise(const LabeledDataset& ds, int count, Rng rng);

}  // namespace sbridge
