#pragma once

#include <span>

namespace sbridge {

// External clustering agreement between two labelings of the same points.
// Label values are arbitrary ints; only the induced partitions matter, so
// both scores are invariant under relabeling either side.

// Adjusted Rand index via the pair-counting contingency form; range
// [-0.5, 1], 1 iff the partitions are identical. The degenerate case where
// the adjustment denominator vanishes (both partitions all-singletons or
// both single-cluster, hence identical) returns 1. Throws LengthMismatch on
// different lengths and EmptyInput on empty labelings.
double ari(std::span<const int> a, std::span<const int> b);

// Normalized mutual information with the arithmetic mean of the two label
// entropies as normalizer; range [0, 1]. When both entropies are zero (two
// single-cluster partitions) the score is 1 by convention; against a
// constant labeling with any split on the other side it is 0.
double nmi(std::span<const int> a, std::span<const int> b);

}  // namespace sbridge
