#pragma once

#include "tilt/dtcwt.hpp"
#include "tilt/grid.hpp"

namespace tilt {

// Structuring elements are BinaryGrids whose set cells are read as offsets
// from the anchor. Pixels outside the frame count as 0.

// x in D ⊖ S iff x + s in D for every s in S.
BinaryGrid erode(const BinaryGrid& d, const BinaryGrid& s);
// x in D ⊕ S iff x − s in D for some s in S; clipped to the frame. An empty
// S gives an empty result.
BinaryGrid dilate(const BinaryGrid& d, const BinaryGrid& s);
BinaryGrid open(const BinaryGrid& d, const BinaryGrid& s);
BinaryGrid complement(const BinaryGrid& d);
// Point reflection {−s}.
BinaryGrid reflect(const BinaryGrid& s);
// n-fold dilation of S with itself; 0S is the single origin cell.
BinaryGrid nfold(const BinaryGrid& s, int n);
// k×k all-ones element anchored at its centre (k odd).
BinaryGrid solid(int k);

// Skel(D) = union over n = 0..N of (D ⊖ nS) minus ((D ⊖ nS) ∘ S).
BinaryGrid skeletonize(const BinaryGrid& d, const BinaryGrid& s);
// Layerwise skeleton with the 3×3 solid element.
VoxelStack skeletonize_stack(const VoxelStack& m);

// Zhang–Suen thinning: a connected one-pixel-wide skeleton.
BinaryGrid thin(const BinaryGrid& d);
VoxelStack thin_stack(const VoxelStack& m);

// Digital line of l pixels through the anchor, along the edge tangent of
// subband d (perpendicular to the midpoint of its singularity interval).
BinaryGrid make_line(SubbandDirection d, int l);

}  // namespace tilt
