#pragma once

#include <functional>

#include "indictts/features/types.hpp"

namespace indictts::features {

using FrameView = Eigen::Ref<const Eigen::Matrix<double, 1, Eigen::Dynamic>>;
using FrameDistance = std::function<double(const FrameView&, const FrameView&)>;

struct DtwAlignment {
  DtwPath path;
  double cost = 0.0;  // accumulated distance along the path
};

// Alignment over a precomputed [nRef x nSyn] local cost matrix. Steps
// (1,0), (0,1), (1,1); on ties the backtrack prefers the diagonal, then the
// step that advances the reference. Throws EmptyTrack.
DtwAlignment dtw_from_costs(const Matrix& cost);

// Throws EmptyTrack or OrderMismatch (different coefficient counts).
DtwAlignment dtw_align(const Matrix& ref, const Matrix& syn, const FrameDistance& distance);
DtwPath dtw_align(const McepTrack& ref, const McepTrack& syn, const FrameDistance& distance);

// (10 / ln 10) * sqrt(2 * sum_{d>=1} (a_d - b_d)^2); c_0 is ignored.
double mcd_frame_distance(const FrameView& a, const FrameView& b);
FrameDistance mcd_distance();
double euclidean_distance(const FrameView& a, const FrameView& b);

// Mean of the frame distance over the steps of the DTW path that minimizes
// the summed frame distance. Throws OrderMismatch or EmptyTrack.
double mcd(const McepTrack& ref, const McepTrack& syn);

}  // namespace indictts::features
