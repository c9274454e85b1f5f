#include "indictts/features/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "indictts/common/error.hpp"

namespace indictts::features {

namespace {

const double kMcdScale = 10.0 / std::numbers::ln10;

}  // namespace

DtwAlignment dtw_from_costs(const Matrix& cost) {
  const auto n = cost.rows();
  const auto m = cost.cols();
  if (n == 0 || m == 0) throw Error(ErrorCode::EmptyTrack, "cannot align an empty track");

  const double inf = std::numeric_limits<double>::infinity();
  Matrix acc = Matrix::Constant(n, m, inf);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      double best = 0.0;
      if (i > 0 || j > 0) {
        best = inf;
        if (i > 0 && j > 0) best = std::min(best, acc(i - 1, j - 1));
        if (i > 0) best = std::min(best, acc(i - 1, j));
        if (j > 0) best = std::min(best, acc(i, j - 1));
      }
      acc(i, j) = best + cost(i, j);
    }
  }

  DtwAlignment out;
  out.cost = acc(n - 1, m - 1);
  Eigen::Index i = n - 1;
  Eigen::Index j = m - 1;
  out.path.steps.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const double diag = acc(i - 1, j - 1);
      const double up = acc(i - 1, j);
      const double left = acc(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    } else if (i > 0) {
      --i;
    } else {
      --j;
    }
    out.path.steps.emplace_back(i, j);
  }
  std::reverse(out.path.steps.begin(), out.path.steps.end());
  return out;
}

DtwAlignment dtw_align(const Matrix& ref, const Matrix& syn, const FrameDistance& distance) {
  if (ref.rows() == 0 || syn.rows() == 0) throw Error(ErrorCode::EmptyTrack, "cannot align an empty track");
  if (ref.cols() != syn.cols()) {
    throw Error(ErrorCode::OrderMismatch, "tracks have " + std::to_string(ref.cols()) + " and " +
                                              std::to_string(syn.cols()) + " coefficients");
  }
  Matrix cost(ref.rows(), syn.rows());
  for (Eigen::Index i = 0; i < ref.rows(); ++i) {
    for (Eigen::Index j = 0; j < syn.rows(); ++j) cost(i, j) = distance(ref.row(i), syn.row(j));
  }
  return dtw_from_costs(cost);
}

DtwPath dtw_align(const McepTrack& ref, const McepTrack& syn, const FrameDistance& distance) {
  return dtw_align(ref.frames, syn.frames, distance).path;
}

double mcd_frame_distance(const FrameView& a, const FrameView& b) {
  double sum = 0.0;
  for (Eigen::Index d = 1; d < a.size(); ++d) {
    const double diff = a(d) - b(d);
    sum += diff * diff;
  }
  return kMcdScale * std::sqrt(2.0 * sum);
}

FrameDistance mcd_distance() { return &mcd_frame_distance; }

double euclidean_distance(const FrameView& a, const FrameView& b) { return (a - b).norm(); }

double mcd(const McepTrack& ref, const McepTrack& syn) {
  if (ref.order != syn.order || ref.frames.cols() != syn.frames.cols()) {
    throw Error(ErrorCode::OrderMismatch, "orders " + std::to_string(ref.order) + " and " + std::to_string(syn.order));
  }
  const DtwAlignment a = dtw_align(ref.frames, syn.frames, mcd_distance());
  return a.cost / static_cast<double>(a.path.steps.size());
}

}  // namespace indictts::features
