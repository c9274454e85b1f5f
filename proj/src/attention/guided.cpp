#include "indictts/attention/guided.hpp"

#include <cmath>

#include "indictts/common/error.hpp"

namespace indictts::attention {

double guided_attention_weight(long n, long N, long t, long T, double g) {
  if (N <= 0 || T <= 0 || n < 0 || n >= N || t < 0 || t >= T) {
    throw Error(ErrorCode::IndexOutOfRange, "need 0 <= n < N and 0 <= t < T");
  }
  if (!(g > 0.0)) throw Error(ErrorCode::InvalidArgument, "g must be positive");
  const double d = static_cast<double>(n) / static_cast<double>(N) - static_cast<double>(t) / static_cast<double>(T);
  return 1.0 - std::exp(-(d * d) / (2.0 * g * g));
}

Matrix guided_weight_matrix(long T, long N, double g) {
  Matrix w(T, N);
  for (long t = 0; t < T; ++t) {
    for (long n = 0; n < N; ++n) w(t, n) = guided_attention_weight(n, N, t, T, g);
  }
  return w;
}

void validate_alignment(const Matrix& alignment) {
  if (alignment.rows() == 0 || alignment.cols() == 0) throw Error(ErrorCode::InvalidArgument, "empty alignment");
  for (Eigen::Index t = 0; t < alignment.rows(); ++t) {
    if ((alignment.row(t).array() < 0.0).any() || (alignment.row(t).array() > 1.0).any()) {
      throw Error(ErrorCode::InvalidArgument, "alignment row " + std::to_string(t) + " leaves [0, 1]");
    }
    if (std::abs(alignment.row(t).sum() - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument, "alignment row " + std::to_string(t) + " does not sum to 1");
    }
  }
}

double guided_attention_loss(const Matrix& alignment, const GuidedAttentionConfig& cfg) {
  validate_alignment(alignment);
  const Matrix w = guided_weight_matrix(alignment.rows(), alignment.cols(), cfg.g);
  return alignment.cwiseProduct(w).mean();
}

}  // namespace indictts::attention
