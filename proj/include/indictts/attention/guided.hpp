#pragma once

#include "indictts/features/types.hpp"

namespace indictts::attention {

using features::Matrix;

inline constexpr double kDefaultGuidedG = 0.2;

struct GuidedAttentionConfig {
  double g = kDefaultGuidedG;
};

// 1 - exp(-(n/N - t/T)^2 / (2 g^2)). Throws IndexOutOfRange unless
// 0 <= n < N and 0 <= t < T; InvalidArgument for g <= 0.
double guided_attention_weight(long n, long N, long t, long T, double g);

// [T x N] penalty grid.
Matrix guided_weight_matrix(long T, long N, double g);

// Throws InvalidArgument unless every row lies in [0, 1] and sums to 1
// within 1e-9.
void validate_alignment(const Matrix& alignment);

// Mean over the full T x N grid of alignment(t, n) * W(n, t).
double guided_attention_loss(const Matrix& alignment, const GuidedAttentionConfig& cfg = {});

}  // namespace indictts::attention
