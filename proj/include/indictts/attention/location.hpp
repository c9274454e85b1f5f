#pragma once

#include <cstdint>
#include <vector>

#include "indictts/attention/guided.hpp"

namespace indictts::attention {

using Vector = Eigen::VectorXd;

// A: attention dim, Dq: query dim, Dh: memory dim, K: location filters.
struct AttentionParams {
  Matrix queryProjection;     // [A x Dq]
  Matrix memoryProjection;    // [A x Dh]
  Matrix locationProjection;  // [A x K]
  Matrix locationKernel;      // [K x width]
  Vector scoreVector;         // [A]
  Vector bias;                // [A]

  static AttentionParams zeros(int A, int Dq, int Dh, int K, int width);
  // Throws DimensionMismatch.
  void validate() const;
  std::size_t size() const;
  Vector flatten() const;
  // Same shapes as *this, values from v.
  AttentionParams unflatten(const Vector& v) const;
};

struct AttentionStep {
  Vector context;    // [Dh]
  Vector alignment;  // [N]
  Vector energies;   // [N]
  Matrix locationFeatures;  // [N x K]
};

// 'Same' 1-D convolution of the previous alignment with each kernel row,
// zero outside [0, N).
Matrix location_features(const Vector& prevAlignment, const Matrix& kernel);

// e_j = v . tanh(Wq q + Wm h_j + Wl f_j + b); alignment = softmax(e);
// context = sum_j alignment_j h_j. Throws DimensionMismatch, or
// InvalidArgument when prevAlignment does not sum to 1 within 1e-6.
AttentionStep location_sensitive_attention(const Vector& query, const Matrix& memory, const Vector& prevAlignment,
                                           const AttentionParams& params);

// Max-subtracted softmax.
Vector softmax(const Vector& e);

// Decoder steps chained through the previous alignment.
struct AttentionInstance {
  AttentionParams params;
  Matrix queries;  // [T x Dq]
  Matrix memory;   // [N x Dh]
  Vector initialAlignment;  // [N]
  GuidedAttentionConfig guided;
};

struct InstanceShape {
  int N = 5, Dh = 3, Dq = 2, A = 3, K = 2, width = 3, T = 3;
};

// Entries uniform in [-1, 1]; initial alignment one-hot on the first
// encoder step.
AttentionInstance random_instance(std::uint64_t seed, const InstanceShape& shape = {});
AttentionInstance zero_instance(const InstanceShape& shape = {});

struct Rollout {
  Matrix alignment;  // [T x N]
  Matrix contexts;   // [T x Dh]
  double head = 0.0; // sum of all context entries + guided loss
};

Rollout rollout(const AttentionInstance& inst);
double head_value(const AttentionInstance& inst, const AttentionParams& params);

// Analytic gradient of the head with respect to every parameter,
// back-propagated through the alignment chain.
AttentionParams head_gradient(const AttentionInstance& inst);

}  // namespace indictts::attention
