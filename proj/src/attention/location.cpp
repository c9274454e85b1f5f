#include "indictts/attention/location.hpp"

#include <cmath>
#include <random>

#include "indictts/common/error.hpp"
#include "indictts/common/random.hpp"

namespace indictts::attention {

namespace {

Error mismatch(const std::string& what) { return Error(ErrorCode::DimensionMismatch, what); }

void fill_uniform(Matrix& m, std::mt19937_64& rng) {
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = 2.0 * unit_uniform(rng) - 1.0;
}

void fill_uniform(Vector& v, std::mt19937_64& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = 2.0 * unit_uniform(rng) - 1.0;
}

// Projection terms shared by every encoder step j: Wq q + b.
Vector query_term(const AttentionParams& p, const Vector& q) { return p.queryProjection * q + p.bias; }

}  // namespace

AttentionParams AttentionParams::zeros(int A, int Dq, int Dh, int K, int width) {
  AttentionParams p;
  p.queryProjection = Matrix::Zero(A, Dq);
  p.memoryProjection = Matrix::Zero(A, Dh);
  p.locationProjection = Matrix::Zero(A, K);
  p.locationKernel = Matrix::Zero(K, width);
  p.scoreVector = Vector::Zero(A);
  p.bias = Vector::Zero(A);
  return p;
}

void AttentionParams::validate() const {
  const auto A = queryProjection.rows();
  if (memoryProjection.rows() != A || locationProjection.rows() != A || scoreVector.size() != A || bias.size() != A) {
    throw mismatch("projections, score vector and bias must share the attention dimension");
  }
  if (locationProjection.cols() != locationKernel.rows()) {
    throw mismatch("location projection columns must equal the number of location filters");
  }
  if (locationKernel.cols() < 1) throw mismatch("location kernel needs at least one tap");
}

std::size_t AttentionParams::size() const {
  return static_cast<std::size_t>(queryProjection.size() + memoryProjection.size() + locationProjection.size() +
                                  locationKernel.size() + scoreVector.size() + bias.size());
}

Vector AttentionParams::flatten() const {
  Vector v(static_cast<Eigen::Index>(size()));
  Eigen::Index at = 0;
  auto put = [&](const auto& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) v(at++) = m.data()[i];
  };
  put(queryProjection);
  put(memoryProjection);
  put(locationProjection);
  put(locationKernel);
  put(scoreVector);
  put(bias);
  return v;
}

AttentionParams AttentionParams::unflatten(const Vector& v) const {
  if (v.size() != static_cast<Eigen::Index>(size())) throw mismatch("flat parameter vector has the wrong size");
  AttentionParams p = *this;
  Eigen::Index at = 0;
  auto take = [&](auto& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = v(at++);
  };
  take(p.queryProjection);
  take(p.memoryProjection);
  take(p.locationProjection);
  take(p.locationKernel);
  take(p.scoreVector);
  take(p.bias);
  return p;
}

Matrix location_features(const Vector& prev, const Matrix& kernel) {
  const auto N = prev.size();
  const auto K = kernel.rows();
  const auto width = kernel.cols();
  const auto half = (width - 1) / 2;
  Matrix f = Matrix::Zero(N, K);
  for (Eigen::Index j = 0; j < N; ++j) {
    for (Eigen::Index k = 0; k < K; ++k) {
      double acc = 0.0;
      for (Eigen::Index w = 0; w < width; ++w) {
        const auto src = j + w - half;
        if (src >= 0 && src < N) acc += kernel(k, w) * prev(src);
      }
      f(j, k) = acc;
    }
  }
  return f;
}

Vector softmax(const Vector& e) {
  const Vector shifted = (e.array() - e.maxCoeff()).exp().matrix();
  return shifted / shifted.sum();
}

AttentionStep location_sensitive_attention(const Vector& query, const Matrix& memory, const Vector& prevAlignment,
                                           const AttentionParams& params) {
  params.validate();
  if (query.size() != params.queryProjection.cols()) throw mismatch("query size differs from the query projection");
  if (memory.cols() != params.memoryProjection.cols()) throw mismatch("memory width differs from the memory projection");
  if (memory.rows() < 1) throw mismatch("memory needs at least one row");
  if (prevAlignment.size() != memory.rows()) throw mismatch("previous alignment length differs from memory length");
  if (std::abs(prevAlignment.sum() - 1.0) > 1e-6) {
    throw Error(ErrorCode::InvalidArgument, "previous alignment must sum to 1");
  }

  AttentionStep out;
  out.locationFeatures = location_features(prevAlignment, params.locationKernel);
  const Vector qTerm = query_term(params, query);
  const auto N = memory.rows();
  out.energies.resize(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const Vector z = qTerm + params.memoryProjection * memory.row(j).transpose() +
                     params.locationProjection * out.locationFeatures.row(j).transpose();
    out.energies(j) = params.scoreVector.dot(z.array().tanh().matrix());
  }
  out.alignment = softmax(out.energies);
  out.context = memory.transpose() * out.alignment;
  return out;
}

AttentionInstance zero_instance(const InstanceShape& s) {
  AttentionInstance inst;
  inst.params = AttentionParams::zeros(s.A, s.Dq, s.Dh, s.K, s.width);
  inst.queries = Matrix::Zero(s.T, s.Dq);
  inst.memory = Matrix::Zero(s.N, s.Dh);
  inst.initialAlignment = Vector::Zero(s.N);
  inst.initialAlignment(0) = 1.0;
  return inst;
}

AttentionInstance random_instance(std::uint64_t seed, const InstanceShape& s) {
  std::mt19937_64 rng(seed);
  AttentionInstance inst = zero_instance(s);
  fill_uniform(inst.params.queryProjection, rng);
  fill_uniform(inst.params.memoryProjection, rng);
  fill_uniform(inst.params.locationProjection, rng);
  fill_uniform(inst.params.locationKernel, rng);
  fill_uniform(inst.params.scoreVector, rng);
  fill_uniform(inst.params.bias, rng);
  fill_uniform(inst.queries, rng);
  fill_uniform(inst.memory, rng);
  return inst;
}

namespace {

Rollout run(const AttentionInstance& inst, const AttentionParams& params) {
  const auto T = inst.queries.rows();
  Rollout r;
  r.alignment.resize(T, inst.memory.rows());
  r.contexts.resize(T, inst.memory.cols());
  Vector prev = inst.initialAlignment;
  for (Eigen::Index t = 0; t < T; ++t) {
    const AttentionStep step =
        location_sensitive_attention(inst.queries.row(t).transpose(), inst.memory, prev, params);
    r.alignment.row(t) = step.alignment.transpose();
    r.contexts.row(t) = step.context.transpose();
    prev = step.alignment;
  }
  r.head = r.contexts.sum() + guided_attention_loss(r.alignment, inst.guided);
  return r;
}

}  // namespace

Rollout rollout(const AttentionInstance& inst) { return run(inst, inst.params); }

double head_value(const AttentionInstance& inst, const AttentionParams& params) { return run(inst, params).head; }

AttentionParams head_gradient(const AttentionInstance& inst) {
  const AttentionParams& p = inst.params;
  const auto T = inst.queries.rows();
  const auto N = inst.memory.rows();
  const auto K = p.locationKernel.rows();
  const auto width = p.locationKernel.cols();
  const auto half = (width - 1) / 2;

  // Forward pass, keeping what the backward pass needs.
  std::vector<Vector> prevs;
  std::vector<AttentionStep> steps;
  Vector prev = inst.initialAlignment;
  for (Eigen::Index t = 0; t < T; ++t) {
    prevs.push_back(prev);
    steps.push_back(location_sensitive_attention(inst.queries.row(t).transpose(), inst.memory, prev, p));
    prev = steps.back().alignment;
  }

  AttentionParams g = AttentionParams::zeros(static_cast<int>(p.queryProjection.rows()),
                                             static_cast<int>(p.queryProjection.cols()),
                                             static_cast<int>(p.memoryProjection.cols()), static_cast<int>(K),
                                             static_cast<int>(width));
  const Matrix guided = guided_weight_matrix(T, N, inst.guided.g) / static_cast<double>(T * N);
  // d(sum of context)/d(alignment_j) = sum of memory row j.
  const Vector rowSums = inst.memory.rowwise().sum();

  Vector carried = Vector::Zero(N);
  for (Eigen::Index t = T - 1; t >= 0; --t) {
    const AttentionStep& st = steps[static_cast<std::size_t>(t)];
    const Vector& pv = prevs[static_cast<std::size_t>(t)];
    const Vector q = inst.queries.row(t).transpose();
    const Vector gAlign = rowSums + guided.row(t).transpose() + carried;
    const Vector gEnergy = st.alignment.cwiseProduct((gAlign.array() - st.alignment.dot(gAlign)).matrix());

    const Vector qTerm = query_term(p, q);
    Vector gPrev = Vector::Zero(N);
    for (Eigen::Index j = 0; j < N; ++j) {
      const Vector h = inst.memory.row(j).transpose();
      const Vector f = st.locationFeatures.row(j).transpose();
      const Vector u = (qTerm + p.memoryProjection * h + p.locationProjection * f).array().tanh().matrix();
      g.scoreVector += gEnergy(j) * u;
      const Vector gz = gEnergy(j) * p.scoreVector.cwiseProduct((1.0 - u.array().square()).matrix());
      g.bias += gz;
      g.queryProjection += gz * q.transpose();
      g.memoryProjection += gz * h.transpose();
      g.locationProjection += gz * f.transpose();
      const Vector gf = p.locationProjection.transpose() * gz;
      for (Eigen::Index k = 0; k < K; ++k) {
        for (Eigen::Index w = 0; w < width; ++w) {
          const auto src = j + w - half;
          if (src < 0 || src >= N) continue;
          g.locationKernel(k, w) += gf(k) * pv(src);
          gPrev(src) += gf(k) * p.locationKernel(k, w);
        }
      }
    }
    carried = gPrev;
  }
  return g;
}

}  // namespace indictts::attention
