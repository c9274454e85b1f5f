#include "indictts/attention/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "indictts/common/error.hpp"

namespace indictts::attention {

double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-3});
}

GradCheckResult compare_gradients(const AttentionInstance& inst, const Vector& analytic, double eps) {
  if (!(eps >= 1e-7 && eps <= 1e-3)) throw Error(ErrorCode::InvalidArgument, "eps must lie in [1e-7, 1e-3]");
  const Vector theta = inst.params.flatten();
  if (analytic.size() != theta.size()) throw Error(ErrorCode::DimensionMismatch, "gradient size differs");
  GradCheckResult r;
  r.analytic = analytic;
  r.numeric.resize(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Vector plus = theta, minus = theta;
    plus(i) += eps;
    minus(i) -= eps;
    r.numeric(i) = (head_value(inst, inst.params.unflatten(plus)) - head_value(inst, inst.params.unflatten(minus))) /
                   (2.0 * eps);
    const double e = relative_error(analytic(i), r.numeric(i));
    if (e > r.maxRelativeError || i == 0) {
      r.maxRelativeError = e;
      r.worstIndex = static_cast<std::size_t>(i);
    }
  }
  return r;
}

GradCheckResult attention_grad_check(const AttentionInstance& inst, double eps) {
  return compare_gradients(inst, head_gradient(inst).flatten(), eps);
}

GradCheckResult mutated_grad_check(const AttentionInstance& inst, double eps) {
  Vector g = head_gradient(inst).flatten();
  Eigen::Index worst = 0;
  g.cwiseAbs().maxCoeff(&worst);
  g(worst) *= 2.0;
  return compare_gradients(inst, g, eps);
}

}  // namespace indictts::attention
