#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "alphageo/manifold.hpp"

namespace alphageo {

/// Step for the second-order (metric) divergence stencils.
inline constexpr double kMetricStep = 1e-3;
/// Step for the third-order (Christoffel) stencils, which are noisier.
inline constexpr double kChristoffelStep = 1e-2;
/// Condition-number cutoff for symmetric inversion.
inline constexpr double kConditionCutoff = 1e12;

using MetricMatrix = Eigen::MatrixXd;

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const MetricMatrix& m);

/// Inverse of a symmetric matrix through its eigendecomposition. Throws
/// SingularInformation when the condition number exceeds `cond_cutoff` (a
/// transparent failure mode rather than a silent pseudo-inverse).
MetricMatrix symmetric_inverse(const MetricMatrix& m,
                               double cond_cutoff = kConditionCutoff);

/// Escort Fisher information G^(a): the covariance of the coordinate scores
/// under the alpha-escort of p_theta, by exact enumeration over the alphabet.
/// At the alpha -> 1 branch this is the classical Fisher information matrix.
MetricMatrix alpha_fim(const ParametricFamily& fam, const ThetaPoint& t,
                       AlphaOrder a);

/// Prior information matrix J^lambda with entries
/// d_i ln lambda * d_j ln lambda (rank <= 1, PSD by construction).
MetricMatrix prior_matrix(const Prior& prior, const ThetaPoint& t);

/// lambda(theta) * (G^(a) + J^lambda), the Riemannian metric induced by the
/// Bayesian relative alpha-entropy. At alpha = 1 this is the Bayesian Fisher
/// information metric.
MetricMatrix bayesian_alpha_metric(const BayesianModel& model,
                                   const ThetaPoint& t, AlphaOrder a);

/// Any twice-differentiable two-point function on Theta x Theta vanishing on
/// the diagonal.
using DivergenceFn =
    std::function<double(const ThetaPoint&, const ThetaPoint&)>;

/// The Bayesian relative alpha-entropy of `model` as a two-point function.
DivergenceFn bayesian_divergence_fn(const BayesianModel& model, AlphaOrder a);

/// Divergence-induced metric extracted by finite differences:
///   g_ij = -d/d theta'_j d/d theta_i D(p_theta, p_theta') at theta' = theta,
/// via the 4-point mixed central stencil, symmetrized. The asymmetry of the
/// raw stencil output measures stencil error; `warning` is set when the
/// relative asymmetry exceeds 1e-4.
struct FdMetric {
  MetricMatrix metric;
  double asymmetry_rel = 0.0;
  bool warning = false;
};
FdMetric eguchi_metric_fd(const DivergenceFn& div, const ParamDomain& domain,
                          const ThetaPoint& t, double h = kMetricStep);

/// Connection coefficients indexed as entries(i, j, l) = Gamma_{ij,l},
/// symmetric in (i, j) up to stencil noise.
class ChristoffelTensor {
 public:
  explicit ChristoffelTensor(std::size_t k)
      : k_(k), values_(k * k * k, 0.0) {}

  std::size_t dim() const { return k_; }
  double& at(std::size_t i, std::size_t j, std::size_t l) {
    return values_[(i * k_ + j) * k_ + l];
  }
  double at(std::size_t i, std::size_t j, std::size_t l) const {
    return values_[(i * k_ + j) * k_ + l];
  }

 private:
  std::size_t k_;
  std::vector<double> values_;
};

/// Third-order central stencils for the dual pair of connections:
///   Gamma_{ij,l}   = -d_i d_j d'_l D |_{theta'=theta}
///   Gamma*_{ij,l}  = -d_l d'_i d'_j D |_{theta'=theta}
/// Together with the metric they satisfy the dualistic identity
///   d_l g_ij = Gamma_{li,j} + Gamma*_{lj,i} up to stencil error.
std::pair<ChristoffelTensor, ChristoffelTensor> christoffel_fd(
    const DivergenceFn& div, const ParamDomain& domain, const ThetaPoint& t,
    double h = kChristoffelStep);

/// A real observable on the alphabet.
struct ObservableTable {
  std::vector<double> values;
};

/// Escort-reweighted variance of an observable: with w = p~/p^(a) and
/// c = E_{p~}[A], returns Var_{p^(a)}[w * (A - c)] by exact enumeration.
double weighted_variance(const BayesianModel& model, const ThetaPoint& t,
                         AlphaOrder a, const ObservableTable& A);

/// Squared metric norm of the differential of theta -> E_{p~}[A]:
/// partials d_i(lambda * E_{p_theta}[A]) are computed analytically from the
/// scores and the prior log-gradient, then contracted with the inverse of
/// bayesian_alpha_metric. Throws SingularInformation for ill-conditioned
/// metrics.
double differential_norm_sq(const BayesianModel& model, const ThetaPoint& t,
                            AlphaOrder a, const ObservableTable& A);

}  // namespace alphageo
