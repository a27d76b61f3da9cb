#include "alphageo/geometry.hpp"

#include <cmath>

namespace alphageo {

namespace {

ThetaPoint shifted(const ThetaPoint& t, std::size_t i, double delta) {
  ThetaPoint s = t;
  s.coords[i] += delta;
  return s;
}

ThetaPoint shifted2(const ThetaPoint& t, std::size_t i, double di,
                    std::size_t j, double dj) {
  ThetaPoint s = t;
  s.coords[i] += di;
  s.coords[j] += dj;
  return s;
}

}  // namespace

double min_eigenvalue(const MetricMatrix& m) {
  Eigen::SelfAdjointEigenSolver<MetricMatrix> es(m);
  return es.eigenvalues().minCoeff();
}

MetricMatrix symmetric_inverse(const MetricMatrix& m, double cond_cutoff) {
  Eigen::SelfAdjointEigenSolver<MetricMatrix> es(m);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double max_abs = ev.cwiseAbs().maxCoeff();
  const double min_abs = ev.cwiseAbs().minCoeff();
  if (!(min_abs > 0.0) || max_abs / min_abs > cond_cutoff) {
    throw SingularInformation(
        "symmetric_inverse: condition number above cutoff (|eig| range [" +
        std::to_string(min_abs) + ", " + std::to_string(max_abs) + "])");
  }
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

MetricMatrix alpha_fim(const ParametricFamily& fam, const ThetaPoint& t,
                       AlphaOrder a) {
  const FinitePmf p = fam.pmf(t);
  const Eigen::MatrixXd s = score_matrix(fam, t);
  const auto ew = detail::escort_weights(p.probs(), a.value());
  const std::size_t k = fam.k(), d = fam.d();

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(k);
  for (std::size_t x = 0; x < d; ++x) {
    mean += (ew.weights[x] / ew.sum) * s.col(x);
  }
  MetricMatrix g = MetricMatrix::Zero(k, k);
  for (std::size_t x = 0; x < d; ++x) {
    const Eigen::VectorXd c = s.col(x) - mean;
    g += (ew.weights[x] / ew.sum) * (c * c.transpose());
  }
  return g;
}

MetricMatrix prior_matrix(const Prior& prior, const ThetaPoint& t) {
  const Eigen::VectorXd b = prior.log_density_gradient(t);
  return b * b.transpose();
}

MetricMatrix bayesian_alpha_metric(const BayesianModel& model,
                                   const ThetaPoint& t, AlphaOrder a) {
  return model.prior().density(t) *
         (alpha_fim(model.family(), t, a) + prior_matrix(model.prior(), t));
}

DivergenceFn bayesian_divergence_fn(const BayesianModel& model, AlphaOrder a) {
  // captured by value so the returned function outlives the caller's model
  return [model, a](const ThetaPoint& t, const ThetaPoint& t2) {
    return bayesian_relative_alpha_entropy(model, t, t2, a);
  };
}

FdMetric eguchi_metric_fd(const DivergenceFn& div, const ParamDomain& domain,
                          const ThetaPoint& t, double h) {
  if (!(h > 0.0)) throw DomainError("eguchi_metric_fd: step must be positive");
  domain.require_interior(t, 2.0 * h, "eguchi_metric_fd");
  const std::size_t k = domain.dim();

  MetricMatrix raw(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      // mixed second derivative in theta_i (first slot) and theta'_j (second)
      const double dpp = div(shifted(t, i, h), shifted(t, j, h));
      const double dpm = div(shifted(t, i, h), shifted(t, j, -h));
      const double dmp = div(shifted(t, i, -h), shifted(t, j, h));
      const double dmm = div(shifted(t, i, -h), shifted(t, j, -h));
      raw(i, j) = -(dpp - dpm - dmp + dmm) / (4.0 * h * h);
    }
  }

  FdMetric out;
  out.metric = 0.5 * (raw + raw.transpose());
  const double scale = 1.0 + raw.cwiseAbs().maxCoeff();
  out.asymmetry_rel = (raw - raw.transpose()).cwiseAbs().maxCoeff() / scale;
  out.warning = out.asymmetry_rel > 1e-4;
  return out;
}

std::pair<ChristoffelTensor, ChristoffelTensor> christoffel_fd(
    const DivergenceFn& div, const ParamDomain& domain, const ThetaPoint& t,
    double h) {
  if (!(h > 0.0)) throw DomainError("christoffel_fd: step must be positive");
  domain.require_interior(t, 3.0 * h, "christoffel_fd");
  const std::size_t k = domain.dim();
  ChristoffelTensor gamma(k), gamma_dual(k);

  const double h3 = h * h * h;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        double g = 0.0, gd = 0.0;
        if (i == j) {
          // second derivative in one unprimed (resp. primed) coordinate,
          // first derivative in the other slot
          for (const double c : {1.0, -1.0}) {
            g -= c *
                 (div(shifted(t, i, h), shifted(t, l, c * h)) -
                  2.0 * div(t, shifted(t, l, c * h)) +
                  div(shifted(t, i, -h), shifted(t, l, c * h))) /
                 (2.0 * h3);
            gd -= c *
                  (div(shifted(t, l, c * h), shifted(t, i, h)) -
                   2.0 * div(shifted(t, l, c * h), t) +
                   div(shifted(t, l, c * h), shifted(t, i, -h))) /
                  (2.0 * h3);
          }
        } else {
          for (const double ci : {1.0, -1.0}) {
            for (const double cj : {1.0, -1.0}) {
              for (const double cl : {1.0, -1.0}) {
                const double sign = ci * cj * cl;
                g -= sign *
                     div(shifted2(t, i, ci * h, j, cj * h),
                         shifted(t, l, cl * h)) /
                     (8.0 * h3);
                gd -= sign *
                      div(shifted(t, l, cl * h),
                          shifted2(t, i, ci * h, j, cj * h)) /
                      (8.0 * h3);
              }
            }
          }
        }
        gamma.at(i, j, l) = gamma.at(j, i, l) = g;
        gamma_dual.at(i, j, l) = gamma_dual.at(j, i, l) = gd;
      }
    }
  }
  return {gamma, gamma_dual};
}

double weighted_variance(const BayesianModel& model, const ThetaPoint& t,
                         AlphaOrder a, const ObservableTable& A) {
  const FinitePmf p = model.family().pmf(t);
  const std::size_t d = p.size();
  if (A.values.size() != d) {
    throw DomainError("weighted_variance: observable length mismatch");
  }
  const double lam = model.prior().density(t);
  const auto ew = detail::escort_weights(p.probs(), a.value());

  double c = 0.0;
  for (std::size_t x = 0; x < d; ++x) c += lam * p[x] * A.values[x];

  double m1 = 0.0, m2 = 0.0;
  for (std::size_t x = 0; x < d; ++x) {
    const double esc = ew.weights[x] / ew.sum;
    const double z = lam * p[x] / esc * (A.values[x] - c);
    m1 += esc * z;
    m2 += esc * z * z;
  }
  return m2 - m1 * m1;
}

double differential_norm_sq(const BayesianModel& model, const ThetaPoint& t,
                            AlphaOrder a, const ObservableTable& A) {
  const FinitePmf p = model.family().pmf(t);
  const std::size_t k = model.family().k(), d = p.size();
  if (A.values.size() != d) {
    throw DomainError("differential_norm_sq: observable length mismatch");
  }
  const double lam = model.prior().density(t);
  const Eigen::VectorXd b = model.prior().log_density_gradient(t);
  const Eigen::MatrixXd s = score_matrix(model.family(), t);

  double mean_a = 0.0;
  for (std::size_t x = 0; x < d; ++x) mean_a += p[x] * A.values[x];

  // d_i E_{p~}[A] = lambda * (d_i ln lambda * E_p[A] + sum_x p s_i A)
  Eigen::VectorXd de(k);
  for (std::size_t i = 0; i < k; ++i) {
    double cov = 0.0;
    for (std::size_t x = 0; x < d; ++x) cov += p[x] * s(i, x) * A.values[x];
    de(i) = lam * (b(i) * mean_a + cov);
  }

  const MetricMatrix ginv = symmetric_inverse(bayesian_alpha_metric(model, t, a));
  return de.dot(ginv * de);
}

}  // namespace alphageo
