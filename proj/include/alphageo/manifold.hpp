#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "alphageo/measures.hpp"

namespace alphageo {

/// Central-difference step for first derivatives (scores, prior
/// log-gradients). Chosen to balance truncation against roundoff at 64-bit
/// precision.
inline constexpr double kScoreStep = 1e-5;

/// A parameter point theta = (theta_1, ..., theta_k).
struct ThetaPoint {
  std::vector<double> coords;

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const ThetaPoint&, const ThetaPoint&) = default;
};

/// Closed box [lo_1,hi_1] x ... x [lo_k,hi_k] in parameter space.
class ParamDomain {
 public:
  ParamDomain() = default;
  explicit ParamDomain(std::vector<std::array<double, 2>> boxes);

  std::size_t dim() const { return boxes_.size(); }
  const std::array<double, 2>& box(std::size_t i) const { return boxes_[i]; }
  const std::vector<std::array<double, 2>>& boxes() const { return boxes_; }
  double volume() const;

  /// True when t lies in the box with distance >= margin from every face.
  bool contains_interior(const ThetaPoint& t, double margin) const;

  /// Throws DomainError unless contains_interior(t, margin).
  void require_interior(const ThetaPoint& t, double margin,
                        const char* what) const;

  friend bool operator==(const ParamDomain&, const ParamDomain&) = default;

 private:
  std::vector<std::array<double, 2>> boxes_;
};

/// Parametric family theta -> p_theta over a finite alphabet, optionally with
/// an analytic score evaluator (rows are d/d theta_i of ln p_theta).
class ParametricFamily {
 public:
  using PmfFn = std::function<FinitePmf(const ThetaPoint&)>;
  using ScoreFn = std::function<Eigen::MatrixXd(const ThetaPoint&)>;

  ParametricFamily(std::string name, std::size_t k, std::size_t d,
                   ParamDomain domain, PmfFn pmf, ScoreFn analytic_score = {});

  const std::string& name() const { return name_; }
  std::size_t k() const { return k_; }
  std::size_t d() const { return d_; }
  const ParamDomain& domain() const { return domain_; }

  FinitePmf pmf(const ThetaPoint& t) const;
  bool has_analytic_score() const { return static_cast<bool>(score_); }
  Eigen::MatrixXd analytic_score(const ThetaPoint& t) const;

 private:
  std::string name_;
  std::size_t k_, d_;
  ParamDomain domain_;
  PmfFn pmf_;
  ScoreFn score_;
};

/// Prior density lambda on the parameter domain, with analytic log-density
/// gradient. Densities must be normalized on the box (validate_model checks
/// the quadrature integral).
class Prior {
 public:
  using DensityFn = std::function<double(const ThetaPoint&)>;
  using LogGradFn = std::function<Eigen::VectorXd(const ThetaPoint&)>;

  Prior(std::string name, ParamDomain domain, DensityFn density,
        LogGradFn log_gradient);

  const std::string& name() const { return name_; }
  const ParamDomain& domain() const { return domain_; }

  /// lambda(t); throws PriorError if the density is not strictly positive.
  double density(const ThetaPoint& t) const;
  Eigen::VectorXd log_density_gradient(const ThetaPoint& t) const;

 private:
  std::string name_;
  ParamDomain domain_;
  DensityFn density_;
  LogGradFn log_gradient_;
};

/// A parametric family coupled with a prior over its parameters; together
/// they define the scaled measures p~_theta = lambda(theta) p_theta.
class BayesianModel {
 public:
  BayesianModel(ParametricFamily family, Prior prior);

  const ParametricFamily& family() const { return family_; }
  const Prior& prior() const { return prior_; }

  /// lambda(theta) * p_theta as a positive measure.
  PositiveMeasure scaled_pmf(const ThetaPoint& t) const;

 private:
  ParametricFamily family_;
  Prior prior_;
};

/// Score matrix entries[i][x] = d/d theta_i ln p_theta(x). Uses the analytic
/// evaluator when present, otherwise central differences of ln p_theta with
/// step h, recentered so the exact zero-mean identity
/// sum_x p_theta(x) s_i(x) = 0 holds.
Eigen::MatrixXd score_matrix(const ParametricFamily& fam, const ThetaPoint& t,
                             double h = kScoreStep);

/// Alpha-representation of the coordinate scores:
///   entries[i][x] = (p^(a)(x)/p(x)) * (s_i(x) - E_{p^(a)}[s_i]),
/// which is zero-mean under p_theta and pairs with d/d theta_j p_theta to
/// reproduce the escort Fisher matrix.
Eigen::MatrixXd alpha_score_matrix(const ParametricFamily& fam,
                                   const ThetaPoint& t, AlphaOrder a);

/// Tangent vector in mixture representation: a vector over the alphabet
/// summing to zero (a mass-preserving direction).
class TangentVector {
 public:
  explicit TangentVector(std::vector<double> rep_m);

  const std::vector<double>& rep_m() const { return rep_m_; }
  std::size_t size() const { return rep_m_.size(); }

 private:
  std::vector<double> rep_m_;
};

/// Exponential representation X^(e)(x) = X^(m)(x) / p~(x).
std::vector<double> e_representation(const TangentVector& v,
                                     const PositiveMeasure& pt);

/// Alpha representation
///   X^(a)(x) = (p^(a)(x)/p(x)) * (X^(e)(x) - E_{p^(a)}[X^(e)]),
/// where p is the normalization of pt (escorts ignore total mass). The
/// output has zero mean under p~.
std::vector<double> alpha_representation(const TangentVector& v,
                                         const PositiveMeasure& pt,
                                         AlphaOrder a);

/// Family construction spec, populated from an experiment config.
struct FamilySpec {
  std::string type;  // bernoulli | categorical | binomial | tilted
  std::size_t d = 0;                           // categorical alphabet size
  std::size_t n = 0;                           // binomial trial count
  std::vector<double> base;                    // tilted base pmf
  std::vector<std::vector<double>> features;   // tilted features, k rows of d
  std::vector<std::array<double, 2>> domain;
};

/// Prior construction spec, populated from an experiment config.
struct PriorSpec {
  std::string type;  // uniform_box | trunc_beta | tabulated
  double a = 2.0, b = 2.0;        // trunc_beta shape parameters
  std::vector<double> knots;      // tabulated (1-D)
  std::vector<double> values;     // tabulated density values at the knots
  std::vector<std::array<double, 2>> domain;
};

ParametricFamily family_from_spec(const FamilySpec& spec);
Prior prior_from_spec(const PriorSpec& spec);

/// Result of validate_model: every failed invariant is recorded rather than
/// thrown, so a report is produced even for deliberately broken models.
struct ModelValidationReport {
  bool pass = true;
  double worst_score_fd_diff = 0.0;        // analytic vs FD scores
  double worst_score_mean = 0.0;           // |E_p[score row]|
  double prior_normalization_residual = 0.0;  // |integral of lambda - 1|
  double worst_prior_loggrad_fd_diff = 0.0;
  std::vector<std::string> failures;
};

/// Probes the model on a lattice over its domain: pmf validity, analytic
/// score agreement with central differences (<= 1e-6), score zero-mean
/// (<= 1e-10), prior normalization under quadrature (<= 1e-6), and prior
/// log-gradient agreement with finite differences (<= 1e-6).
ModelValidationReport validate_model(const BayesianModel& model);

/// Corrected Bayesian relative alpha-entropy evaluated through a model:
/// measures::bayesian_relative_alpha_entropy with p = p_theta,
/// lambda = lambda(theta) at both points.
double bayesian_relative_alpha_entropy(const BayesianModel& model,
                                       const ThetaPoint& theta,
                                       const ThetaPoint& theta2, AlphaOrder a);

}  // namespace alphageo
