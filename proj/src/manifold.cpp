#include "alphageo/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "alphageo/quadrature.hpp"

namespace alphageo {

namespace {

std::string point_to_string(const ThetaPoint& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.dim(); ++i) {
    if (i) os << ", ";
    os << t[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

ParamDomain::ParamDomain(std::vector<std::array<double, 2>> boxes)
    : boxes_(std::move(boxes)) {
  if (boxes_.empty()) throw DomainError("ParamDomain: no boxes given");
  for (const auto& b : boxes_) {
    if (!(b[0] < b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1])) {
      throw DomainError("ParamDomain: interval bounds must satisfy lo < hi");
    }
  }
}

double ParamDomain::volume() const {
  double v = 1.0;
  for (const auto& b : boxes_) v *= (b[1] - b[0]);
  return v;
}

bool ParamDomain::contains_interior(const ThetaPoint& t, double margin) const {
  if (t.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(t[i] >= boxes_[i][0] + margin) || !(t[i] <= boxes_[i][1] - margin)) {
      return false;
    }
  }
  return true;
}

void ParamDomain::require_interior(const ThetaPoint& t, double margin,
                                   const char* what) const {
  if (!contains_interior(t, margin)) {
    throw DomainError(std::string(what) + ": point " + point_to_string(t) +
                      " not inside the domain with margin " +
                      std::to_string(margin));
  }
}

ParametricFamily::ParametricFamily(std::string name, std::size_t k,
                                   std::size_t d, ParamDomain domain,
                                   PmfFn pmf, ScoreFn analytic_score)
    : name_(std::move(name)),
      k_(k),
      d_(d),
      domain_(std::move(domain)),
      pmf_(std::move(pmf)),
      score_(std::move(analytic_score)) {
  if (k_ == 0 || d_ < 2 || domain_.dim() != k_ || !pmf_) {
    throw DomainError("ParametricFamily: inconsistent construction");
  }
}

FinitePmf ParametricFamily::pmf(const ThetaPoint& t) const {
  if (t.dim() != k_) {
    throw DomainError("ParametricFamily::pmf: theta has dimension " +
                      std::to_string(t.dim()) + ", expected " +
                      std::to_string(k_));
  }
  FinitePmf p = pmf_(t);
  if (p.size() != d_) {
    throw DomainError("ParametricFamily::pmf: evaluator returned alphabet of "
                      "unexpected size");
  }
  return p;
}

Eigen::MatrixXd ParametricFamily::analytic_score(const ThetaPoint& t) const {
  if (!score_) {
    throw DomainError("ParametricFamily: no analytic score evaluator");
  }
  return score_(t);
}

Prior::Prior(std::string name, ParamDomain domain, DensityFn density,
             LogGradFn log_gradient)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      density_(std::move(density)),
      log_gradient_(std::move(log_gradient)) {
  if (!density_ || !log_gradient_) {
    throw PriorError("Prior: missing density or log-gradient evaluator");
  }
}

double Prior::density(const ThetaPoint& t) const {
  const double v = density_(t);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw PriorError("Prior '" + name_ + "': density " + std::to_string(v) +
                     " is not strictly positive at " + point_to_string(t));
  }
  return v;
}

Eigen::VectorXd Prior::log_density_gradient(const ThetaPoint& t) const {
  return log_gradient_(t);
}

BayesianModel::BayesianModel(ParametricFamily family, Prior prior)
    : family_(std::move(family)), prior_(std::move(prior)) {
  if (!(family_.domain() == prior_.domain())) {
    throw DomainError("BayesianModel: family and prior domains differ");
  }
}

PositiveMeasure BayesianModel::scaled_pmf(const ThetaPoint& t) const {
  return PositiveMeasure(family_.pmf(t), prior_.density(t));
}

Eigen::MatrixXd score_matrix(const ParametricFamily& fam, const ThetaPoint& t,
                             double h) {
  fam.domain().require_interior(t, h, "score_matrix");
  const std::size_t k = fam.k(), d = fam.d();
  if (fam.has_analytic_score()) {
    Eigen::MatrixXd s = fam.analytic_score(t);
    if (s.rows() != static_cast<Eigen::Index>(k) ||
        s.cols() != static_cast<Eigen::Index>(d)) {
      throw DomainError("score_matrix: analytic score has wrong shape");
    }
    return s;
  }
  // Central differences of ln p_theta, recentred so the zero-mean identity
  // sum_x p(x) s_i(x) = 0 holds exactly.
  const FinitePmf p = fam.pmf(t);
  Eigen::MatrixXd s(k, d);
  for (std::size_t i = 0; i < k; ++i) {
    ThetaPoint tp = t, tm = t;
    tp.coords[i] += h;
    tm.coords[i] -= h;
    const FinitePmf pp = fam.pmf(tp), pm = fam.pmf(tm);
    double mean = 0.0;
    for (std::size_t x = 0; x < d; ++x) {
      s(i, x) = (std::log(pp[x]) - std::log(pm[x])) / (2.0 * h);
      mean += p[x] * s(i, x);
    }
    for (std::size_t x = 0; x < d; ++x) s(i, x) -= mean;
  }
  return s;
}

Eigen::MatrixXd alpha_score_matrix(const ParametricFamily& fam,
                                   const ThetaPoint& t, AlphaOrder a) {
  const FinitePmf p = fam.pmf(t);
  const Eigen::MatrixXd s = score_matrix(fam, t);
  const auto ew = detail::escort_weights(p.probs(), a.value());
  const std::size_t k = fam.k(), d = fam.d();
  Eigen::MatrixXd out(k, d);
  for (std::size_t i = 0; i < k; ++i) {
    double esc_mean = 0.0;
    for (std::size_t x = 0; x < d; ++x) {
      esc_mean += ew.weights[x] / ew.sum * s(i, x);
    }
    for (std::size_t x = 0; x < d; ++x) {
      out(i, x) = (ew.weights[x] / ew.sum) / p[x] * (s(i, x) - esc_mean);
    }
  }
  return out;
}

TangentVector::TangentVector(std::vector<double> rep_m)
    : rep_m_(std::move(rep_m)) {
  if (rep_m_.size() < 2) {
    throw DomainError("TangentVector: alphabet size must be >= 2");
  }
  double sum = 0.0, scale = 0.0;
  for (double v : rep_m_) {
    sum += v;
    scale += std::abs(v);
  }
  if (std::abs(sum) > 1e-9 * std::max(1.0, scale)) {
    throw DomainError("TangentVector: mixture representation sums to " +
                      std::to_string(sum) + ", expected 0");
  }
}

std::vector<double> e_representation(const TangentVector& v,
                                     const PositiveMeasure& pt) {
  if (v.size() != pt.size()) {
    throw DomainError("e_representation: length mismatch");
  }
  std::vector<double> e(v.size());
  for (std::size_t x = 0; x < v.size(); ++x) e[x] = v.rep_m()[x] / pt[x];
  return e;
}

std::vector<double> alpha_representation(const TangentVector& v,
                                         const PositiveMeasure& pt,
                                         AlphaOrder a) {
  const std::vector<double> e = e_representation(v, pt);
  const FinitePmf p = pt.normalized();
  const auto ew = detail::escort_weights(p.probs(), a.value());
  double esc_mean = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    esc_mean += ew.weights[x] / ew.sum * e[x];
  }
  std::vector<double> out(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    out[x] = (ew.weights[x] / ew.sum) / p[x] * (e[x] - esc_mean);
  }
  return out;
}

namespace {

ParamDomain domain_from_spec(const std::vector<std::array<double, 2>>& boxes,
                             std::size_t expected_k, const char* type) {
  if (boxes.size() != expected_k) {
    throw ConfigError(std::string("family/prior '") + type + "': domain has " +
                      std::to_string(boxes.size()) + " boxes, expected " +
                      std::to_string(expected_k));
  }
  try {
    return ParamDomain(boxes);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("family/prior '") + type + "': " + e.what());
  }
}

double binomial_coefficient(std::size_t n, std::size_t x) {
  double c = 1.0;
  for (std::size_t i = 1; i <= x; ++i) {
    c *= static_cast<double>(n - x + i) / static_cast<double>(i);
  }
  return c;
}

// Composite Simpson on [lo, hi] with an odd number of nodes. Local helper for
// prior normalizers; the experiment-facing grids live in quadrature.hpp.
template <typename F>
double simpson_1d(F f, double lo, double hi, std::size_t n) {
  const double h = (hi - lo) / static_cast<double>(n - 1);
  double acc = f(lo) + f(hi);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    acc += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + static_cast<double>(i) * h);
  }
  return acc * h / 3.0;
}

}  // namespace

ParametricFamily family_from_spec(const FamilySpec& spec) {
  if (spec.type == "bernoulli") {
    ParamDomain dom = domain_from_spec(spec.domain, 1, "bernoulli");
    auto pmf = [](const ThetaPoint& t) {
      return FinitePmf({1.0 - t[0], t[0]});
    };
    auto score = [](const ThetaPoint& t) {
      Eigen::MatrixXd s(1, 2);
      s << -1.0 / (1.0 - t[0]), 1.0 / t[0];
      return s;
    };
    return ParametricFamily("bernoulli", 1, 2, std::move(dom), pmf, score);
  }
  if (spec.type == "categorical") {
    const std::size_t d = spec.d;
    if (d < 2) throw ConfigError("family 'categorical': d must be >= 2");
    ParamDomain dom = domain_from_spec(spec.domain, d - 1, "categorical");
    auto pmf = [d](const ThetaPoint& t) {
      std::vector<double> p(d);
      double rest = 1.0;
      for (std::size_t i = 0; i + 1 < d; ++i) {
        p[i] = t[i];
        rest -= t[i];
      }
      p[d - 1] = rest;
      return FinitePmf(std::move(p));
    };
    auto score = [d](const ThetaPoint& t) {
      double rest = 1.0;
      for (std::size_t i = 0; i + 1 < d; ++i) rest -= t[i];
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d - 1, d);
      for (std::size_t i = 0; i + 1 < d; ++i) {
        s(i, i) = 1.0 / t[i];
        s(i, d - 1) = -1.0 / rest;
      }
      return s;
    };
    return ParametricFamily("categorical", d - 1, d, std::move(dom), pmf,
                            score);
  }
  if (spec.type == "binomial") {
    const std::size_t n = spec.n;
    if (n < 1 || n > 50) {
      throw ConfigError("family 'binomial': n must be in [1, 50]");
    }
    ParamDomain dom = domain_from_spec(spec.domain, 1, "binomial");
    std::vector<double> coeff(n + 1);
    for (std::size_t x = 0; x <= n; ++x) coeff[x] = binomial_coefficient(n, x);
    auto pmf = [n, coeff](const ThetaPoint& t) {
      std::vector<double> p(n + 1);
      for (std::size_t x = 0; x <= n; ++x) {
        p[x] = coeff[x] * std::pow(t[0], static_cast<double>(x)) *
               std::pow(1.0 - t[0], static_cast<double>(n - x));
      }
      return FinitePmf(std::move(p));
    };
    auto score = [n](const ThetaPoint& t) {
      Eigen::MatrixXd s(1, n + 1);
      for (std::size_t x = 0; x <= n; ++x) {
        s(0, x) = static_cast<double>(x) / t[0] -
                  static_cast<double>(n - x) / (1.0 - t[0]);
      }
      return s;
    };
    return ParametricFamily("binomial", 1, n + 1, std::move(dom), pmf, score);
  }
  if (spec.type == "tilted") {
    const FinitePmf base(spec.base);  // validates the base pmf
    const std::size_t d = base.size();
    const std::size_t k = spec.features.size();
    if (k == 0) throw ConfigError("family 'tilted': no feature rows");
    for (const auto& row : spec.features) {
      if (row.size() != d) {
        throw ConfigError("family 'tilted': feature row length differs from "
                          "base alphabet size");
      }
    }
    ParamDomain dom = domain_from_spec(spec.domain, k, "tilted");
    const auto features = spec.features;
    auto pmf = [base, features, k, d](const ThetaPoint& t) {
      std::vector<double> logw(d);
      double maxw = -1e300;
      for (std::size_t x = 0; x < d; ++x) {
        double e = std::log(base[x]);
        for (std::size_t i = 0; i < k; ++i) e += t[i] * features[i][x];
        logw[x] = e;
        maxw = std::max(maxw, e);
      }
      std::vector<double> p(d);
      double z = 0.0;
      for (std::size_t x = 0; x < d; ++x) {
        p[x] = std::exp(logw[x] - maxw);
        z += p[x];
      }
      for (double& v : p) v /= z;
      return FinitePmf(std::move(p));
    };
    auto score = [pmf, features, k, d](const ThetaPoint& t) {
      const FinitePmf p = pmf(t);
      Eigen::MatrixXd s(k, d);
      for (std::size_t i = 0; i < k; ++i) {
        double mean = 0.0;
        for (std::size_t x = 0; x < d; ++x) mean += p[x] * features[i][x];
        for (std::size_t x = 0; x < d; ++x) s(i, x) = features[i][x] - mean;
      }
      return s;
    };
    return ParametricFamily("tilted", k, d, std::move(dom), pmf, score);
  }
  throw ConfigError("unknown family type '" + spec.type + "'");
}

Prior prior_from_spec(const PriorSpec& spec) {
  if (spec.type == "uniform_box") {
    ParamDomain dom = domain_from_spec(spec.domain, spec.domain.size(),
                                       "uniform_box");
    const double lam = 1.0 / dom.volume();
    const std::size_t k = dom.dim();
    auto density = [lam](const ThetaPoint&) { return lam; };
    auto loggrad = [k](const ThetaPoint&) {
      return Eigen::VectorXd::Zero(k).eval();
    };
    return Prior("uniform_box", std::move(dom), density, loggrad);
  }
  if (spec.type == "trunc_beta") {
    ParamDomain dom = domain_from_spec(spec.domain, spec.domain.size(),
                                       "trunc_beta");
    const double a = spec.a, b = spec.b;
    if (!(a > 0.0) || !(b > 0.0)) {
      throw ConfigError("prior 'trunc_beta': shape parameters must be > 0");
    }
    const std::size_t k = dom.dim();
    std::vector<double> norms(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& box = dom.box(i);
      if (!(box[0] > 0.0) || !(box[1] < 1.0)) {
        throw ConfigError("prior 'trunc_beta': domain box must lie strictly "
                          "inside (0, 1)");
      }
      norms[i] = simpson_1d(
          [a, b](double th) {
            return std::pow(th, a - 1.0) * std::pow(1.0 - th, b - 1.0);
          },
          box[0], box[1], 2001);
    }
    auto density = [a, b, k, norms](const ThetaPoint& t) {
      double v = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        v *= std::pow(t[i], a - 1.0) * std::pow(1.0 - t[i], b - 1.0) / norms[i];
      }
      return v;
    };
    auto loggrad = [a, b, k](const ThetaPoint& t) {
      Eigen::VectorXd g(k);
      for (std::size_t i = 0; i < k; ++i) {
        g(i) = (a - 1.0) / t[i] - (b - 1.0) / (1.0 - t[i]);
      }
      return g;
    };
    return Prior("trunc_beta", std::move(dom), density, loggrad);
  }
  if (spec.type == "tabulated") {
    ParamDomain dom = domain_from_spec(spec.domain, spec.domain.size(),
                                       "tabulated");
    if (dom.dim() != 1) {
      throw ConfigError("prior 'tabulated': supported for 1-D domains only");
    }
    const auto& knots = spec.knots;
    const auto& values = spec.values;
    if (knots.size() < 2 || knots.size() != values.size()) {
      throw ConfigError("prior 'tabulated': need matching knot and value "
                        "arrays of length >= 2");
    }
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      if (!(knots[i] < knots[i + 1])) {
        throw ConfigError("prior 'tabulated': knots must strictly increase");
      }
    }
    const auto& box = dom.box(0);
    if (std::abs(knots.front() - box[0]) > 1e-12 ||
        std::abs(knots.back() - box[1]) > 1e-12) {
      throw ConfigError("prior 'tabulated': knots must span the domain box");
    }
    for (double v : values) {
      if (!(v > 0.0)) {
        throw PriorError("prior 'tabulated': density values must be > 0 "
                         "everywhere on the grid");
      }
    }
    // Piecewise-linear densities integrate exactly with the trapezoid sum.
    double z = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      z += 0.5 * (values[i] + values[i + 1]) * (knots[i + 1] - knots[i]);
    }
    auto segment = [knots](double th) {
      std::size_t s = 0;
      while (s + 2 < knots.size() && th >= knots[s + 1]) ++s;
      return s;
    };
    auto density = [knots, values, z, segment](const ThetaPoint& t) {
      const std::size_t s = segment(t[0]);
      const double u = (t[0] - knots[s]) / (knots[s + 1] - knots[s]);
      return (values[s] * (1.0 - u) + values[s + 1] * u) / z;
    };
    auto loggrad = [knots, values, z, segment,
                    density](const ThetaPoint& t) {
      const std::size_t s = segment(t[0]);
      const double slope =
          (values[s + 1] - values[s]) / (knots[s + 1] - knots[s]) / z;
      Eigen::VectorXd g(1);
      g(0) = slope / density(t);
      return g;
    };
    return Prior("tabulated", std::move(dom), density, loggrad);
  }
  throw ConfigError("unknown prior type '" + spec.type + "'");
}

namespace {

// Interior lattice used by validate_model: `per_dim` fractions per axis,
// kept a small constant distance from the faces so FD probes stay inside.
std::vector<ThetaPoint> lattice(const ParamDomain& dom, std::size_t per_dim,
                                double edge_fraction) {
  const std::size_t k = dom.dim();
  std::vector<ThetaPoint> pts;
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    ThetaPoint t;
    t.coords.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& b = dom.box(i);
      const double f =
          edge_fraction + (1.0 - 2.0 * edge_fraction) *
                              (per_dim == 1 ? 0.5
                                            : static_cast<double>(idx[i]) /
                                                  static_cast<double>(per_dim - 1));
      t.coords[i] = b[0] + f * (b[1] - b[0]);
    }
    pts.push_back(std::move(t));
    std::size_t i = 0;
    while (i < k && ++idx[i] == per_dim) idx[i++] = 0;
    if (i == k) break;
  }
  return pts;
}

}  // namespace

ModelValidationReport validate_model(const BayesianModel& model) {
  ModelValidationReport rep;
  const ParametricFamily& fam = model.family();
  const Prior& prior = model.prior();
  const std::size_t k = fam.k();
  const std::size_t per_dim = k == 1 ? 9 : (k == 2 ? 7 : 3);

  // pmf validity on the closed box, including the corners.
  for (const ThetaPoint& t : lattice(fam.domain(), per_dim, 0.0)) {
    try {
      (void)fam.pmf(t);
    } catch (const Error& e) {
      rep.pass = false;
      rep.failures.push_back(std::string("pmf validity: ") + e.what());
    }
  }

  const double h = kScoreStep;
  for (const ThetaPoint& t : lattice(fam.domain(), per_dim, 0.05)) {
    FinitePmf p = fam.pmf(t);
    // zero-mean scores and, when analytic scores exist, FD agreement
    try {
      const Eigen::MatrixXd s = score_matrix(fam, t);
      for (std::size_t i = 0; i < k; ++i) {
        double mean = 0.0;
        for (std::size_t x = 0; x < fam.d(); ++x) mean += p[x] * s(i, x);
        rep.worst_score_mean = std::max(rep.worst_score_mean, std::abs(mean));
      }
      if (fam.has_analytic_score()) {
        for (std::size_t i = 0; i < k; ++i) {
          ThetaPoint tp = t, tm = t;
          tp.coords[i] += h;
          tm.coords[i] -= h;
          const FinitePmf pp = fam.pmf(tp), pm = fam.pmf(tm);
          for (std::size_t x = 0; x < fam.d(); ++x) {
            const double fd = (std::log(pp[x]) - std::log(pm[x])) / (2.0 * h);
            rep.worst_score_fd_diff =
                std::max(rep.worst_score_fd_diff, std::abs(fd - s(i, x)));
          }
        }
      }
    } catch (const Error& e) {
      rep.pass = false;
      rep.failures.push_back(std::string("score evaluation: ") + e.what());
    }
    // prior positivity and log-gradient FD agreement
    try {
      const Eigen::VectorXd g = prior.log_density_gradient(t);
      for (std::size_t i = 0; i < k; ++i) {
        ThetaPoint tp = t, tm = t;
        tp.coords[i] += h;
        tm.coords[i] -= h;
        const double fd =
            (std::log(prior.density(tp)) - std::log(prior.density(tm))) /
            (2.0 * h);
        rep.worst_prior_loggrad_fd_diff =
            std::max(rep.worst_prior_loggrad_fd_diff, std::abs(fd - g(i)));
      }
    } catch (const Error& e) {
      rep.pass = false;
      rep.failures.push_back(std::string("prior evaluation: ") + e.what());
    }
  }

  if (rep.worst_score_mean > 1e-10) {
    rep.pass = false;
    rep.failures.push_back("score zero-mean residual above 1e-10");
  }
  if (rep.worst_score_fd_diff > 1e-6) {
    rep.pass = false;
    rep.failures.push_back("analytic scores disagree with central "
                           "differences beyond 1e-6");
  }
  if (rep.worst_prior_loggrad_fd_diff > 1e-6) {
    rep.pass = false;
    rep.failures.push_back("prior log-gradient disagrees with central "
                           "differences beyond 1e-6");
  }

  // prior normalization under the module's quadrature
  try {
    const std::size_t n = k == 1 ? 2001 : (k == 2 ? 101 : 41);
    const QuadratureGrid grid(QuadratureRule::simpson, n, prior.domain());
    double integral = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      integral += grid.weight(i) * prior.density(grid.node(i));
    }
    rep.prior_normalization_residual = std::abs(integral - 1.0);
    if (rep.prior_normalization_residual > 1e-6) {
      rep.pass = false;
      rep.failures.push_back("prior quadrature integral differs from 1 "
                             "beyond 1e-6");
    }
  } catch (const Error& e) {
    rep.pass = false;
    rep.failures.push_back(std::string("prior normalization: ") + e.what());
  }

  return rep;
}

double bayesian_relative_alpha_entropy(const BayesianModel& model,
                                       const ThetaPoint& theta,
                                       const ThetaPoint& theta2,
                                       AlphaOrder a) {
  model.family().domain().require_interior(theta, 0.0,
                                           "bayesian_relative_alpha_entropy");
  model.family().domain().require_interior(theta2, 0.0,
                                           "bayesian_relative_alpha_entropy");
  return bayesian_relative_alpha_entropy(
      model.family().pmf(theta), model.prior().density(theta),
      model.family().pmf(theta2), model.prior().density(theta2), a);
}

}  // namespace alphageo
