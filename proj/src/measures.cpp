#include "alphageo/measures.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace alphageo {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DomainError(std::string(op) + ": length mismatch (" +
                      std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

AlphaOrder::AlphaOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("AlphaOrder: alpha must be a positive finite real, got " +
                      std::to_string(alpha));
  }
}

bool AlphaOrder::is_limit() const {
  return std::abs(alpha_ - 1.0) < kAlphaLimitWindow;
}

FinitePmf::FinitePmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw DomainError("FinitePmf: alphabet size must be >= 2");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= kEntryFloor) || !std::isfinite(p)) {
      throw DomainError("FinitePmf: entry " + std::to_string(p) +
                        " below positivity floor " + std::to_string(kEntryFloor));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw DomainError("FinitePmf: entries sum to " + std::to_string(sum) +
                      ", not 1 within 1e-12");
  }
}

FinitePmf FinitePmf::uniform(std::size_t d) {
  if (d < 2) throw DomainError("FinitePmf::uniform: d must be >= 2");
  return FinitePmf(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

PositiveMeasure::PositiveMeasure(std::vector<double> masses)
    : masses_(std::move(masses)), total_(0.0) {
  if (masses_.size() < 2) {
    throw DomainError("PositiveMeasure: alphabet size must be >= 2");
  }
  for (double m : masses_) {
    if (!(m >= kEntryFloor) || !std::isfinite(m)) {
      throw DomainError("PositiveMeasure: entry " + std::to_string(m) +
                        " below positivity floor");
    }
    total_ += m;
  }
}

PositiveMeasure::PositiveMeasure(const FinitePmf& p, double scale)
    : masses_(p.probs()), total_(0.0) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("PositiveMeasure: scale must be positive");
  }
  for (double& m : masses_) m *= scale;
  for (double m : masses_) total_ += m;
}

FinitePmf PositiveMeasure::normalized() const {
  std::vector<double> p(masses_);
  for (double& v : p) v /= total_;
  return FinitePmf(std::move(p));
}

namespace detail {

EscortWeights escort_weights(const std::vector<double>& p, double alpha) {
  EscortWeights out;
  out.weights.resize(p.size());
  out.sum = 0.0;
  if (std::abs(alpha - 1.0) < kAlphaLimitWindow) {
    out.weights = p;
    for (double v : p) out.sum += v;
    return out;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.weights[i] = std::pow(p[i], alpha);
    out.sum += out.weights[i];
  }
  return out;
}

}  // namespace detail

double entropy(const FinitePmf& p, AlphaOrder a) {
  if (a.is_limit()) {
    double h = 0.0;
    for (double v : p.probs()) h -= v * std::log(v);
    return h;
  }
  double s = 0.0;
  for (double v : p.probs()) s += std::pow(v, a.value());
  return std::log(s) / (1.0 - a.value());
}

double kld(const FinitePmf& p, const FinitePmf& q) {
  require_same_length(p.size(), q.size(), "kld");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d;
}

double kld_positive_measures(const PositiveMeasure& pt,
                             const PositiveMeasure& qt) {
  require_same_length(pt.size(), qt.size(), "kld_positive_measures");
  double d = 0.0;
  for (std::size_t i = 0; i < pt.size(); ++i) {
    d += pt[i] * std::log(pt[i] / qt[i]);
  }
  return d - pt.total_mass() + qt.total_mass();
}

FinitePmf escort(const FinitePmf& p, AlphaOrder a) {
  if (a.is_limit()) return p;
  auto ew = detail::escort_weights(p.probs(), a.value());
  for (double& w : ew.weights) w /= ew.sum;
  return FinitePmf(std::move(ew.weights));
}

double relative_alpha_entropy(const FinitePmf& p, const FinitePmf& q,
                              AlphaOrder a) {
  require_same_length(p.size(), q.size(), "relative_alpha_entropy");
  if (a.is_limit()) return kld(p, q);
  const double alpha = a.value();
  double cross = 0.0, ps = 0.0, qs = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cross += p[i] * std::pow(q[i], alpha - 1.0);
    ps += std::pow(p[i], alpha);
    qs += std::pow(q[i], alpha);
  }
  return alpha / (1.0 - alpha) * std::log(cross) -
         std::log(ps) / (1.0 - alpha) + std::log(qs);
}

double csiszar_f_divergence(const FinitePmf& p, const FinitePmf& q,
                            AlphaOrder a) {
  require_same_length(p.size(), q.size(), "csiszar_f_divergence");
  if (a.is_limit()) {
    throw DomainError("csiszar_f_divergence: f degenerates at alpha = 1");
  }
  const double alpha = a.value();
  const double sgn = (1.0 - alpha) > 0.0 ? 1.0 : -1.0;
  auto pe = detail::escort_weights(p.probs(), alpha);
  auto qe = detail::escort_weights(q.probs(), alpha);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pa = pe.weights[i] / pe.sum;
    const double qa = qe.weights[i] / qe.sum;
    d += qa * sgn * (std::pow(pa / qa, 1.0 / alpha) - 1.0);
  }
  return d;
}

double renyi_divergence(const FinitePmf& p, const FinitePmf& q, double order) {
  require_same_length(p.size(), q.size(), "renyi_divergence");
  if (!(order > 0.0) || !std::isfinite(order)) {
    throw DomainError("renyi_divergence: order must be positive");
  }
  if (std::abs(order - 1.0) < 1e-9) {
    throw DomainError("renyi_divergence: order must differ from 1");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += std::pow(p[i], order) * std::pow(q[i], 1.0 - order);
  }
  return std::log(s) / (order - 1.0);
}

double bayesian_relative_alpha_entropy(const FinitePmf& p, double lambda1,
                                       const FinitePmf& q, double lambda2,
                                       AlphaOrder a) {
  require_same_length(p.size(), q.size(), "bayesian_relative_alpha_entropy");
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !std::isfinite(lambda1) ||
      !std::isfinite(lambda2)) {
    throw PriorError("bayesian_relative_alpha_entropy: prior density must be "
                     "positive at both points");
  }
  if (a.is_limit()) {
    return kld_positive_measures(PositiveMeasure(p, lambda1),
                                 PositiveMeasure(q, lambda2));
  }
  const double alpha = a.value();
  double cross = 0.0, ps = 0.0, qs = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cross += p[i] * std::pow(lambda2 * q[i], alpha - 1.0);
    ps += std::pow(p[i], alpha);
    qs += std::pow(q[i], alpha);
  }
  return lambda1 / (1.0 - alpha) * std::log(cross) -
         lambda1 * std::log(ps) / (alpha * (1.0 - alpha)) +
         lambda1 * std::log(lambda1) - lambda1 + lambda2 +
         lambda1 / alpha * std::log(qs);
}

double bayesian_relative_alpha_entropy_alt(const FinitePmf& p, double lambda1,
                                           const FinitePmf& q, double lambda2,
                                           AlphaOrder a) {
  return bayesian_relative_alpha_entropy(p, lambda1, q, lambda2, a) +
         2.0 * lambda1;
}

}  // namespace alphageo
