#pragma once

#include <cstddef>
#include <vector>

#include "alphageo/errors.hpp"

namespace alphageo {

/// Strict positivity floor for probability and mass entries. The divergences
/// implemented here live on open sets of positive measures; entries below the
/// floor are rejected rather than clipped.
inline constexpr double kEntryFloor = 1e-12;

/// Half-width of the window around alpha = 1 inside which the closed-form
/// alpha -> 1 limits (Kullback-Leibler forms) are used instead of the generic
/// expressions with their near-singular 1/(1-alpha) factors.
inline constexpr double kAlphaLimitWindow = 1e-6;

/// Entropic order alpha > 0. `is_limit()` is true exactly when alpha lies
/// within kAlphaLimitWindow of 1.
class AlphaOrder {
 public:
  explicit AlphaOrder(double alpha);

  double value() const { return alpha_; }
  bool is_limit() const;

 private:
  double alpha_;
};

/// Probability vector over a finite alphabet of size d >= 2.
/// Invariants: every entry >= kEntryFloor, entries sum to 1 within 1e-12.
class FinitePmf {
 public:
  explicit FinitePmf(std::vector<double> probs);

  static FinitePmf uniform(std::size_t d);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Unnormalized positive mass vector over a finite alphabet of size d >= 2.
/// Invariants: every entry >= kEntryFloor (hence total mass > 0).
class PositiveMeasure {
 public:
  explicit PositiveMeasure(std::vector<double> masses);
  PositiveMeasure(const FinitePmf& p, double scale);

  const std::vector<double>& masses() const { return masses_; }
  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }
  double total_mass() const { return total_; }

  FinitePmf normalized() const;

 private:
  std::vector<double> masses_;
  double total_;
};

/// Renyi entropy of order alpha, in nats. Shannon entropy on the limit
/// branch.
double entropy(const FinitePmf& p, AlphaOrder a);

/// Relative entropy sum_x p ln(p/q). Zero iff p = q.
double kld(const FinitePmf& p, const FinitePmf& q);

/// Relative entropy extended to unnormalized measures:
/// sum p~ ln(p~/q~) - sum p~ + sum q~. Nonnegative, zero iff p~ = q~.
double kld_positive_measures(const PositiveMeasure& pt,
                             const PositiveMeasure& qt);

/// Escort (alpha-scaled) distribution p(x)^alpha / sum_y p(y)^alpha.
FinitePmf escort(const FinitePmf& p, AlphaOrder a);

/// Relative alpha-entropy of p with respect to q:
///   a/(1-a) ln sum p q^{a-1} - 1/(1-a) ln sum p^a + ln sum q^a.
/// Delegates to kld() on the limit branch. Nonnegative, zero iff p = q, and
/// satisfies I_a(p, uniform) = ln d - H_a(p).
double relative_alpha_entropy(const FinitePmf& p, const FinitePmf& q,
                              AlphaOrder a);

/// Csiszar f-divergence between the alpha-escorts of p and q with
/// f(u) = sgn(1-a) (u^{1/a} - 1). Related to relative_alpha_entropy by
///   I_a(p,q) = a/(1-a) ln[sgn(1-a) D_f + 1].
/// The limit branch is rejected (f degenerates at a = 1).
double csiszar_f_divergence(const FinitePmf& p, const FinitePmf& q,
                            AlphaOrder a);

/// Renyi divergence of the given order: ln(sum p^o q^{1-o}) / (o - 1).
/// Requires order > 0 and order != 1. Applied to escorts at order 1/a it
/// reproduces relative_alpha_entropy.
double renyi_divergence(const FinitePmf& p, const FinitePmf& q, double order);

/// Relative alpha-entropy between the scaled measures lambda1*p and
/// lambda2*q (a likelihood paired with a prior density value at each of two
/// parameter points):
///
///   lam/(1-a) ln sum_x p(x) (lam2 q(x))^{a-1}
///     - lam ln(sum p^a) / (a(1-a)) + lam ln lam - lam + lam2
///     + (lam/a) ln sum q^a.
///
/// The constant part (lam ln lam - lam + lam2) makes the expression vanish
/// exactly when (p, lam) = (q, lam2) and makes the a -> 1 limit equal
/// kld_positive_measures(lam1 p, lam2 q), which the limit branch returns.
/// Under constant lam = lam2 = c the whole expression collapses to
/// (c/a) * relative_alpha_entropy(p, q, a).
double bayesian_relative_alpha_entropy(const FinitePmf& p, double lambda1,
                                       const FinitePmf& q, double lambda2,
                                       AlphaOrder a);

/// Variant constant convention for diagnostics: exceeds
/// bayesian_relative_alpha_entropy by exactly 2*lambda1 and therefore does
/// not vanish on the diagonal. Not a divergence; exposed so the two
/// conventions can be compared side by side.
double bayesian_relative_alpha_entropy_alt(const FinitePmf& p, double lambda1,
                                           const FinitePmf& q, double lambda2,
                                           AlphaOrder a);

namespace detail {

/// Unnormalized escort weights p^alpha and their sum, on raw vectors.
/// Internal building block shared by the divergence implementations; unlike
/// escort() this never round-trips through FinitePmf validation, so it is
/// usable at large alpha where escort entries underflow the pmf floor.
struct EscortWeights {
  std::vector<double> weights;
  double sum;
};
EscortWeights escort_weights(const std::vector<double>& p, double alpha);

}  // namespace detail

}  // namespace alphageo
