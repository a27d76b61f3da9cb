#include "alphageo/quadrature.hpp"

#include <cmath>
#include <string>

namespace alphageo {

namespace {

std::vector<double> rule_weights_1d(QuadratureRule rule, std::size_t n,
                                    double lo, double hi) {
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> w(n);
  if (rule == QuadratureRule::trapezoid) {
    for (std::size_t i = 0; i < n; ++i) w[i] = h;
    w.front() = w.back() = 0.5 * h;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    }
    w.front() = w.back() = h / 3.0;
  }
  return w;
}

}  // namespace

QuadratureGrid::QuadratureGrid(QuadratureRule rule, std::size_t nodes_per_dim,
                               const ParamDomain& domain)
    : rule_(rule), nodes_per_dim_(nodes_per_dim) {
  if (rule == QuadratureRule::simpson) {
    if (nodes_per_dim < 3 || nodes_per_dim % 2 == 0) {
      throw ConfigError("QuadratureGrid: simpson requires an odd node count "
                        ">= 3, got " + std::to_string(nodes_per_dim));
    }
  } else if (nodes_per_dim < 2) {
    throw ConfigError("QuadratureGrid: trapezoid requires >= 2 nodes");
  }
  const std::size_t k = domain.dim();
  if (k == 0) throw DomainError("QuadratureGrid: empty domain");

  std::vector<std::vector<double>> coords(k), weights(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& b = domain.box(i);
    const double h = (b[1] - b[0]) / static_cast<double>(nodes_per_dim - 1);
    coords[i].resize(nodes_per_dim);
    for (std::size_t j = 0; j < nodes_per_dim; ++j) {
      coords[i][j] = b[0] + static_cast<double>(j) * h;
    }
    coords[i].back() = b[1];  // exact endpoint
    weights[i] = rule_weights_1d(rule, nodes_per_dim, b[0], b[1]);
  }

  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= nodes_per_dim;
  nodes_.reserve(total);
  weights_.reserve(total);

  std::vector<std::size_t> idx(k, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    ThetaPoint t;
    t.coords.resize(k);
    double w = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      t.coords[i] = coords[i][idx[i]];
      w *= weights[i][idx[i]];
    }
    nodes_.push_back(std::move(t));
    weights_.push_back(w);
    // odometer increment, last coordinate fastest
    for (std::size_t i = k; i-- > 0;) {
      if (++idx[i] < nodes_per_dim) break;
      idx[i] = 0;
    }
  }

  double sum = 0.0;
  for (double w : weights_) sum += w;
  if (std::abs(sum - domain.volume()) >
      1e-12 * std::max(1.0, domain.volume())) {
    throw DomainError("QuadratureGrid: weights do not sum to the box volume");
  }
}

QuadratureGrid QuadratureGrid::single_node(const ThetaPoint& t,
                                           double weight) {
  if (!(weight > 0.0)) {
    throw DomainError("QuadratureGrid::single_node: weight must be positive");
  }
  QuadratureGrid g;
  g.nodes_per_dim_ = 1;
  g.nodes_.push_back(t);
  g.weights_.push_back(weight);
  return g;
}

}  // namespace alphageo
