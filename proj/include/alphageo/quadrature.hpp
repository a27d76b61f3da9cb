#pragma once

#include <cstddef>
#include <vector>

#include "alphageo/manifold.hpp"

namespace alphageo {

enum class QuadratureRule { trapezoid, simpson };

/// Deterministic tensor-product quadrature over a parameter box. Nodes are
/// enumerated in a fixed row-major order (first coordinate slowest), so
/// accumulations over the grid are bit-reproducible.
///
/// Weight sums equal the box volume to within 1e-12 by construction (checked).
class QuadratureGrid {
 public:
  /// `nodes_per_dim` applies to every coordinate; simpson requires it odd
  /// (>= 3), trapezoid requires >= 2.
  QuadratureGrid(QuadratureRule rule, std::size_t nodes_per_dim,
                 const ParamDomain& domain);

  /// Degenerate single-node grid with an explicit weight.
  static QuadratureGrid single_node(const ThetaPoint& t, double weight);

  QuadratureRule rule() const { return rule_; }
  std::size_t nodes_per_dim() const { return nodes_per_dim_; }
  std::size_t size() const { return nodes_.size(); }
  const ThetaPoint& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

 private:
  QuadratureGrid() = default;

  QuadratureRule rule_ = QuadratureRule::trapezoid;
  std::size_t nodes_per_dim_ = 0;
  std::vector<ThetaPoint> nodes_;
  std::vector<double> weights_;
};

}  // namespace alphageo
