#include "essmodes/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace essmodes {

Grid1D::Grid1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("Grid1D: need at least 2 nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw std::invalid_argument("Grid1D: non-finite node");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw std::invalid_argument("Grid1D: nodes must be strictly increasing");
  }
}

Grid1D Grid1D::uniform(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("Grid1D::uniform: need at least 2 nodes");
  std::vector<double> nodes(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) nodes[i] = lo + step * static_cast<double>(i);
  nodes.back() = hi;
  return Grid1D(std::move(nodes));
}

std::vector<double> Grid1D::trapezoid_weights() const {
  std::vector<double> w(nodes_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double h = 0.5 * (nodes_[i + 1] - nodes_[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  return w;
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  if (max_panels < 1) throw std::invalid_argument("QuadratureSpec: max_panels must be >= 1");
}

}  // namespace essmodes
