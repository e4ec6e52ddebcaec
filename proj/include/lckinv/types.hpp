#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace lckinv {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Holomorphic coordinates z^1..z^n of a point in one chart of the covering.
struct ChartPoint {
  std::string chart_id;
  CVector coords;

  int dim() const { return static_cast<int>(coords.size()); }
};

}  // namespace lckinv
