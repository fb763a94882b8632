#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace imcf {

inline constexpr double kPi = 3.14159265358979323846;

using Mat3 = std::array<std::array<double, 3>, 3>;
// Gamma[i][j][k] = Gamma^i_{jk}, symmetric in (j,k)
using Chris3 = std::array<Mat3, 3>;
using Riem3 = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;

// polar coordinates (r, theta, phi) on the exterior region
struct Point {
  double r;
  double theta;
  double phi;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MetricError : Error {
  using Error::Error;
};
struct GridError : Error {
  using Error::Error;
};
struct GraphError : Error {
  using Error::Error;
};
struct FlowHalt : Error {
  using Error::Error;
};
struct VerifyError : Error {
  using Error::Error;
};

}  // namespace imcf
