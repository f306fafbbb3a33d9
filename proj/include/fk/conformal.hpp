#pragma once

#include <vector>

#include "fk/partition.hpp"

namespace fk {

double elliptic_k(double k);
double jacobi_sn(double u, double k);
double jacobi_dn(double u, double k);
// Modulus k with K(k') / (2 K(k)) = M / L.
double rect_modulus(double L, double M);

struct RectangleSpec {
  double L = 1, M = 1;
  // Arc-length positions along the counterclockwise perimeter, starting at
  // the bottom-left corner; cyclically increasing from the first point.
  std::vector<double> positions;
};

// Half-plane image of one perimeter position (may be +-inf on the top side).
double rectangle_to_halfplane(double L, double M, double k, double position);
Points marked_points_halfplane(const RectangleSpec& rect);

}  // namespace fk
