#pragma once

// The obstructions that rule out Cases 2, 3 and 4 of the 3D classification.

#include "nij/reconstruct.hpp"

namespace nij {

// sigma_2 = x1 x2 with b_21 = 1/3 and c = b_31 = b_22 = b_23 = b_32 = b_33 = 0.
struct Case3Report {
  ParamSigmaSet sigmas;
  Poly numerator;    // N(3,2)
  Poly denominator;  // Q
  Poly printed;      // (3b_12^2 + b_11) x1^2 + 5 b_12 x1 x2 + x2^2 + 2 b_13 x1 x3
  bool matches_printed = false;  // N(3,2) * b_13 x1 == -Q * printed
  Poly off_x1;                   // printed at x1 = 0
  bool obstructed = false;       // off_x1 has a coefficient free of parameters
};
Case3Report case3_obstruction();

// sigma_2 = a x1^2 +- x2^2 with b_11 = (4a^2 - a)/3 and c = b_31 = b_12 = b_13 = b_32 = b_33 = 0.
struct Case2Report {
  int sign = 1;
  ParamSigmaSet sigmas;
  Poly denominator;               // Q
  std::vector<Poly> conditions;   // coefficients of N(3,2) at x2 = 0
  std::optional<Poly> forcing;    // a condition of the form k * b_23^m
  bool det_vanishes = false;      // Q = 0 once b_23 = 0
  bool obstructed = false;
};
Case2Report case2_obstruction(int sign);

// sigma_2 = x1 x2 +- x3^2 with b_22 = b_23 = 0.
struct Case4Report {
  int sign = 1;
  LinearitySystem system;
  std::optional<std::size_t> quadratic;  // equation proportional to 6 b_21^2 - b_21
  // After b_21 = 1/6: equations in b_32 alone, with the value each one forces.
  std::vector<std::pair<std::size_t, Rational>> b32_constraints;
  bool contradiction = false;
};
Case4Report case4_obstruction(int sign);

}  // namespace nij
