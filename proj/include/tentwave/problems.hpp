#pragma once

#include "tentwave/marcher.hpp"

namespace tentwave {

/// Left-moving Gaussian pulse on homogeneous material with outgoing
/// impedance ends; exact solution u1 = u2 = exp(-sharpness*((x+t)-center)^2).
ProblemSpec pulse_problem(double T, double sharpness = 1000.0, double center = 0.5);

/// Impedance-matched interface: kappa = (2,2) on x < 0.5, (1,1) on x > 0.5,
/// rightward pulse started near x = 0.2, matched-impedance ends.
ProblemSpec matched_interface_problem(double T, double sharpness = 5000.0, double center = 0.2);

/// Reflection/transmission interface: kappa1 = (4, 1/2), kappa2 = (1, 1/2),
/// same pulse data, Dirichlet ends (z0 = z1 = 0).
ProblemSpec reflection_interface_problem(double T, double sharpness = 5000.0,
                                         double center = 0.2);

/// Two-region spatial mesh over [0,1] split at 0.5 with per-region spacing.
SpatialMesh two_region_mesh(double h_left, double h_right);

}  // namespace tentwave
