#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ggavqe/generator.hpp"

namespace ggavqe {

/**
 * Analytic landscape L(theta) = <phi| e^{i theta B} H e^{-i theta B} |phi>.
 *
 * Involutory:  cos^2 t e0 + (sin 2t / 2) g + sin^2 t b
 * Tripotent:   e0 + (cos t - 1) c0 + (1 - cos t)^2 c1 + sin t (cos t - 1) c2 + sin t g
 *
 * theta is the body angle (the angle multiplying the stored generator body),
 * so [-pi, pi) covers every unitary the generator can produce. Use
 * evaluate_textbook() for angles in the prefactor convention.
 */
struct LandscapeModel {
  AlgebraicClass cls = AlgebraicClass::Involutory;
  double e0 = 0.0;
  double g = 0.0;  // dL/dtheta at 0, i.e. <i[B,H]>
  double b = 0.0;  // involutory: <BHB>
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;  // tripotent only
  double angle_scale = 1.0;

  double evaluate(double theta) const;
  double derivative(double theta) const;
  double second_derivative(double theta) const;
  double evaluate_textbook(double t) const { return evaluate(angle_scale * t); }

  LandscapeModel negated() const;
};

/// Sample angles for a class, excluding the shared theta = 0 node.
std::vector<double> landscape_nodes(AlgebraicClass cls);

/**
 * Solves for the coefficients from e0 = L(0) and L at landscape_nodes(cls),
 * in that order. `samples` has 2 (involutory) or 4 (tripotent) entries.
 */
LandscapeModel solve_landscape(AlgebraicClass cls, double e0, const std::vector<double>& samples,
                               double angle_scale = 1.0);

/// Calls `sample` once per node and solves.
LandscapeModel reconstruct_landscape(AlgebraicClass cls, double e0,
                                     const std::function<double(double)>& sample,
                                     double angle_scale = 1.0);

struct Extremum {
  double theta;
  double value;
};

/// Global minimum over [-pi, pi). Values within 1e-12 of the minimum are tied
/// and the smallest |theta| wins, so a flat landscape returns theta = 0.
Extremum minimize(const LandscapeModel& m);
Extremum maximize(const LandscapeModel& m);

/**
 * Two involutory generators, B1 applied first:
 *   L(t1, t2) = <phi| e^{i t1 B1} e^{i t2 B2} H e^{-i t2 B2} e^{-i t1 B1} |phi>
 *             = f(t1)^T A f(t2),   f(t) = (1, cos 2t, sin 2t).
 */
struct LandscapeModel2D {
  std::array<std::array<double, 3>, 3> a{};

  double evaluate(double t1, double t2) const;
  std::array<double, 2> gradient(double t1, double t2) const;
  /// Slice t2 = 0 as a 1-D involutory model.
  LandscapeModel slice_first() const;
  LandscapeModel slice_second() const;
};

/// The 3x3 tensor grid {0, +pi/4, -pi/4}^2 in row-major (t1, t2) order.
std::vector<std::array<double, 2>> landscape_nodes_2d();

/// `grid[i][k]` is L at (nodes[i], nodes[k]) with nodes = {0, pi/4, -pi/4}.
LandscapeModel2D solve_landscape_2d(const std::array<std::array<double, 3>, 3>& grid);

LandscapeModel2D reconstruct_landscape_2d(const std::function<double(double, double)>& sample);

struct Extremum2D {
  double theta1;
  double theta2;
  double value;
};

/// 256 x 256 grid plus Newton refinement; ties broken toward the origin.
Extremum2D minimize_2d(const LandscapeModel2D& m);

}  // namespace ggavqe
