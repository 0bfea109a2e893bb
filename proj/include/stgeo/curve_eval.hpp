#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stgeo/json_io.hpp"

namespace stgeo {

enum class Family { SubRiemannian, Stiefel, Quasi, Ambient };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

struct CurveSpecInfo {
  Family family = Family::Stiefel;
  DistKind dist = DistKind::Reduced;
  Algebra algebra = Algebra::Real;
  int n = 0, k = 0;
  bool normalized = false;
};

/// A parsed, algebra-dispatched closed-form curve. Construction validates the
/// spec (shapes, skewness, su gauge, basepoint membership); evaluation at
/// distinct t values is independent and const.
class Curve {
 public:
  static Curve from_json(const json& spec);
  static Curve from_json_text(const std::string& text);

  const CurveSpecInfo& info() const;

  /// Point sample, row-major with real-expanded entries
  /// (complex -> re, im; quaternion -> q0..q3). Residual is ||M*M - I_k||.
  std::vector<double> eval_flat(double t, double* residual = nullptr) const;

  json point_json(double t) const;
  json velocity_json(double t) const;  // central difference, h = 1e-6
  double constraint_residual(double t) const;

  /// Geodesic curvature of the unit-speed reparametrization, measured in the
  /// curve family's own homogeneous metric.
  double curvature(double t) const;

  /// Projection to the Grassmannian: reflection matrix JSON plus {"k": k}.
  json grassmann_json(double t) const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

}  // namespace stgeo
