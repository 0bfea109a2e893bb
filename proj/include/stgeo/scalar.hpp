#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "stgeo/quaternion.hpp"

namespace stgeo {

enum class Algebra { Real, Complex, Quaternion };

inline const char* algebra_name(Algebra a) {
  switch (a) {
    case Algebra::Real: return "real";
    case Algebra::Complex: return "complex";
    case Algebra::Quaternion: return "quaternion";
  }
  return "?";
}

inline Algebra algebra_from_name(const std::string& s) {
  if (s == "real") return Algebra::Real;
  if (s == "complex") return Algebra::Complex;
  if (s == "quaternion") return Algebra::Quaternion;
  throw std::invalid_argument("unknown algebra: " + s);
}

inline int algebra_real_dim(Algebra a) {
  switch (a) {
    case Algebra::Real: return 1;
    case Algebra::Complex: return 2;
    case Algebra::Quaternion: return 4;
  }
  return 0;
}

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr Algebra algebra = Algebra::Real;
  static constexpr int real_dim = 1;
  static constexpr bool commutative = true;
  static double conj(double x) { return x; }
  static double re(double x) { return x; }
  static double abs2(double x) { return x * x; }
  static double abs(double x) { return std::abs(x); }
  static double from_real(double x) { return x; }
  static void to_reals(double x, double* out) { out[0] = x; }
  static double from_reals(const double* in) { return in[0]; }
};

template <>
struct scalar_traits<std::complex<double>> {
  static constexpr Algebra algebra = Algebra::Complex;
  static constexpr int real_dim = 2;
  static constexpr bool commutative = true;
  static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
  static double re(const std::complex<double>& x) { return x.real(); }
  static double abs2(const std::complex<double>& x) { return std::norm(x); }
  static double abs(const std::complex<double>& x) { return std::abs(x); }
  static std::complex<double> from_real(double x) { return {x, 0.0}; }
  static void to_reals(const std::complex<double>& x, double* out) {
    out[0] = x.real();
    out[1] = x.imag();
  }
  static std::complex<double> from_reals(const double* in) { return {in[0], in[1]}; }
};

template <>
struct scalar_traits<Quaternion> {
  static constexpr Algebra algebra = Algebra::Quaternion;
  static constexpr int real_dim = 4;
  static constexpr bool commutative = false;
  static Quaternion conj(const Quaternion& x) { return stgeo::conj(x); }
  static double re(const Quaternion& x) { return x.q0; }
  static double abs2(const Quaternion& x) { return stgeo::abs2(x); }
  static double abs(const Quaternion& x) { return stgeo::abs(x); }
  static Quaternion from_real(double x) { return Quaternion(x); }
  static void to_reals(const Quaternion& x, double* out) {
    out[0] = x.q0;
    out[1] = x.q1;
    out[2] = x.q2;
    out[3] = x.q3;
  }
  static Quaternion from_reals(const double* in) { return {in[0], in[1], in[2], in[3]}; }
};

using Complex = std::complex<double>;

/// Calls f with a value of each scalar type selected by the runtime tag.
template <typename F>
decltype(auto) dispatch_algebra(Algebra a, F&& f) {
  switch (a) {
    case Algebra::Real: return f(double{});
    case Algebra::Complex: return f(Complex{});
    case Algebra::Quaternion: return f(Quaternion{});
  }
  throw std::logic_error("bad algebra tag");
}

// Tolerance ladder shared across modules.
inline constexpr double kTolAlgebra = 1e-13;   // pure scalar-algebra identities
inline constexpr double kTolSkew = 1e-10;      // constraint admission (skew-adjointness)
inline constexpr double kTolGroup = 1e-10;     // group/manifold membership
inline constexpr double kTolGeo = 1e-8;        // curve-level residuals after exp compositions

}  // namespace stgeo
