#include "stgeo/curve_eval.hpp"

#include <functional>

#include "stgeo/grassmann.hpp"
#include "stgeo/metrics.hpp"

namespace stgeo {

const char* family_name(Family f) {
  switch (f) {
    case Family::SubRiemannian: return "sr";
    case Family::Stiefel: return "stiefel";
    case Family::Quasi: return "quasi";
    case Family::Ambient: return "ambient";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "sr") return Family::SubRiemannian;
  if (s == "stiefel") return Family::Stiefel;
  if (s == "quasi") return Family::Quasi;
  if (s == "ambient") return Family::Ambient;
  throw parse_error("unknown curve family: " + s);
}

struct Curve::Impl {
  CurveSpecInfo info;
  std::function<std::vector<double>(double, double*)> eval_flat;
  std::function<json(double)> point_json;
  std::function<json(double)> velocity_json;
  std::function<double(double)> curvature;
  std::function<json(double)> grassmann;
};

namespace {

template <typename T>
struct ParsedBlocks {
  Matrix<T> a, b, c, d, e, f;  // every block defaults to zero at its shape
  Matrix<T> r, s;
};

template <typename T>
Matrix<T> block_or_zero(const json& blocks, const char* name, int rows, int cols,
                        bool require_skew_block) {
  if (!blocks.contains(name)) return Matrix<T>(rows, cols);
  Matrix<T> m = decode_matrix<T>(blocks[name]);
  if (m.rows() != rows || m.cols() != cols)
    throw parse_error(std::string("block \"") + name + "\" has the wrong shape");
  if (require_skew_block && rows > 0 && skew_residual(m) > kTolSkew)
    throw parse_error(std::string("block \"") + name + "\" must be skew-adjoint");
  return m;
}

template <typename T>
ParsedBlocks<T> parse_blocks(const json& spec, Family family, int n, int k) {
  ParsedBlocks<T> out;
  const json blocks = spec.contains("blocks") ? spec["blocks"] : json::object();
  if (!blocks.is_object()) throw parse_error("\"blocks\" must be an object");
  out.a = block_or_zero<T>(blocks, "A", k, k, true);
  out.b = block_or_zero<T>(blocks, "B", k, n - k, false);
  // The C block lives in g_{n-k} for the ambient family and in g_k for the
  // orthogonal sub-Riemannian one.
  const int c_dim = family == Family::Ambient ? n - k : k;
  out.c = block_or_zero<T>(blocks, "C", c_dim, c_dim, true);
  out.d = block_or_zero<T>(blocks, "D", n - k, n - k, true);
  out.e = block_or_zero<T>(blocks, "E", k, k, true);
  out.f = block_or_zero<T>(blocks, "F", n - k, n - k, true);
  if constexpr (scalar_traits<T>::algebra == Algebra::Complex) {
    for (const Matrix<T>* m : {&out.a, &out.c, &out.d, &out.e, &out.f})
      if (m->rows() > 0 && std::abs(m->trace()) > 1e-12)
        throw parse_error("su gauge: square generator blocks must be traceless over C");
  }

  const json base = spec.contains("basepoint") ? spec["basepoint"] : json::object();
  if (!base.is_object()) throw parse_error("\"basepoint\" must be an object");
  out.r = base.contains("r") ? decode_matrix<T>(base["r"]) : Matrix<T>::identity(n);
  out.s = base.contains("s") ? decode_matrix<T>(base["s"]) : Matrix<T>::identity(k);
  if (out.r.rows() != n || out.r.cols() != n) throw parse_error("basepoint r must be n x n");
  if (out.s.rows() != k || out.s.cols() != k) throw parse_error("basepoint s must be k x k");
  try {
    require_unitary(out.r);
    require_unitary(out.s);
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string("basepoint: ") + e.what());
  }
  return out;
}

template <typename T>
double family_speed(const CurveSpecInfo& info, const ParsedBlocks<T>& bl) {
  const int n = info.n, k = info.k;
  const Matrix<T> znk(n - k, n - k);
  switch (info.family) {
    case Family::SubRiemannian:
    case Family::Stiefel:
      switch (info.dist) {
        case DistKind::Reduced:
          return trace_norm(assemble_gn(bl.a, bl.b, znk));
        case DistKind::Orthogonal:
          return trace_norm(AlgPair<T>(assemble_gn(bl.a, bl.b, znk), -bl.a));
        default:
          return trace_norm(AlgPair<T>(assemble_offdiag(bl.b), bl.a));
      }
    case Family::Quasi:
      return trace_norm(AlgPair<T>(assemble_offdiag(bl.b), bl.a));
    case Family::Ambient: {
      // ambient norm of Xdot(0): Tr((A/2)*(A/2)) + Tr(B B*)
      const double half_a = (bl.a * 0.5).frobenius_norm();
      const double bb = bl.b.frobenius_norm();
      return std::sqrt(half_a * half_a + bb * bb);
    }
  }
  throw std::logic_error("unreachable");
}

template <typename T>
std::function<Matrix<T>(double)> make_point_fn(const CurveSpecInfo& info, ParsedBlocks<T> bl) {
  const int n = info.n, k = info.k;
  const Matrix<T> znk(n - k, n - k);
  const Matrix<T> g0 = bl.r * embed_gk(bl.s, n).adjoint();
  switch (info.family) {
    case Family::SubRiemannian:
      switch (info.dist) {
        case DistKind::Reduced: {
          const Matrix<T> m = assemble_gn(bl.a, bl.b, bl.d);
          return [=](double t) { return Matrix<T>(g0 * expm(m, t).block(0, 0, n, k)); };
        }
        case DistKind::Orthogonal: {
          // r exp(t [[A+C, B], [-B*, D]]) I_nk e^{t(A-C)} s*
          const Matrix<T> m = assemble_gn(Matrix<T>(bl.a + bl.c), bl.b, bl.d);
          const Matrix<T> ac = bl.a - bl.c;
          const Matrix<T> r = bl.r, s = bl.s;
          return [=](double t) {
            return Matrix<T>(r * expm(m, t).block(0, 0, n, k) * expm(ac, t) * s.adjoint());
          };
        }
        default: {
          const Matrix<T> r = bl.r, s = bl.s, a = bl.a, b = bl.b, e = bl.e, f = bl.f;
          return [=](double t) { return sr_qg_projection(r, s, a, b, e, f, t); };
        }
      }
    case Family::Stiefel:
      switch (info.dist) {
        case DistKind::Reduced: {
          const Matrix<T> a = bl.a, b = bl.b;
          return [=](double t) { return stiefel_geodesic_reduced(g0, a, b, t); };
        }
        case DistKind::Orthogonal: {
          const Matrix<T> r = bl.r, s = bl.s, a = bl.a, b = bl.b;
          return [=](double t) { return stiefel_geodesic_orthogonal(r, s, a, b, t); };
        }
        default: {
          // r e^{t OmegaTilde} I_nk s* with OmegaTilde = [[-A,B],[-B*,0]]
          const Matrix<T> omega = assemble_gn(Matrix<T>(-bl.a), bl.b, znk);
          const Matrix<T> r = bl.r, s = bl.s;
          return [=](double t) {
            return Matrix<T>(r * expm(omega, t).block(0, 0, n, k) * s.adjoint());
          };
        }
      }
    case Family::Quasi: {
      const Matrix<T> r = bl.r, s = bl.s, a = bl.a, b = bl.b;
      return [=](double t) { return quasi_geodesic(r, s, b, a, t); };
    }
    case Family::Ambient: {
      const Matrix<T> a = bl.a, b = bl.b, c = bl.c;
      return [=](double t) { return ambient_geodesic(g0, a, b, c, t); };
    }
  }
  throw std::logic_error("unreachable");
}

template <typename T>
LiftedCurve<T> make_curvature_lift(const CurveSpecInfo& info, const ParsedBlocks<T>& bl) {
  const int n = info.n, k = info.k;
  const Matrix<T> zk(k, k), znk(n - k, n - k);
  const Matrix<T> g0 = bl.r * embed_gk(bl.s, n).adjoint();
  switch (info.family) {
    case Family::SubRiemannian:
      switch (info.dist) {
        case DistKind::Reduced: return lift_reduced_sr(g0, bl.a, bl.b, bl.d);
        case DistKind::Orthogonal:
          return lift_orthogonal_sr(bl.r, bl.s, bl.a, bl.b, bl.c, bl.d);
        default: return lift_qg_gn(bl.r, bl.s, bl.a, bl.b, bl.e, bl.f);
      }
    case Family::Stiefel:
      switch (info.dist) {
        case DistKind::Reduced: return lift_reduced_sr(g0, bl.a, bl.b, znk);
        case DistKind::Orthogonal:
          return lift_orthogonal_sr(bl.r, bl.s, bl.a, bl.b, zk, znk);
        default: return lift_qg_gn(bl.r, bl.s, bl.a, bl.b, Matrix<T>(-bl.a), znk);
      }
    case Family::Quasi: return lift_qg_gn(bl.r, bl.s, bl.a, bl.b, zk, znk);
    case Family::Ambient: return lift_ambient(g0, bl.a, bl.b, bl.c);
  }
  throw std::logic_error("unreachable");
}

template <typename T>
std::vector<double> flatten(const Matrix<T>& m) {
  std::vector<double> out;
  out.reserve(size_t(m.rows()) * m.cols() * scalar_traits<T>::real_dim);
  double buf[4];
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      scalar_traits<T>::to_reals(m(i, j), buf);
      out.insert(out.end(), buf, buf + scalar_traits<T>::real_dim);
    }
  return out;
}

template <typename T>
std::shared_ptr<const Curve::Impl> build_impl(const json& spec, const CurveSpecInfo& info0) {
  auto impl = std::make_shared<Curve::Impl>();
  CurveSpecInfo info = info0;
  ParsedBlocks<T> bl = parse_blocks<T>(spec, info.family, info.n, info.k);

  // Unit-speed normalization: all generator blocks scale together so the
  // reparametrized curve traces the same geometry.
  ParsedBlocks<T> nbl = bl;
  const double speed = family_speed(info, bl);
  if (speed > 0.0) {
    const double inv = 1.0 / speed;
    nbl.a = bl.a * inv;
    nbl.b = bl.b * inv;
    nbl.c = bl.c * inv;
    nbl.d = bl.d * inv;
    nbl.e = bl.e * inv;
    nbl.f = bl.f * inv;
  }
  if (info.normalized) bl = nbl;

  impl->info = info;
  auto point = make_point_fn<T>(info, bl);
  const int k = info.k;

  impl->eval_flat = [point, k](double t, double* residual) {
    const Matrix<T> m = point(t);
    if (residual) *residual = stiefel_residual(m);
    return flatten(m);
  };
  impl->point_json = [point](double t) { return encode_matrix(point(t)); };
  impl->velocity_json = [point](double t) {
    return encode_matrix(Matrix<T>(fd_velocity(point, t)));
  };
  impl->grassmann = [point, k](double t) {
    json j = encode_matrix(project_stiefel(point(t), 1e-6));
    j["k"] = k;
    return j;
  };

  // Curvature always works on the unit-speed blocks, whatever the sampling
  // parametrization is.
  if (speed == 0.0) {
    impl->curvature = [](double) -> double {
      throw std::invalid_argument("curvature undefined for a constant curve");
    };
  } else {
    LiftedCurve<T> lift = make_curvature_lift<T>(info, nbl);
    impl->curvature = [lift](double t) { return geodesic_curvature(lift, t); };
  }
  return impl;
}

}  // namespace

Curve Curve::from_json(const json& spec) {
  if (!spec.is_object()) throw parse_error("curve spec must be a JSON object");
  for (const char* key : {"family", "n", "k", "algebra"})
    if (!spec.contains(key)) throw parse_error(std::string("curve spec needs \"") + key + "\"");
  CurveSpecInfo info;
  info.family = family_from_name(spec["family"].get<std::string>());
  if (!spec["n"].is_number_integer() || !spec["k"].is_number_integer())
    throw parse_error("n and k must be integers");
  info.n = spec["n"].get<int>();
  info.k = spec["k"].get<int>();
  if (info.k < 1 || info.k > info.n) throw parse_error("curve spec requires 1 <= k <= n");
  try {
    info.algebra = algebra_from_name(spec["algebra"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
  info.normalized = spec.value("normalized", false);

  if (spec.contains("dist")) {
    try {
      info.dist = dist_from_name(spec["dist"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw parse_error(e.what());
    }
    if (info.dist == DistKind::GrassmannSigma)
      throw parse_error("curve specs use the reduced/orthogonal/quasigeodesic distributions");
  } else {
    // quasi-geodesics live on the quasi-geodesic distribution; the ambient
    // family rides the reduced one
    info.dist = info.family == Family::Quasi ? DistKind::QuasiGeodesic : DistKind::Reduced;
  }
  if (info.family == Family::Quasi) info.dist = DistKind::QuasiGeodesic;
  if (info.family == Family::Ambient) info.dist = DistKind::Reduced;

  Curve c;
  dispatch_algebra(info.algebra, [&](auto tag) {
    using T = decltype(tag);
    c.impl_ = build_impl<T>(spec, info);
  });
  return c;
}

Curve Curve::from_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("invalid JSON");
  return from_json(j);
}

const CurveSpecInfo& Curve::info() const { return impl_->info; }

std::vector<double> Curve::eval_flat(double t, double* residual) const {
  return impl_->eval_flat(t, residual);
}
json Curve::point_json(double t) const { return impl_->point_json(t); }
json Curve::velocity_json(double t) const { return impl_->velocity_json(t); }
double Curve::constraint_residual(double t) const {
  double r = 0.0;
  impl_->eval_flat(t, &r);
  return r;
}
double Curve::curvature(double t) const { return impl_->curvature(t); }
json Curve::grassmann_json(double t) const { return impl_->grassmann(t); }

}  // namespace stgeo
