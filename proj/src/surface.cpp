#include "h2r/surface.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace h2r {

Vec4 operator+(const Vec4& u, const Vec4& v) {
  return {u.x1 + v.x1, u.x2 + v.x2, u.x3 + v.x3, u.t + v.t};
}

Vec4 operator-(const Vec4& u, const Vec4& v) {
  return {u.x1 - v.x1, u.x2 - v.x2, u.x3 - v.x3, u.t - v.t};
}

Vec4 operator*(double s, const Vec4& u) {
  return {s * u.x1, s * u.x2, s * u.x3, s * u.t};
}

double inner4(const Vec4& u, const Vec4& v) {
  return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3 + u.t * v.t;
}

double euclid_norm(const Vec4& u) {
  return std::sqrt(u.x1 * u.x1 + u.x2 * u.x2 + u.x3 * u.x3 + u.t * u.t);
}

Rect Rect::shrunk(double margin) const {
  Rect r{x0 + margin, x1 - margin, y0 + margin, y1 - margin};
  if (!(r.x0 < r.x1) || !(r.y0 < r.y1)) {
    raise(ErrorCode::EmptyDomain, "Rect: margin leaves an empty rectangle");
  }
  return r;
}

namespace {

Vec4 eval_vec4(const Immersion& imm, double x, double y) {
  return imm.eval(x, y).as_vec4();
}

// 5-point first derivative of a Vec4-valued function of one variable.
Vec4 fd_vec4(const std::function<Vec4(double)>& f, double c, double h) {
  const Vec4 a = f(c - 2.0 * h), b = f(c - h), d = f(c + h), e = f(c + 2.0 * h);
  return (1.0 / (12.0 * h)) *
         ((-1.0) * e + 8.0 * d + (-8.0) * b + 1.0 * a);
}

void require_room(const Immersion& imm, double x, double y, double margin,
                  const char* who) {
  if (!imm.domain.contains(x, y, margin)) {
    raise(ErrorCode::DomainClip,
          std::string(who) + ": stencil leaves the immersion domain at (" +
              std::to_string(x) + ", " + std::to_string(y) + ")");
  }
}

double fd_margin(const Immersion& imm, double h) {
  // FD partials need their own stencil at each evaluation point.
  return imm.has_analytic_partials() ? 0.0 : 2.0 * h;
}

// Null vector of three Lorentz rows: n with <n, v_i> = 0. Lowering the index
// (flip of the third component) turns the constraint into a Euclidean one,
// solved by 3x3 cofactors.
Vec4 lorentz_null(const Vec4& v1, const Vec4& v2, const Vec4& v3) {
  const double r[3][4] = {
      {v1.x1, v1.x2, -v1.x3, v1.t},
      {v2.x1, v2.x2, -v2.x3, v2.t},
      {v3.x1, v3.x2, -v3.x3, v3.t},
  };
  auto minor3 = [&r](int skip) {
    double m[3][3];
    for (int i = 0; i < 3; ++i) {
      int cc = 0;
      for (int j = 0; j < 4; ++j) {
        if (j == skip) continue;
        m[i][cc++] = r[i][j];
      }
    }
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  return {minor3(0), -minor3(1), minor3(2), -minor3(3)};
}

Vec4 solve_xi(const Vec4& f_x, const Vec4& f_y, const Vec4& xi_tilde,
              const Vec4* reference) {
  Vec4 n = lorentz_null(f_x, f_y, xi_tilde);
  const double e2 = n.x1 * n.x1 + n.x2 * n.x2 + n.x3 * n.x3 + n.t * n.t;
  const double s = inner4(n, n);
  if (!(e2 > 0.0) || s <= 1e-12 * e2) {
    raise(ErrorCode::DegeneratePoint,
          "normals: orthogonality system is rank-deficient or the normal is "
          "not spacelike");
  }
  Vec4 xi = (1.0 / std::sqrt(s)) * n;
  if (reference != nullptr) {
    if (inner4(xi, *reference) < 0.0) xi = -1.0 * xi;
    return xi;
  }
  if (std::abs(xi.t) > 1e-12) {
    if (xi.t < 0.0) xi = -1.0 * xi;
    return xi;
  }
  // theta == pi/2 up to round-off: orient by the first sizable component.
  const double comps[4] = {xi.x1, xi.x2, xi.x3, xi.t};
  for (double c : comps) {
    if (std::abs(c) > 1e-12) {
      if (c < 0.0) xi = -1.0 * xi;
      break;
    }
  }
  return xi;
}

Vec4 xi_tilde_at(const Immersion& imm, double x, double y) {
  const Point4 p = imm.eval(x, y);
  return {p.h.x1, p.h.x2, p.h.x3, 0.0};
}

Vec4 xi_at(const Immersion& imm, double x, double y, double h_first,
           const Vec4* reference) {
  const auto [fx, fy] = partials(imm, x, y, h_first);
  return solve_xi(fx, fy, xi_tilde_at(imm, x, y), reference);
}

}  // namespace

std::pair<Vec4, Vec4> partials(const Immersion& imm, double x, double y,
                               double h) {
  if (imm.has_analytic_partials()) {
    return {imm.dx(x, y), imm.dy(x, y)};
  }
  require_room(imm, x, y, 2.0 * h, "partials");
  Vec4 fx = fd_vec4([&](double u) { return eval_vec4(imm, u, y); }, x, h);
  Vec4 fy = fd_vec4([&](double v) { return eval_vec4(imm, x, v); }, y, h);
  return {fx, fy};
}

std::pair<Vec4, Vec4> normals(const Immersion& imm, double x, double y,
                              const SampleOptions& opts) {
  const auto [fx, fy] = partials(imm, x, y, opts.h_first);
  const Vec4 xt = xi_tilde_at(imm, x, y);
  const Vec4* ref =
      opts.reference_normal ? &*opts.reference_normal : nullptr;
  return {xt, solve_xi(fx, fy, xt, ref)};
}

std::pair<double, Vec4> angle_and_t(const Vec4& xi) {
  const double c = std::clamp(xi.t, -1.0, 1.0);
  const double theta = std::acos(c);
  const Vec4 dt{0.0, 0.0, 0.0, 1.0};
  return {theta, dt - c * xi};
}

std::array<double, 2> tangent_coefficients(const GeometrySample& s,
                                           const Vec4& w) {
  const double det = s.E * s.G - s.Fm * s.Fm;
  const double bx = inner4(w, s.f_x);
  const double by = inner4(w, s.f_y);
  return {(s.G * bx - s.Fm * by) / det, (s.E * by - s.Fm * bx) / det};
}

GeometrySample sample_geometry(const Immersion& imm, double x, double y,
                               const SampleOptions& opts) {
  const double h1 = opts.h_first;
  require_room(imm, x, y, 2.0 * h1 + fd_margin(imm, h1), "sample_geometry");

  GeometrySample s;
  s.x = x;
  s.y = y;
  s.point = imm.eval(x, y);
  std::tie(s.f_x, s.f_y) = partials(imm, x, y, h1);
  s.E = inner4(s.f_x, s.f_x);
  s.Fm = inner4(s.f_x, s.f_y);
  s.G = inner4(s.f_y, s.f_y);
  if (!(s.E * s.G - s.Fm * s.Fm > 0.0)) {
    raise(ErrorCode::DegeneratePoint,
          "sample_geometry: induced metric is not positive definite");
  }

  s.xi_tilde = xi_tilde_at(imm, x, y);
  const Vec4* ref = opts.reference_normal ? &*opts.reference_normal : nullptr;
  s.xi = solve_xi(s.f_x, s.f_y, s.xi_tilde, ref);
  std::tie(s.theta, s.T) = angle_and_t(s.xi);
  s.t_degenerate = std::sin(s.theta) <= 1e-6;

  // Shape operator: A X = -tangential part of the flat derivative of the
  // xi field along X. Neighbor normals are sign-matched to the center.
  auto xi_field_x = [&](double u) { return xi_at(imm, u, y, h1, &s.xi); };
  auto xi_field_y = [&](double v) { return xi_at(imm, x, v, h1, &s.xi); };
  const Vec4 dxi_x = fd_vec4(xi_field_x, x, h1);
  const Vec4 dxi_y = fd_vec4(xi_field_y, y, h1);
  const auto cx = tangent_coefficients(s, dxi_x);
  const auto cy = tangent_coefficients(s, dxi_y);
  s.shape[0][0] = -cx[0];
  s.shape[1][0] = -cx[1];
  s.shape[0][1] = -cy[0];
  s.shape[1][1] = -cy[1];

  const double tr = s.shape[0][0] + s.shape[1][1];
  const double det =
      s.shape[0][0] * s.shape[1][1] - s.shape[0][1] * s.shape[1][0];
  const double disc = std::max(0.25 * tr * tr - det, 0.0);
  const double lam_hi = 0.5 * tr + std::sqrt(disc);
  const double lam_lo = 0.5 * tr - std::sqrt(disc);

  auto eigvec = [&](double lam) -> std::array<double, 2> {
    const double a = s.shape[0][0], b = s.shape[0][1];
    const double c = s.shape[1][0], d = s.shape[1][1];
    const double n1 = std::abs(b) + std::abs(lam - a);
    const double n2 = std::abs(lam - d) + std::abs(c);
    if (n1 >= n2 && n1 > 0.0) return {b, lam - a};
    if (n2 > 0.0) return {lam - d, c};
    return {1.0, 0.0};  // A is a multiple of the identity
  };
  auto t_alignment = [&](const std::array<double, 2>& v) {
    const Vec4 emb = v[0] * s.f_x + v[1] * s.f_y;
    const double g2 = inner4(emb, emb);
    if (!(g2 > 0.0)) return 0.0;
    return std::abs(inner4(emb, s.T)) / std::sqrt(g2);
  };

  const double align_hi = t_alignment(eigvec(lam_hi));
  const double align_lo = t_alignment(eigvec(lam_lo));
  if (!s.t_degenerate && align_lo > align_hi) {
    s.k1 = lam_lo;
    s.k2 = lam_hi;
  } else {
    s.k1 = lam_hi;
    s.k2 = lam_lo;
  }
  const double cth = std::cos(s.theta);
  s.K = det - cth * cth;
  s.Hmean = 0.5 * tr;
  return s;
}

MetricField metric_field(const Immersion& imm, double h) {
  return [&imm, h](double x, double y) -> std::array<double, 3> {
    const auto [fx, fy] = partials(imm, x, y, h);
    return {inner4(fx, fx), inner4(fx, fy), inner4(fy, fy)};
  };
}

namespace {

double det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

double brioschi_curvature(const MetricField& g, double x, double y, double h) {
  auto comp = [&g](int k) {
    return [&g, k](double u, double v) { return g(u, v)[static_cast<std::size_t>(k)]; };
  };
  auto E = comp(0), F = comp(1), G = comp(2);

  auto d1x = [h](const std::function<double(double, double)>& f, double u,
                 double v) {
    return diff1([&](double s) { return f(s, v); }, u, h);
  };
  auto d1y = [h](const std::function<double(double, double)>& f, double u,
                 double v) {
    return diff1([&](double s) { return f(u, s); }, v, h);
  };
  auto d2x = [h](const std::function<double(double, double)>& f, double u,
                 double v) {
    return diff2([&](double s) { return f(s, v); }, u, h);
  };
  auto d2y = [h](const std::function<double(double, double)>& f, double u,
                 double v) {
    return diff2([&](double s) { return f(u, s); }, v, h);
  };

  const double Ev = E(x, y), Fv = F(x, y), Gv = G(x, y);
  const double E_y = d1y(E, x, y), E_yy = d2y(E, x, y), E_x = d1x(E, x, y);
  const double G_x = d1x(G, x, y), G_xx = d2x(G, x, y), G_y = d1y(G, x, y);
  const double F_x = d1x(F, x, y), F_y = d1y(F, x, y);
  const double F_xy =
      diff1([&](double v) { return d1x(F, x, v); }, y, h);

  const double m1[3][3] = {
      {-0.5 * E_yy + F_xy - 0.5 * G_xx, 0.5 * E_x, F_x - 0.5 * E_y},
      {F_y - 0.5 * G_x, Ev, Fv},
      {0.5 * G_y, Fv, Gv},
  };
  const double m2[3][3] = {
      {0.0, 0.5 * E_y, 0.5 * G_x},
      {0.5 * E_y, Ev, Fv},
      {0.5 * G_x, Fv, Gv},
  };
  const double den = Ev * Gv - Fv * Fv;
  return (det3(m1) - det3(m2)) / (den * den);
}

double gauss_intrinsic(const Immersion& imm, double x, double y,
                       const SampleOptions& opts) {
  const double h2 = opts.h_second;
  require_room(imm, x, y, 2.0 * h2 + fd_margin(imm, opts.h_first),
               "gauss_intrinsic");
  const MetricField g = metric_field(imm, opts.h_first);
  return richardson4(brioschi_curvature(g, x, y, h2),
                     brioschi_curvature(g, x, y, 0.5 * h2));
}

Vec4 normal_curvature(const Immersion& imm, double x, double y,
                      const SampleOptions& opts) {
  const double h1 = opts.h_first;
  const double h2 = opts.h_second;
  require_room(imm, x, y, 2.0 * h2 + 2.0 * h1 + fd_margin(imm, h1),
               "normal_curvature");

  const Vec4* outer_ref =
      opts.reference_normal ? &*opts.reference_normal : nullptr;
  const Vec4 xi_c = xi_at(imm, x, y, h1, outer_ref);
  const Vec4 xt_c = xi_tilde_at(imm, x, y);

  // D_perp of xi along a coordinate direction, as a field over (x,y); all
  // normals are sign-matched to the center so the nested FDs see one smooth
  // field.
  auto normal_proj = [](const Vec4& w, const Vec4& xi, const Vec4& xt) {
    return inner4(w, xi) * xi - inner4(w, xt) * xt;
  };
  auto dperp_field = [&](int dir, double px, double py) -> Vec4 {
    const Vec4 xi_p = xi_at(imm, px, py, h1, &xi_c);
    const Vec4 xt_p = xi_tilde_at(imm, px, py);
    std::function<Vec4(double)> line;
    if (dir == 0) {
      line = [&](double u) { return xi_at(imm, u, py, h1, &xi_p); };
    } else {
      line = [&](double v) { return xi_at(imm, px, v, h1, &xi_p); };
    }
    const Vec4 d = fd_vec4(line, dir == 0 ? px : py, h1);
    return normal_proj(d, xi_p, xt_p);
  };

  const Vec4 dx_of_vy = fd_vec4(
      [&](double u) { return dperp_field(1, u, y); }, x, h2);
  const Vec4 dy_of_vx = fd_vec4(
      [&](double v) { return dperp_field(0, x, v); }, y, h2);

  const Vec4 commutator = normal_proj(dx_of_vy, xi_c, xt_c) -
                          normal_proj(dy_of_vx, xi_c, xt_c);
  // Orientation: with this sign, graph charts ((F4)_x = 1, (F4)_y = 0)
  // produce + sin(theta) theta_y xi_tilde. Frozen by test.
  return -1.0 * commutator;
}

}  // namespace h2r
