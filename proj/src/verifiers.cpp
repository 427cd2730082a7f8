#include "h2r/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace h2r {

namespace {

constexpr double kMarginSample = 0.012;  // first-derivative sweeps
constexpr double kMarginNested = 0.04;   // nested / second-derivative sweeps

double tol_or(const ToleranceMap& overrides, const std::string& name,
              double fallback) {
  auto it = overrides.find(name);
  return it == overrides.end() ? fallback : it->second;
}

struct Accumulator {
  double max_abs = 0.0;
  double sum = 0.0;
  long count = 0;
  double ax = 0.0, ay = 0.0;

  void add(double value, double x, double y) {
    const double a = std::abs(value);
    sum += a;
    ++count;
    if (a > max_abs) {
      max_abs = a;
      ax = x;
      ay = y;
    }
  }
};

ResidualReport make_report(const std::string& name, const Accumulator& acc,
                           int nx, int ny, Rect rect, double tol) {
  ResidualReport r;
  r.name = name;
  r.nx = nx;
  r.ny = ny;
  r.rect = rect;
  r.max_abs = acc.max_abs;
  r.mean_abs = acc.count > 0 ? acc.sum / acc.count : 0.0;
  r.tolerance = tol;
  r.pass = acc.max_abs <= tol;
  r.argmax_x = acc.ax;
  r.argmax_y = acc.ay;
  return r;
}

// Row-major sequential sweep; the reduction order is part of the contract
// (identical inputs give bitwise-identical reports).
template <typename F>
void sweep(Rect rect, int nx, int ny, F&& body) {
  for (int i = 0; i < nx; ++i) {
    const double x = rect.x0 + (rect.x1 - rect.x0) * i / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double y = rect.y0 + (rect.y1 - rect.y0) * j / (ny - 1);
      body(x, y);
    }
  }
}

void check_grid(int nx, int ny) {
  if (nx < 2 || ny < 2) {
    raise(ErrorCode::InvalidArgument, "verifier grid: need nx, ny >= 2");
  }
}

// theta and cos(theta) as sign-stable fields anchored to a reference normal.
double cos_theta_field(const Immersion& imm, double x, double y,
                       const Vec4& ref, double h1) {
  SampleOptions o;
  o.h_first = h1;
  o.reference_normal = ref;
  return normals(imm, x, y, o).second.t;
}

}  // namespace

std::vector<ResidualReport> principal_direction_residual(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const Rect rect = imm.domain.shrunk(kMarginSample);
  const double tol = tol_or(overrides, "principal_direction", 1e-5);
  Accumulator acc;
  sweep(rect, nx, ny, [&](double x, double y) {
    const GeometrySample s = sample_geometry(imm, x, y);
    if (std::sin(s.theta) < 1e-3) {
      raise(ErrorCode::DegenerateAngle,
            "principal_direction: sin(theta) < 1e-3 at x=" + std::to_string(x) +
                ", y=" + std::to_string(y));
    }
    const auto tc = tangent_coefficients(s, s.T);
    auto gnorm = [&](const std::array<double, 2>& v) {
      return std::sqrt(std::max(
          0.0, s.E * v[0] * v[0] + 2.0 * s.Fm * v[0] * v[1] + s.G * v[1] * v[1]));
    };
    const double n1 = gnorm(tc);
    const std::array<double, 2> e1{tc[0] / n1, tc[1] / n1};
    std::array<double, 2> e2{-(s.Fm * e1[0] + s.G * e1[1]),
                             s.E * e1[0] + s.Fm * e1[1]};
    const double n2 = gnorm(e2);
    e2 = {e2[0] / n2, e2[1] / n2};
    // g(A e1, e2)
    const std::array<double, 2> ae1{
        s.shape[0][0] * e1[0] + s.shape[0][1] * e1[1],
        s.shape[1][0] * e1[0] + s.shape[1][1] * e1[1]};
    const double g12 = s.E * ae1[0] * e2[0] + s.G * ae1[1] * e2[1] +
                       s.Fm * (ae1[0] * e2[1] + ae1[1] * e2[0]);
    acc.add(g12, x, y);
  });
  return {make_report("principal_direction", acc, nx, ny, rect, tol)};
}

namespace {

std::vector<ResidualReport> scalar_sample_residual(
    const Immersion& imm, int nx, int ny, const std::string& name, double tol,
    const std::function<double(const GeometrySample&)>& f) {
  check_grid(nx, ny);
  const Rect rect = imm.domain.shrunk(kMarginSample);
  Accumulator acc;
  sweep(rect, nx, ny, [&](double x, double y) {
    acc.add(f(sample_geometry(imm, x, y)), x, y);
  });
  return {make_report(name, acc, nx, ny, rect, tol)};
}

}  // namespace

std::vector<ResidualReport> canonical_pde_residual(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const Rect rect = imm.domain.shrunk(kMarginNested);
  const double tol = tol_or(overrides, "canonical_pde", 1e-4);
  const double h1 = kFdStep, h2 = 1e-2;
  Accumulator acc;
  sweep(rect, nx, ny, [&](double x, double y) {
    const GeometrySample s = sample_geometry(imm, x, y);
    if (std::abs(s.E - 1.0) > 1e-6 || std::abs(s.Fm) > 1e-6) {
      raise(ErrorCode::NotCanonical,
            "canonical_pde: chart is not canonical at x=" + std::to_string(x) +
                ", y=" + std::to_string(y) + " (E=" + std::to_string(s.E) +
                ", F=" + std::to_string(s.Fm) + ")");
    }
    auto beta = [&](double u) {
      const auto [fx, fy] = partials(imm, u, y);
      (void)fx;
      return std::sqrt(inner4(fy, fy));
    };
    const double b = beta(x);
    const double b_x = richardson4(diff1(beta, x, h2), diff1(beta, x, 0.5 * h2));
    const double b_xx = richardson4(diff2(beta, x, h2), diff2(beta, x, 0.5 * h2));
    auto ctheta = [&](double u) { return cos_theta_field(imm, u, y, s.xi, h1); };
    const double c = s.xi.t;
    const double theta_x =
        -diff1(ctheta, x, h1) / std::max(std::sin(s.theta), 1e-12);
    const double tan_theta = std::tan(s.theta);
    acc.add(b_xx + tan_theta * theta_x * b_x - b * c * c, x, y);
  });
  return {make_report("canonical_pde", acc, nx, ny, rect, tol)};
}

std::vector<ResidualReport> minimal_angle_pde_residual(
    const Field2& theta, Rect rect, int nx, int ny,
    const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const double h = 1e-2;
  const double tol_direct = tol_or(overrides, "minimal_angle_pde.direct", 1e-6);
  const double tol_log = tol_or(overrides, "minimal_angle_pde.log_form", 1e-6);
  const double tol_agree =
      tol_or(overrides, "minimal_angle_pde.agreement", 1e-6);
  Accumulator direct, logform, agree;
  auto logtan = [&theta](double x, double y) {
    return std::log(std::tan(0.5 * theta(x, y)));
  };
  sweep(rect, nx, ny, [&](double x, double y) {
    const double t = theta(x, y);
    auto fx = [&](double u) { return theta(u, y); };
    auto fy = [&](double v) { return theta(x, v); };
    const double tx = richardson4(diff1(fx, x, h), diff1(fx, x, 0.5 * h));
    const double ty = richardson4(diff1(fy, y, h), diff1(fy, y, 0.5 * h));
    const double txx = richardson4(diff2(fx, x, h), diff2(fx, x, 0.5 * h));
    const double tyy = richardson4(diff2(fy, y, h), diff2(fy, y, 0.5 * h));
    const double r11 = std::cos(t) * (tx * tx + ty * ty - 1.0) -
                       std::sin(t) * (txx + tyy);
    auto lx = [&](double u) { return logtan(u, y); };
    auto ly = [&](double v) { return logtan(x, v); };
    const double lxx = richardson4(diff2(lx, x, h), diff2(lx, x, 0.5 * h));
    const double lyy = richardson4(diff2(ly, y, h), diff2(ly, y, 0.5 * h));
    const double st = std::sin(t);
    const double r10 = st * st * (lxx + lyy) + std::cos(t);
    direct.add(r11, x, y);
    logform.add(r10, x, y);
    agree.add(r10 + r11, x, y);
  });
  return {make_report("minimal_angle_pde.direct", direct, nx, ny, rect,
                      tol_direct),
          make_report("minimal_angle_pde.log_form", logform, nx, ny, rect,
                      tol_log),
          make_report("minimal_angle_pde.agreement", agree, nx, ny, rect,
                      tol_agree)};
}

std::vector<ResidualReport> normal_flatness_residual(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const Rect rect = imm.domain.shrunk(kMarginNested);
  const double tol_norm = tol_or(overrides, "normal_flatness.norm", 1e-5);
  const double tol_id = tol_or(overrides, "normal_flatness.identity", 1e-4);
  const double h1 = kFdStep;
  Accumulator norm_acc, id_acc;
  sweep(rect, nx, ny, [&](double x, double y) {
    const GeometrySample s = sample_geometry(imm, x, y);
    const Vec4 r_perp = normal_curvature(imm, x, y);
    auto ctheta = [&](double v) { return cos_theta_field(imm, x, v, s.xi, h1); };
    const double c_y = diff1(ctheta, y, h1);
    // sin(theta) theta_y = -d/dy cos(theta)
    const Vec4 target = (-c_y) * s.xi_tilde;
    norm_acc.add(euclid_norm(r_perp), x, y);
    id_acc.add(euclid_norm(r_perp - target), x, y);
  });
  return {make_report("normal_flatness.norm", norm_acc, nx, ny, rect, tol_norm),
          make_report("normal_flatness.identity", id_acc, nx, ny, rect,
                      tol_id)};
}

namespace {

struct Christoffel {
  // [k][i][j] with i,j,k in {x,y}
  double g[2][2][2];
};

Christoffel christoffels(const MetricField& mf, double x, double y, double h) {
  auto comp = [&mf](int k) {
    return [&mf, k](double u, double v) { return mf(u, v)[static_cast<std::size_t>(k)]; };
  };
  auto E = comp(0), F = comp(1), G = comp(2);
  const auto m = mf(x, y);
  const double e = m[0], f = m[1], g = m[2];
  const double det = e * g - f * f;

  const double E_x = diff1([&](double u) { return E(u, y); }, x, h);
  const double E_y = diff1([&](double v) { return E(x, v); }, y, h);
  const double F_x = diff1([&](double u) { return F(u, y); }, x, h);
  const double F_y = diff1([&](double v) { return F(x, v); }, y, h);
  const double G_x = diff1([&](double u) { return G(u, y); }, x, h);
  const double G_y = diff1([&](double v) { return G(x, v); }, y, h);

  // Gamma_{ij,l} = (d_i g_{jl} + d_j g_{il} - d_l g_{ij}) / 2
  const double c_xx_x = 0.5 * E_x;
  const double c_xx_y = F_x - 0.5 * E_y;
  const double c_xy_x = 0.5 * E_y;
  const double c_xy_y = 0.5 * G_x;
  const double c_yy_x = F_y - 0.5 * G_x;
  const double c_yy_y = 0.5 * G_y;

  const double ixx = g / det, ixy = -f / det, iyy = e / det;
  Christoffel out{};
  out.g[0][0][0] = ixx * c_xx_x + ixy * c_xx_y;
  out.g[1][0][0] = ixy * c_xx_x + iyy * c_xx_y;
  out.g[0][0][1] = ixx * c_xy_x + ixy * c_xy_y;
  out.g[1][0][1] = ixy * c_xy_x + iyy * c_xy_y;
  out.g[0][1][0] = out.g[0][0][1];
  out.g[1][1][0] = out.g[1][0][1];
  out.g[0][1][1] = ixx * c_yy_x + ixy * c_yy_y;
  out.g[1][1][1] = ixy * c_yy_x + iyy * c_yy_y;
  return out;
}

}  // namespace

std::vector<ResidualReport> gauss_codazzi_residuals(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const Rect rect = imm.domain.shrunk(kMarginNested);
  const double tol_gauss = tol_or(overrides, "gauss_identity", 5e-4);
  const double tol_codazzi = tol_or(overrides, "codazzi", 1e-3);
  const double h2 = 1e-2;
  const MetricField mf = metric_field(imm);
  Accumulator gauss_acc, codazzi_acc;
  sweep(rect, nx, ny, [&](double x, double y) {
    const GeometrySample s = sample_geometry(imm, x, y);
    const double k_int = gauss_intrinsic(imm, x, y);
    gauss_acc.add(k_int - s.K, x, y);

    // (nabla_x A)dy - (nabla_y A)dx - cos(theta)(g(dx,T)dy - g(dy,T)dx),
    // assembled in coordinates with FD Christoffels.
    SampleOptions anchored;
    anchored.reference_normal = s.xi;
    auto a_column = [&](double px, double py,
                        int col) -> std::array<double, 2> {
      const GeometrySample q = sample_geometry(imm, px, py, anchored);
      return {q.shape[0][col], q.shape[1][col]};
    };
    auto d_field = [&](int col, int along,
                       int comp) -> double {  // d/d(along) of (A d_col)^comp
      auto f = [&](double u) {
        return along == 0 ? a_column(u, y, col)[static_cast<std::size_t>(comp)]
                          : a_column(x, u, col)[static_cast<std::size_t>(comp)];
      };
      const double at = along == 0 ? x : y;
      return richardson4(diff1(f, at, h2), diff1(f, at, 0.5 * h2));
    };
    const Christoffel ch = christoffels(mf, x, y, h2);
    const std::array<double, 2> a_dy{s.shape[0][1], s.shape[1][1]};
    const std::array<double, 2> a_dx{s.shape[0][0], s.shape[1][0]};
    // nabla_x (A dy)
    std::array<double, 2> n1{
        d_field(1, 0, 0) + ch.g[0][0][0] * a_dy[0] + ch.g[0][0][1] * a_dy[1],
        d_field(1, 0, 1) + ch.g[1][0][0] * a_dy[0] + ch.g[1][0][1] * a_dy[1]};
    // nabla_y (A dx)
    std::array<double, 2> n2{
        d_field(0, 1, 0) + ch.g[0][1][0] * a_dx[0] + ch.g[0][1][1] * a_dx[1],
        d_field(0, 1, 1) + ch.g[1][1][0] * a_dx[0] + ch.g[1][1][1] * a_dx[1]};
    // A(nabla_x dy) = A(nabla_y dx)
    const std::array<double, 2> cross{ch.g[0][0][1], ch.g[1][0][1]};
    const std::array<double, 2> a_cross{
        s.shape[0][0] * cross[0] + s.shape[0][1] * cross[1],
        s.shape[1][0] * cross[0] + s.shape[1][1] * cross[1]};
    const double c = std::cos(s.theta);
    const double gx_t = inner4(s.f_x, s.T);
    const double gy_t = inner4(s.f_y, s.T);
    const std::array<double, 2> resid{
        n1[0] - a_cross[0] - (n2[0] - a_cross[0]) - c * (-gy_t),
        n1[1] - a_cross[1] - (n2[1] - a_cross[1]) - c * (gx_t)};
    const Vec4 emb = resid[0] * s.f_x + resid[1] * s.f_y;
    codazzi_acc.add(euclid_norm(emb), x, y);
  });
  return {
      make_report("gauss_identity", gauss_acc, nx, ny, rect, tol_gauss),
      make_report("codazzi", codazzi_acc, nx, ny, rect, tol_codazzi)};
}

std::vector<ResidualReport> structure_eq_residuals(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const Rect rect = imm.domain.shrunk(kMarginNested);
  const double tol_grad = tol_or(overrides, "structure.grad_t", 1e-4);
  const double tol_dcos = tol_or(overrides, "structure.dcos_theta", 1e-5);
  const double h1 = kFdStep;
  Accumulator grad_acc, dcos_acc;
  sweep(rect, nx, ny, [&](double x, double y) {
    const GeometrySample s = sample_geometry(imm, x, y);
    auto t_field = [&](double px, double py) -> Vec4 {
      SampleOptions o;
      o.reference_normal = s.xi;
      const Vec4 xi = normals(imm, px, py, o).second;
      return angle_and_t(xi).second;
    };
    auto c_field_x = [&](double u) { return cos_theta_field(imm, u, y, s.xi, h1); };
    auto c_field_y = [&](double v) { return cos_theta_field(imm, x, v, s.xi, h1); };

    const double c = std::cos(s.theta);
    for (int dir = 0; dir < 2; ++dir) {
      Vec4 dT;
      if (dir == 0) {
        Vec4 m2 = t_field(x - 2 * h1, y), m1 = t_field(x - h1, y);
        Vec4 p1 = t_field(x + h1, y), p2 = t_field(x + 2 * h1, y);
        dT = (1.0 / (12.0 * h1)) * ((-1.0) * p2 + 8.0 * p1 + (-8.0) * m1 + m2);
      } else {
        Vec4 m2 = t_field(x, y - 2 * h1), m1 = t_field(x, y - h1);
        Vec4 p1 = t_field(x, y + h1), p2 = t_field(x, y + 2 * h1);
        dT = (1.0 / (12.0 * h1)) * ((-1.0) * p2 + 8.0 * p1 + (-8.0) * m1 + m2);
      }
      const auto coef = tangent_coefficients(s, dT);
      const Vec4 nabla_t = coef[0] * s.f_x + coef[1] * s.f_y;
      const Vec4 ax = s.shape[0][dir] * s.f_x + s.shape[1][dir] * s.f_y;
      grad_acc.add(euclid_norm(nabla_t - c * ax), x, y);

      const double xc = dir == 0 ? diff1(c_field_x, x, h1)
                                 : diff1(c_field_y, y, h1);
      dcos_acc.add(xc + inner4(ax, s.T), x, y);
    }
  });
  return {make_report("structure.grad_t", grad_acc, nx, ny, rect, tol_grad),
          make_report("structure.dcos_theta", dcos_acc, nx, ny, rect,
                      tol_dcos)};
}

namespace {

std::vector<ResidualReport> membership_residual(const Immersion& imm, int nx,
                                                int ny,
                                                const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const double tol = tol_or(overrides, "h2_membership", 1e-9);
  Accumulator acc;
  sweep(imm.domain, nx, ny, [&](double x, double y) {
    const Point4 p = imm.eval(x, y);
    acc.add(inner3(p.h, p.h) + 1.0, x, y);
  });
  return {make_report("h2_membership", acc, nx, ny, imm.domain, tol)};
}

std::vector<ResidualReport> f4_x_only_residual(const Immersion& imm, int nx,
                                               int ny,
                                               const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const double tol = tol_or(overrides, "f4_x_only", 1e-10);
  Accumulator acc;
  for (int i = 0; i < nx; ++i) {
    const double x =
        imm.domain.x0 + (imm.domain.x1 - imm.domain.x0) * i / (nx - 1);
    const double ref = imm.eval(x, imm.domain.y0).t;
    for (int j = 0; j < ny; ++j) {
      const double y =
          imm.domain.y0 + (imm.domain.y1 - imm.domain.y0) * j / (ny - 1);
      acc.add(imm.eval(x, y).t - ref, x, y);
    }
  }
  return {make_report("f4_x_only", acc, nx, ny, imm.domain, tol)};
}

std::vector<ResidualReport> flatness_residuals(const Immersion& imm, int nx,
                                               int ny,
                                               const ToleranceMap& overrides) {
  check_grid(nx, ny);
  const Rect rect = imm.domain.shrunk(kMarginNested);
  const double tol_w = tol_or(overrides, "flatness.weingarten", 1e-4);
  const double tol_i = tol_or(overrides, "flatness.intrinsic", 1e-4);
  const double tol_a = tol_or(overrides, "flatness.agreement", 5e-4);
  Accumulator wein, intr, agree;
  sweep(rect, nx, ny, [&](double x, double y) {
    const GeometrySample s = sample_geometry(imm, x, y);
    const double k_int = gauss_intrinsic(imm, x, y);
    wein.add(s.K, x, y);
    intr.add(k_int, x, y);
    agree.add(k_int - s.K, x, y);
  });
  return {make_report("flatness.weingarten", wein, nx, ny, rect, tol_w),
          make_report("flatness.intrinsic", intr, nx, ny, rect, tol_i),
          make_report("flatness.agreement", agree, nx, ny, rect, tol_a)};
}

}  // namespace

std::vector<std::string> verifier_names() {
  return {"principal_direction", "minimality",     "flatness",
          "cmc_half",            "h2_membership",  "f4_x_only",
          "canonical_pde",       "normal_flatness", "gauss_codazzi",
          "structure_equations"};
}

bool is_verifier(const std::string& name) {
  const auto names = verifier_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<ResidualReport> run_verifier(const std::string& name,
                                         const Immersion& imm, int nx, int ny,
                                         const ToleranceMap& overrides) {
  if (name == "principal_direction") {
    return principal_direction_residual(imm, nx, ny, overrides);
  }
  if (name == "minimality") {
    return scalar_sample_residual(
        imm, nx, ny, "minimality", tol_or(overrides, "minimality", 1e-6),
        [](const GeometrySample& s) { return s.Hmean; });
  }
  if (name == "flatness") return flatness_residuals(imm, nx, ny, overrides);
  if (name == "cmc_half") {
    return scalar_sample_residual(
        imm, nx, ny, "cmc_half", tol_or(overrides, "cmc_half", 1e-6),
        [](const GeometrySample& s) { return std::abs(s.Hmean) - 0.5; });
  }
  if (name == "h2_membership") return membership_residual(imm, nx, ny, overrides);
  if (name == "f4_x_only") return f4_x_only_residual(imm, nx, ny, overrides);
  if (name == "canonical_pde") return canonical_pde_residual(imm, nx, ny, overrides);
  if (name == "normal_flatness") return normal_flatness_residual(imm, nx, ny, overrides);
  if (name == "gauss_codazzi") return gauss_codazzi_residuals(imm, nx, ny, overrides);
  if (name == "structure_equations") return structure_eq_residuals(imm, nx, ny, overrides);
  raise(ErrorCode::InvalidArgument, "unknown verifier '" + name + "'");
}

ScanResult flat_and_minimal_scan(
    const std::vector<std::pair<double, double>>& params, int nx, int ny,
    double threshold) {
  check_grid(nx, ny);
  ScanResult result;
  result.threshold = threshold;
  result.all_negative = true;
  for (const auto& [c1, c2] : params) {
    const Immersion imm = make_minimal_family(c1, c2);
    const Rect rect = imm.domain.shrunk(kMarginSample);
    double max_k = -std::numeric_limits<double>::infinity();
    sweep(rect, nx, ny, [&](double x, double y) {
      max_k = std::max(max_k, sample_geometry(imm, x, y).K);
    });
    result.entries.push_back({c1, c2, max_k});
    if (!(max_k <= threshold)) result.all_negative = false;
  }
  return result;
}

std::vector<std::pair<double, double>> default_scan_parameters() {
  std::vector<std::pair<double, double>> out;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      if (i == 0 && j == 0) continue;
      out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace h2r
