#include "h2r/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "h2r/special_functions.hpp"

namespace h2r {

namespace {

constexpr int kTableNodes = 4097;
constexpr double kBranchTol = 1e-12;

std::string rel(const char* name, double value) {
  std::ostringstream os;
  os << name << " (got " << value << ")";
  return os.str();
}

}  // namespace

AngleProfile make_angle_profile(RealFn theta, RealFn theta_prime, double x0,
                                double x1) {
  if (!(x0 < x1)) {
    raise(ErrorCode::EmptyDomain, "angle profile: empty x-interval");
  }
  if (!theta) {
    raise(ErrorCode::InvalidArgument, "angle profile: theta is required");
  }
  for (int i = 0; i <= 64; ++i) {
    const double x = x0 + (x1 - x0) * i / 64.0;
    const double th = theta(x);
    if (!(th > 0.0) || !(th < std::numbers::pi)) {
      raise(ErrorCode::InvalidArgument,
            "angle profile: theta leaves (0, pi) at x=" + std::to_string(x));
    }
  }
  AngleProfile p;
  p.theta = theta;
  if (theta_prime) {
    p.theta_prime = theta_prime;
  } else {
    p.theta_prime = [theta](double x) { return diff1(theta, x, 1e-4); };
  }
  p.x0 = x0;
  p.x1 = x1;
  p.anchor = (x0 <= 0.0 && 0.0 <= x1) ? 0.0 : x0;
  return p;
}

AngleProfile theta_linear(double slope, double intercept, double x0,
                          double x1) {
  return make_angle_profile(
      [slope, intercept](double x) { return slope * x + intercept; },
      [slope](double) { return slope; }, x0, x1);
}

AngleProfile theta_constant(double value, double x0, double x1) {
  return make_angle_profile([value](double) { return value; },
                            [](double) { return 0.0; }, x0, x1);
}

void validate_curve_pair(const CurvePair& pair, double y0, double y1,
                         double tol, int samples) {
  if (!pair.A || !pair.B || !pair.Aprime || !pair.Bprime) {
    raise(ErrorCode::InvalidCurvePair, "curve pair: missing curve or speed");
  }
  for (int i = 0; i < samples; ++i) {
    const double y = y0 + (y1 - y0) * i / (samples - 1);
    const LorentzVec3 A = pair.A(y), B = pair.B(y);
    const LorentzVec3 Ap = pair.Aprime(y), Bp = pair.Bprime(y);
    const double aa = inner3(A, A), bb = inner3(B, B), ab = inner3(A, B);
    if (std::abs(aa - 1.0) > tol) {
      raise(ErrorCode::InvalidCurvePair, "curve pair: <A,A>=1 fails, " + rel("<A,A>", aa));
    }
    if (std::abs(bb + 1.0) > tol) {
      raise(ErrorCode::InvalidCurvePair, "curve pair: <B,B>=-1 fails, " + rel("<B,B>", bb));
    }
    if (std::abs(ab) > tol) {
      raise(ErrorCode::InvalidCurvePair, "curve pair: <A,B>=0 fails, " + rel("<A,B>", ab));
    }
    // parallel speeds: all 2x2 minors of (A'|B') vanish
    const double m12 = Ap.x1 * Bp.x2 - Ap.x2 * Bp.x1;
    const double m13 = Ap.x1 * Bp.x3 - Ap.x3 * Bp.x1;
    const double m23 = Ap.x2 * Bp.x3 - Ap.x3 * Bp.x2;
    const double worst =
        std::max({std::abs(m12), std::abs(m13), std::abs(m23)});
    if (worst > tol) {
      raise(ErrorCode::InvalidCurvePair,
            "curve pair: A' parallel B' fails, " + rel("max minor", worst));
    }
  }
}

CurvePair shift_phi(const CurvePair& pair, double phi0) {
  const double ch = std::cosh(phi0), sh = std::sinh(phi0);
  CurvePair out;
  out.A = [=, A = pair.A, B = pair.B](double y) {
    return ch * A(y) + sh * B(y);
  };
  out.B = [=, A = pair.A, B = pair.B](double y) {
    return sh * A(y) + ch * B(y);
  };
  out.Aprime = [=, Ap = pair.Aprime, Bp = pair.Bprime](double y) {
    return ch * Ap(y) + sh * Bp(y);
  };
  out.Bprime = [=, Ap = pair.Aprime, Bp = pair.Bprime](double y) {
    return sh * Ap(y) + ch * Bp(y);
  };
  return out;
}

CurvePair curve_pair_catalog(const std::string& id) {
  CurvePair p;
  if (id == "geodesic") {
    p.A = [](double) { return LorentzVec3{1.0, 0.0, 0.0}; };
    p.B = [](double y) { return LorentzVec3{0.0, std::sinh(y), std::cosh(y)}; };
    p.Aprime = [](double) { return LorentzVec3{0.0, 0.0, 0.0}; };
    p.Bprime = [](double y) {
      return LorentzVec3{0.0, std::cosh(y), std::sinh(y)};
    };
    return p;
  }
  if (id == "rotation") {
    p.A = [](double y) { return LorentzVec3{std::sin(y), std::cos(y), 0.0}; };
    p.B = [](double) { return LorentzVec3{0.0, 0.0, 1.0}; };
    p.Aprime = [](double y) {
      return LorentzVec3{std::cos(y), -std::sin(y), 0.0};
    };
    p.Bprime = [](double) { return LorentzVec3{0.0, 0.0, 0.0}; };
    return p;
  }
  if (id == "parabola") {
    p.A = [](double y) {
      return LorentzVec3{y, 1.0 - 0.5 * y * y, 0.5 * y * y};
    };
    p.B = [](double y) {
      return LorentzVec3{y, -0.5 * y * y, 1.0 + 0.5 * y * y};
    };
    p.Aprime = [](double y) { return LorentzVec3{1.0, -y, y}; };
    p.Bprime = [](double y) { return LorentzVec3{1.0, -y, y}; };
    return p;
  }
  raise(ErrorCode::UnknownExample, "curve pair catalog: unknown id '" + id + "'");
}

Immersion make_pair_surface(const CurvePair& pair, const AngleProfile& angle,
                            Rect rect, double phi_offset) {
  if (!(rect.x0 < rect.x1) || !(rect.y0 < rect.y1)) {
    raise(ErrorCode::EmptyDomain, "pair surface: empty rectangle");
  }
  if (rect.x0 < angle.x0 - 1e-12 || rect.x1 > angle.x1 + 1e-12) {
    raise(ErrorCode::EmptyDomain,
          "pair surface: rectangle exceeds the angle profile domain");
  }
  validate_curve_pair(pair, rect.y0, rect.y1);

  const Grid1D grid(rect.x0, rect.x1, kTableNodes);
  auto theta = angle.theta;
  auto phi = std::make_shared<HermiteTable>(HermiteTable::primitive(
      [theta](double x) { return std::cos(theta(x)); }, angle.anchor, grid));
  auto chi = std::make_shared<HermiteTable>(HermiteTable::primitive(
      [theta](double x) { return std::sin(theta(x)); }, angle.anchor, grid));

  Immersion imm;
  imm.domain = rect;
  imm.tag = "pair_surface";
  imm.eval = [pair, phi, chi, phi_offset](double x, double y) {
    const double ph = (*phi)(x) + phi_offset;
    const LorentzVec3 h =
        std::sinh(ph) * pair.A(y) + std::cosh(ph) * pair.B(y);
    return Point4{h, (*chi)(x)};
  };
  imm.dx = [pair, phi, theta, phi_offset](double x, double y) {
    const double ph = (*phi)(x) + phi_offset;
    const double c = std::cos(theta(x));
    const LorentzVec3 h =
        c * (std::cosh(ph) * pair.A(y) + std::sinh(ph) * pair.B(y));
    return Vec4{h.x1, h.x2, h.x3, std::sin(theta(x))};
  };
  imm.dy = [pair, phi, phi_offset](double x, double y) {
    const double ph = (*phi)(x) + phi_offset;
    const LorentzVec3 h =
        std::sinh(ph) * pair.Aprime(y) + std::cosh(ph) * pair.Bprime(y);
    return Vec4{h.x1, h.x2, h.x3, 0.0};
  };
  return imm;
}

Immersion make_curve_surface(const Curve3& f, const Curve3& fprime,
                             const AngleProfile& angle, Rect rect) {
  for (int i = 0; i <= 40; ++i) {
    const double y = rect.y0 + (rect.y1 - rect.y0) * i / 40.0;
    if (!in_h2(f(y), 1e-8)) {
      raise(ErrorCode::NotOnH2,
            "curve surface: f leaves H^2 at y=" + std::to_string(y));
    }
  }
  CurvePair pair;
  pair.B = f;
  pair.Bprime = fprime;
  pair.A = [f, fprime](double y) { return curve_normal(f(y), fprime(y)); };
  pair.Aprime = [A = pair.A](double y) {
    const double h = 1e-4;
    const LorentzVec3 m2 = A(y - 2 * h), m1 = A(y - h), p1 = A(y + h),
                      p2 = A(y + 2 * h);
    return (1.0 / (12.0 * h)) *
           LorentzVec3{-p2.x1 + 8 * p1.x1 - 8 * m1.x1 + m2.x1,
                       -p2.x2 + 8 * p1.x2 - 8 * m1.x2 + m2.x2,
                       -p2.x3 + 8 * p1.x3 - 8 * m1.x3 + m2.x3};
  };
  Immersion imm = make_pair_surface(pair, angle, rect);
  imm.tag = "curve_surface";
  return imm;
}

// ---- minimal family -----------------------------------------------------

Rect minimal_family_default_rect(double c1, double c2) {
  if (c1 == 0.0 && c2 == 0.0) {
    raise(ErrorCode::DegenerateParameters,
          "minimal family: (c1, c2) = (0, 0) is degenerate");
  }
  if (std::abs(c2) > std::abs(c1)) {
    // a(x) = c1 cosh x + c2 sinh x vanishes at atanh(-c1/c2)
    const double xstar = std::atanh(-c1 / c2);
    return Rect{xstar + 0.05, xstar + 1.55, -1.0, 1.0};
  }
  return Rect{-0.75, 0.75, -1.0, 1.0};
}

Immersion make_minimal_family(double c1, double c2, std::optional<Rect> rect) {
  if (c1 == 0.0 && c2 == 0.0) {
    raise(ErrorCode::DegenerateParameters,
          "minimal family: (c1, c2) = (0, 0) is degenerate");
  }
  const Rect r = rect ? *rect : minimal_family_default_rect(c1, c2);
  auto a = [c1, c2](double x) { return c1 * std::cosh(x) + c2 * std::sinh(x); };
  auto b = [c1, c2](double x) { return c1 * std::sinh(x) + c2 * std::cosh(x); };
  for (int i = 0; i <= 128; ++i) {
    const double x = r.x0 + (r.x1 - r.x0) * i / 128.0;
    if (std::abs(a(x)) < 1e-9) {
      raise(ErrorCode::EmptyDomain,
            "minimal family: a(x) vanishes inside the requested rectangle "
            "(x=" + std::to_string(x) + ")");
    }
  }

  const double s = 1.0 + c1 * c1 - c2 * c2;
  const Grid1D grid(r.x0, r.x1, kTableNodes);
  auto chi = std::make_shared<HermiteTable>(HermiteTable::primitive(
      [a](double x) { return 1.0 / std::sqrt(a(x) * a(x) + 1.0); }, 0.0,
      grid));

  Immersion imm;
  imm.domain = r;

  if (s > kBranchTol) {
    const double rt = std::sqrt(s);
    imm.tag = "minimal_family.hyperbolic";
    imm.eval = [a, b, chi, rt](double x, double y) {
      const double beta = std::sqrt(a(x) * a(x) + 1.0);
      return Point4{{b(x) / rt, beta / rt * std::sinh(y),
                     beta / rt * std::cosh(y)},
                    (*chi)(x)};
    };
    imm.dx = [a, b, rt](double x, double y) {
      const double beta = std::sqrt(a(x) * a(x) + 1.0);
      const double dbeta = a(x) * b(x) / beta;
      return Vec4{a(x) / rt, dbeta / rt * std::sinh(y),
                  dbeta / rt * std::cosh(y), 1.0 / beta};
    };
    imm.dy = [a, rt](double x, double y) {
      const double beta = std::sqrt(a(x) * a(x) + 1.0);
      return Vec4{0.0, beta / rt * std::cosh(y), beta / rt * std::sinh(y),
                  0.0};
    };
    return imm;
  }

  if (s < -kBranchTol) {
    const double rt = std::sqrt(-s);
    // b^2 = a^2 + 1 - s > 0, so b keeps one sign; fold it positive to stay
    // on the upper sheet (congruent surface).
    const double eps = b(0.5 * (r.x0 + r.x1)) >= 0.0 ? 1.0 : -1.0;
    imm.tag = "minimal_family.rotation";
    imm.eval = [a, b, chi, rt, eps](double x, double y) {
      const double beta = std::sqrt(a(x) * a(x) + 1.0);
      return Point4{{beta / rt * std::cos(y), beta / rt * std::sin(y),
                     eps * b(x) / rt},
                    (*chi)(x)};
    };
    imm.dx = [a, b, rt, eps](double x, double y) {
      const double beta = std::sqrt(a(x) * a(x) + 1.0);
      const double dbeta = a(x) * b(x) / beta;
      return Vec4{dbeta / rt * std::cos(y), dbeta / rt * std::sin(y),
                  eps * a(x) / rt, 1.0 / beta};
    };
    imm.dy = [a, rt](double x, double y) {
      const double beta = std::sqrt(a(x) * a(x) + 1.0);
      return Vec4{-beta / rt * std::sin(y), beta / rt * std::cos(y), 0.0, 0.0};
    };
    return imm;
  }

  // s == 0: b^2 = a^2 + 1, parabolic ruling
  const double eps = b(0.5 * (r.x0 + r.x1)) >= 0.0 ? 1.0 : -1.0;
  imm.tag = "minimal_family.parabolic";
  auto bb = [b, eps](double x) { return eps * b(x); };
  auto dbb = [a, eps](double x) { return eps * a(x); };
  imm.eval = [bb, chi](double x, double y) {
    const double v = bb(x);
    return Point4{{v * y, 0.5 * v * (1.0 - y * y) - 0.5 / v,
                   0.5 * v * (1.0 + y * y) + 0.5 / v},
                  (*chi)(x)};
  };
  imm.dx = [a, bb, dbb](double x, double y) {
    const double v = bb(x), dv = dbb(x);
    return Vec4{dv * y, 0.5 * dv * (1.0 - y * y) + 0.5 * dv / (v * v),
                0.5 * dv * (1.0 + y * y) - 0.5 * dv / (v * v),
                1.0 / std::sqrt(a(x) * a(x) + 1.0)};
  };
  imm.dy = [bb](double x, double y) {
    const double v = bb(x);
    return Vec4{v, -v * y, v * y, 0.0};
  };
  return imm;
}

// ---- flat family ----------------------------------------------------------

namespace {

double flat_left_edge(double c) {
  if (std::abs(c + 1.0) <= kBranchTol) return 1.0;
  if (c >= 0.0) return 0.0;
  return std::sqrt(-c);
}

}  // namespace

Rect flat_family_default_rect(double c) {
  const double L = flat_left_edge(c);
  return Rect{L + 0.1, L + 1.6, -1.0, 1.0};
}

Immersion make_flat_family(double c, std::optional<Rect> rect) {
  const double L = flat_left_edge(c);
  const Rect r = rect ? *rect : flat_family_default_rect(c);
  if (!(r.x0 > L) || !(r.x0 < r.x1)) {
    raise(ErrorCode::EmptyDomain,
          "flat family: x must stay right of " + std::to_string(L) +
              " for c=" + std::to_string(c));
  }

  auto sin_theta = [c](double x) {
    return std::sqrt(x * x + c) / std::sqrt(x * x + c + 1.0);
  };
  const Grid1D grid(r.x0, r.x1, kTableNodes);
  auto chi = std::make_shared<HermiteTable>(
      HermiteTable::primitive(sin_theta, L, grid));

  Immersion imm;
  imm.domain = r;

  if (c + 1.0 > kBranchTol) {
    const double rt = std::sqrt(c + 1.0);
    imm.tag = "flat_family.rotation";
    imm.eval = [c, rt, chi](double x, double y) {
      return Point4{{x / rt * std::cos(y), x / rt * std::sin(y),
                     std::sqrt(x * x + c + 1.0) / rt},
                    (*chi)(x)};
    };
    imm.dx = [c, rt, sin_theta](double x, double y) {
      return Vec4{std::cos(y) / rt, std::sin(y) / rt,
                  x / (rt * std::sqrt(x * x + c + 1.0)), sin_theta(x)};
    };
    imm.dy = [rt](double x, double y) {
      return Vec4{-x / rt * std::sin(y), x / rt * std::cos(y), 0.0, 0.0};
    };
    return imm;
  }

  if (c + 1.0 < -kBranchTol) {
    const double rt = std::sqrt(-c - 1.0);
    imm.tag = "flat_family.hyperbolic";
    imm.eval = [c, rt, chi](double x, double y) {
      return Point4{{std::sqrt(x * x + c + 1.0) / rt, x / rt * std::sinh(y),
                     x / rt * std::cosh(y)},
                    (*chi)(x)};
    };
    imm.dx = [c, rt, sin_theta](double x, double y) {
      return Vec4{x / (rt * std::sqrt(x * x + c + 1.0)), std::sinh(y) / rt,
                  std::cosh(y) / rt, sin_theta(x)};
    };
    imm.dy = [rt](double x, double y) {
      return Vec4{0.0, x / rt * std::cosh(y), x / rt * std::sinh(y), 0.0};
    };
    return imm;
  }

  imm.tag = "flat_family.parabolic";
  imm.eval = [chi](double x, double y) {
    return Point4{{x * y, 0.5 * x * (1.0 - y * y) - 0.5 / x,
                   0.5 * x * (1.0 + y * y) + 0.5 / x},
                  (*chi)(x)};
  };
  imm.dx = [sin_theta](double x, double y) {
    return Vec4{y, 0.5 * (1.0 - y * y) + 0.5 / (x * x),
                0.5 * (1.0 + y * y) - 0.5 / (x * x), sin_theta(x)};
  };
  imm.dy = [](double x, double y) {
    return Vec4{x, -x * y, x * y, 0.0};
  };
  return imm;
}

// ---- frame ODE layer -------------------------------------------------------

void validate_frame_state(const FrameState& st, double tol) {
  auto fail = [](const char* what, double v) {
    raise(ErrorCode::InvalidFrame,
          std::string("frame state: ") + what + " fails, " + rel("value", v));
  };
  if (std::abs(inner3(st.A, st.A) - 1.0) > tol) fail("<A,A>=1", inner3(st.A, st.A));
  if (std::abs(inner3(st.B, st.B) + 1.0) > tol) fail("<B,B>=-1", inner3(st.B, st.B));
  if (std::abs(inner3(st.H, st.H) - 1.0) > tol) fail("<H,H>=1", inner3(st.H, st.H));
  if (std::abs(inner3(st.A, st.B)) > tol) fail("<A,B>=0", inner3(st.A, st.B));
  if (std::abs(inner3(st.A, st.H)) > tol) fail("<A,H>=0", inner3(st.A, st.H));
  if (std::abs(inner3(st.B, st.H)) > tol) fail("<B,H>=0", inner3(st.B, st.H));
}

FrameState frame_velocity(FrameKind kind, const RealFn& psi, double y,
                          const FrameState& st) {
  const double p = psi ? psi(y) : 0.0;
  const double ch = std::cosh(p), sh = std::sinh(p);
  FrameState v;
  switch (kind) {
    case FrameKind::Spacelike:
      v.A = ch * st.H;
      v.B = sh * st.H;
      v.H = sh * st.B - ch * st.A;
      return v;
    case FrameKind::Timelike:
      v.A = sh * st.H;
      v.B = ch * st.H;
      v.H = ch * st.B - sh * st.A;
      return v;
    case FrameKind::Lightlike:
      raise(ErrorCode::InvalidArgument,
            "frame_velocity: the lightlike branch is closed-form; use "
            "null_frame_pair");
  }
  raise(ErrorCode::InvalidArgument, "frame_velocity: bad kind");
}

namespace {

std::vector<double> pack(const FrameState& st) {
  return {st.A.x1, st.A.x2, st.A.x3, st.B.x1, st.B.x2,
          st.B.x3, st.H.x1, st.H.x2, st.H.x3};
}

FrameState unpack(std::span<const double> s) {
  return FrameState{{s[0], s[1], s[2]}, {s[3], s[4], s[5]}, {s[6], s[7], s[8]}};
}

}  // namespace

struct FrameFlow::Half {
  // states sampled on uniform nodes of [0, extent] in the half's own
  // parameter s; reflected halves map y = -s.
  Grid1D grid{0.0, 1.0, 2};
  std::vector<std::array<double, 9>> states;
  std::vector<std::array<double, 9>> derivs;
  bool reflected = false;

  std::pair<int, double> locate(double s) const {
    const double hx = (grid.stop - grid.start) / (grid.n - 1);
    int k = static_cast<int>(std::floor((s - grid.start) / hx));
    k = std::clamp(k, 0, grid.n - 2);
    return {k, (s - grid.node(k)) / hx};
  }

  std::array<double, 9> state_at(double s) const {
    const auto [k, t] = locate(s);
    const double hx = (grid.stop - grid.start) / (grid.n - 1);
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    std::array<double, 9> out{};
    const std::size_t i = static_cast<std::size_t>(k);
    for (int j = 0; j < 9; ++j) {
      const std::size_t q = static_cast<std::size_t>(j);
      out[q] = h00 * states[i][q] + h10 * hx * derivs[i][q] +
               h01 * states[i + 1][q] + h11 * hx * derivs[i + 1][q];
    }
    return out;
  }
};

FrameFlow::FrameFlow(FrameKind kind, RealFn psi, FrameState init, double ymin,
                     double ymax, double step)
    : kind_(kind), psi_(std::move(psi)), init_(init) {
  if (kind == FrameKind::Lightlike) {
    raise(ErrorCode::InvalidArgument,
          "FrameFlow covers the ODE branches; the lightlike branch is "
          "closed-form");
  }
  if (!(ymin <= 0.0) || !(ymax >= 0.0) || !(ymin < ymax)) {
    raise(ErrorCode::InvalidArgument,
          "FrameFlow: need ymin <= 0 <= ymax, ymin < ymax");
  }
  validate_frame_state(init);

  auto build_half = [&](double extent, bool reflected) {
    auto half = std::make_shared<Half>();
    half->reflected = reflected;
    OdeField field = [this, reflected](double s, std::span<const double> st,
                                       std::span<double> d) {
      const double y = reflected ? -s : s;
      const FrameState v = frame_velocity(kind_, psi_, y, unpack(st));
      const std::vector<double> packed = pack(v);
      const double sign = reflected ? -1.0 : 1.0;
      for (int i = 0; i < 9; ++i) d[static_cast<std::size_t>(i)] = sign * packed[static_cast<std::size_t>(i)];
    };
    const int nsteps =
        std::max(1, static_cast<int>(std::ceil(extent / step - 1e-9)));
    const double h = extent / nsteps;
    const Trajectory traj = rk4(field, 0.0, pack(init_), extent, h);
    half->grid = Grid1D(0.0, extent, static_cast<int>(traj.size()));
    half->states.resize(traj.size());
    half->derivs.resize(traj.size());
    std::vector<double> d(9);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      for (int j = 0; j < 9; ++j) half->states[i][static_cast<std::size_t>(j)] = traj.states[i][static_cast<std::size_t>(j)];
      field(traj.params[i], traj.states[i], d);
      for (int j = 0; j < 9; ++j) half->derivs[i][static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(j)];
    }
    return half;
  };

  if (ymax > 0.0) pos_ = build_half(ymax, false);
  if (ymin < 0.0) neg_ = build_half(-ymin, true);
}

FrameState FrameFlow::state(double y) const {
  if (y >= 0.0) {
    if (!pos_) {
      if (y == 0.0) return init_;
      raise(ErrorCode::DomainClip, "FrameFlow: y beyond integrated range");
    }
    const auto s = pos_->state_at(y);
    return unpack(std::span<const double>(s.data(), 9));
  }
  if (!neg_) raise(ErrorCode::DomainClip, "FrameFlow: y beyond integrated range");
  const auto s = neg_->state_at(-y);
  return unpack(std::span<const double>(s.data(), 9));
}

FrameState FrameFlow::velocity(double y) const {
  return frame_velocity(kind_, psi_, y, state(y));
}

double FrameFlow::max_invariant_drift() const {
  double worst = 0.0;
  auto scan = [&](const std::shared_ptr<const Half>& half) {
    if (!half) return;
    for (const auto& st : half->states) {
      const FrameState f = unpack(std::span<const double>(st.data(), 9));
      worst = std::max({worst, std::abs(inner3(f.A, f.A) - 1.0),
                        std::abs(inner3(f.B, f.B) + 1.0),
                        std::abs(inner3(f.H, f.H) - 1.0),
                        std::abs(inner3(f.A, f.B)),
                        std::abs(inner3(f.A, f.H)),
                        std::abs(inner3(f.B, f.H))});
    }
  };
  scan(pos_);
  scan(neg_);
  return worst;
}

Immersion make_frame_family(FrameKind kind, const RealFn& psi,
                            const FrameState& init, const AngleProfile& angle,
                            Rect rect, double ode_step) {
  auto flow = std::make_shared<FrameFlow>(
      kind, psi, init, std::min(rect.y0, 0.0), std::max(rect.y1, 0.0),
      ode_step);
  CurvePair pair;
  pair.A = [flow](double y) { return flow->state(y).A; };
  pair.B = [flow](double y) { return flow->state(y).B; };
  pair.Aprime = [flow](double y) { return flow->velocity(y).A; };
  pair.Bprime = [flow](double y) { return flow->velocity(y).B; };
  Immersion imm = make_pair_surface(pair, angle, rect);
  imm.tag = std::string("frame_family.") +
            (kind == FrameKind::Spacelike ? "spacelike" : "timelike");
  return imm;
}

CurvePair null_frame_pair(const LorentzVec3& c1, const LorentzVec3& c2,
                          const LorentzVec3& c3, int sign) {
  if (sign != 1 && sign != -1) {
    raise(ErrorCode::InvalidArgument, "null frame: sign must be +1 or -1");
  }
  const double tol = 1e-8;
  auto fail = [](const char* what, double v) {
    raise(ErrorCode::InvalidConstants,
          std::string("null frame: ") + what + " fails, " + rel("value", v));
  };
  if (std::abs(inner3(c1, c1) - 1.0) > tol) fail("<c1,c1>=1", inner3(c1, c1));
  if (std::abs(inner3(c2, c2) + 1.0) > tol) fail("<c2,c2>=-1", inner3(c2, c2));
  if (std::abs(inner3(c3, c3) - 1.0) > tol) fail("<c3,c3>=1", inner3(c3, c3));
  if (std::abs(inner3(c1, c2)) > tol) fail("<c1,c2>=0", inner3(c1, c2));
  if (std::abs(inner3(c1, c3)) > tol) fail("<c1,c3>=0", inner3(c1, c3));
  if (std::abs(inner3(c2, c3)) > tol) fail("<c2,c3>=0", inner3(c2, c3));

  const double sg = static_cast<double>(sign);
  // H = (c2 -+ c1) y + c3; A = +-Integral(H) + c1; B = Integral(H) + c2.
  CurvePair p;
  p.A = [=](double y) {
    const LorentzVec3 q = sg * c2 - c1;
    return 0.5 * y * y * q + sg * y * c3 + c1;
  };
  p.B = [=](double y) {
    const LorentzVec3 q = c2 - sg * c1;
    return 0.5 * y * y * q + y * c3 + c2;
  };
  p.Aprime = [=](double y) {
    const LorentzVec3 h = y * (c2 - sg * c1) + c3;
    return sg * h;
  };
  p.Bprime = [=](double y) { return y * (c2 - sg * c1) + c3; };
  return p;
}

Immersion make_null_frame_family(const LorentzVec3& c1, const LorentzVec3& c2,
                                 const LorentzVec3& c3, int sign,
                                 const AngleProfile& angle, Rect rect) {
  Immersion imm = make_pair_surface(null_frame_pair(c1, c2, c3, sign), angle, rect);
  imm.tag = "frame_family.lightlike";
  return imm;
}

// ---- named examples --------------------------------------------------------

namespace {

Immersion named_rotation() {
  Immersion imm;
  imm.domain = Rect{0.1, 1.4, -1.5, 1.5};
  imm.tag = "named.rotation";
  imm.eval = [](double x, double y) {
    const double s = std::sin(x);
    return Point4{{std::sin(y) * std::sinh(s), std::cos(y) * std::sinh(s),
                   std::cosh(s)},
                  1.0 - std::cos(x)};
  };
  imm.dx = [](double x, double y) {
    const double s = std::sin(x), c = std::cos(x);
    return Vec4{std::sin(y) * std::cosh(s) * c, std::cos(y) * std::cosh(s) * c,
                std::sinh(s) * c, std::sin(x)};
  };
  imm.dy = [](double x, double y) {
    const double s = std::sin(x);
    return Vec4{std::cos(y) * std::sinh(s), -std::sin(y) * std::sinh(s), 0.0,
                0.0};
  };
  return imm;
}

Immersion named_rotation_arccos() {
  Immersion imm;
  imm.domain = Rect{0.1, 0.9, -1.0, 1.0};
  imm.tag = "named.rotation_arccos";
  imm.eval = [](double x, double y) {
    const double q = std::cosh(0.5 * x * x);
    return Point4{{std::sinh(y) * q, std::sinh(0.5 * x * x),
                   std::cosh(y) * q},
                  0.5 * (x * std::sqrt(1.0 - x * x) + std::asin(x))};
  };
  imm.dx = [](double x, double y) {
    const double q = std::sinh(0.5 * x * x);
    return Vec4{x * std::sinh(y) * q, x * std::cosh(0.5 * x * x),
                x * std::cosh(y) * q, std::sqrt(1.0 - x * x)};
  };
  imm.dy = [](double x, double y) {
    const double q = std::cosh(0.5 * x * x);
    return Vec4{std::cosh(y) * q, 0.0, std::sinh(y) * q, 0.0};
  };
  return imm;
}

CurvePair psi_linear_spacelike_pair() {
  CurvePair p;
  p.A = [](double y) {
    const double sh = std::sinh(y), ch = std::cosh(y), q = 0.5 * y * y;
    return LorentzVec3{y * sh - ch, -q * sh + y * ch, q * sh - y * ch + sh};
  };
  p.B = [](double y) {
    const double sh = std::sinh(y), ch = std::cosh(y), q = 0.5 * y * y;
    return LorentzVec3{y * ch - sh, -q * ch + y * sh, q * ch - y * sh + ch};
  };
  auto H = [](double y) {
    return LorentzVec3{y, 1.0 - 0.5 * y * y, 0.5 * y * y};
  };
  p.Aprime = [H](double y) { return std::cosh(y) * H(y); };
  p.Bprime = [H](double y) { return std::sinh(y) * H(y); };
  return p;
}

CurvePair psi_linear_timelike_pair() {
  const double r = std::numbers::sqrt2;
  CurvePair p;
  p.A = [r](double y) {
    const double S = std::sinh(r * y), C = std::cosh(r * y);
    return LorentzVec3{S * std::sinh(y) - C * std::cosh(y) / r,
                       std::cosh(y) / r,
                       C * std::sinh(y) - S * std::cosh(y) / r};
  };
  p.B = [r](double y) {
    const double S = std::sinh(r * y), C = std::cosh(r * y);
    return LorentzVec3{S * std::cosh(y) - C * std::sinh(y) / r,
                       std::sinh(y) / r,
                       C * std::cosh(y) - S * std::sinh(y) / r};
  };
  auto H = [r](double y) {
    return LorentzVec3{std::cosh(r * y) / r, 1.0 / r, std::sinh(r * y) / r};
  };
  p.Aprime = [H](double y) { return std::sinh(y) * H(y); };
  p.Bprime = [H](double y) { return std::cosh(y) * H(y); };
  return p;
}

Immersion named_cornu() {
  const double k = std::sqrt(2.0 / std::numbers::pi);
  const double K = std::sqrt(0.5 * std::numbers::pi);
  const CurvePair pair = curve_pair_catalog("parabola");
  Immersion imm;
  imm.domain = Rect{0.25, 1.2, -1.0, 1.0};
  imm.tag = "named.cornu";
  imm.eval = [pair, k, K](double x, double y) {
    const double ph = K * fresnel_c(k * x);
    const LorentzVec3 h =
        std::sinh(ph) * pair.A(y) + std::cosh(ph) * pair.B(y);
    return Point4{h, K * fresnel_s(k * x)};
  };
  imm.dx = [pair, k, K](double x, double y) {
    const double ph = K * fresnel_c(k * x);
    const double c = std::cos(x * x);
    const LorentzVec3 h =
        c * (std::cosh(ph) * pair.A(y) + std::sinh(ph) * pair.B(y));
    return Vec4{h.x1, h.x2, h.x3, std::sin(x * x)};
  };
  imm.dy = [pair, k, K](double x, double y) {
    const double ph = K * fresnel_c(k * x);
    const LorentzVec3 h =
        std::sinh(ph) * pair.Aprime(y) + std::cosh(ph) * pair.Bprime(y);
    return Vec4{h.x1, h.x2, h.x3, 0.0};
  };
  return imm;
}

Immersion named_cmc() {
  Immersion imm;
  imm.domain = Rect{0.1, 2.0, -1.0, 1.0};
  imm.tag = "named.cmc";
  imm.eval = [](double x, double y) {
    const double w = std::sqrt(1.0 + x * x);
    return Point4{{x, w * std::sinh(y), w * std::cosh(y)}, w - 1.0};
  };
  imm.dx = [](double x, double y) {
    const double w = std::sqrt(1.0 + x * x);
    return Vec4{1.0, x * std::sinh(y) / w, x * std::cosh(y) / w, x / w};
  };
  imm.dy = [](double x, double y) {
    const double w = std::sqrt(1.0 + x * x);
    return Vec4{0.0, w * std::cosh(y), w * std::sinh(y), 0.0};
  };
  return imm;
}

}  // namespace

Immersion make_named_example(const std::string& id) {
  if (id == "rotation") return named_rotation();
  if (id == "rotation_arccos") return named_rotation_arccos();
  if (id == "cornu") return named_cornu();
  if (id == "cmc") return named_cmc();
  // The theta = x examples keep the printed normalization phi = sin x,
  // chi = 1 - cos x (anchor 0, just outside the profile domain).
  auto theta_x = []() {
    AngleProfile p = theta_linear(1.0, 0.0, 0.05, 1.45);
    p.anchor = 0.0;
    return p;
  };
  if (id == "psi_linear_spacelike") {
    Immersion imm = make_pair_surface(psi_linear_spacelike_pair(), theta_x(),
                                      Rect{0.1, 1.4, -1.0, 1.0});
    imm.tag = "named.psi_linear_spacelike";
    return imm;
  }
  if (id == "psi_linear_timelike") {
    Immersion imm = make_pair_surface(psi_linear_timelike_pair(), theta_x(),
                                      Rect{0.1, 1.4, -1.0, 1.0});
    imm.tag = "named.psi_linear_timelike";
    return imm;
  }
  if (id == "parabolic_null") {
    Immersion imm = make_pair_surface(curve_pair_catalog("parabola"), theta_x(),
                                      Rect{0.1, 1.4, -1.0, 1.0});
    imm.tag = "named.parabolic_null";
    return imm;
  }
  raise(ErrorCode::UnknownExample, "named example: unknown id '" + id + "'");
}

std::vector<std::string> named_example_ids() {
  return {"rotation",     "rotation_arccos",      "psi_linear_spacelike",
          "psi_linear_timelike", "parabolic_null", "cornu",
          "cmc"};
}

Field2 minimal_angle_field(double k, double c, int sign) {
  if (k == 0.0) {
    raise(ErrorCode::InvalidArgument, "minimal angle field: k must be nonzero");
  }
  if (c < 0.0) {
    raise(ErrorCode::InvalidArgument, "minimal angle field: c must be >= 0");
  }
  if (sign != 1 && sign != -1) {
    raise(ErrorCode::InvalidArgument, "minimal angle field: sign must be +-1");
  }
  const double norm = std::sqrt(k * k + 1.0);
  return [k, c, sign, norm](double x, double y) {
    return jacobi_am(sign * (k * x + y) / norm, -c);
  };
}

// ---- perturbed fixtures -----------------------------------------------------

Immersion make_perturbed_sheared(double eps, std::optional<Rect> rect) {
  const Rect r = rect ? *rect : Rect{0.2, 1.3, -1.0, 1.0};
  Immersion imm;
  imm.domain = r;
  imm.tag = "perturbed_sheared";
  auto shift = [eps](double y) { return eps * std::sin(y); };
  imm.eval = [shift](double x, double y) {
    const double es = shift(y);
    const double ph = std::sin(x + es) - std::sin(es);
    return Point4{{std::sin(y) * std::sinh(ph), std::cos(y) * std::sinh(ph),
                   std::cosh(ph)},
                  std::cos(es) - std::cos(x + es)};
  };
  imm.dx = [shift](double x, double y) {
    const double es = shift(y);
    const double ph = std::sin(x + es) - std::sin(es);
    const double c = std::cos(x + es);
    return Vec4{std::sin(y) * std::cosh(ph) * c, std::cos(y) * std::cosh(ph) * c,
                std::sinh(ph) * c, std::sin(x + es)};
  };
  imm.dy = [eps, shift](double x, double y) {
    const double es = shift(y);
    const double des = eps * std::cos(y);
    const double ph = std::sin(x + es) - std::sin(es);
    const double ph_y = des * (std::cos(x + es) - std::cos(es));
    const double t_y = des * (std::sin(x + es) - std::sin(es));
    return Vec4{std::cos(y) * std::sinh(ph) + std::sin(y) * std::cosh(ph) * ph_y,
                -std::sin(y) * std::sinh(ph) + std::cos(y) * std::cosh(ph) * ph_y,
                std::sinh(ph) * ph_y, t_y};
  };
  return imm;
}

Immersion make_perturbed_graph(double eps, std::optional<Rect> rect) {
  const Rect r = rect ? *rect : Rect{0.35, 1.2, -1.0, 1.0};
  const double x_anchor = 0.3;
  Immersion imm;
  imm.domain = r;
  imm.tag = "perturbed_graph";
  auto shift = [eps](double y) { return eps * std::sin(y); };
  auto phi = [shift, x_anchor](double x, double y) {
    const double es = shift(y);
    return std::log(std::sin(x + es)) - std::log(std::sin(x_anchor + es));
  };
  imm.eval = [phi](double x, double y) {
    const double ph = phi(x, y);
    return Point4{{std::sin(y) * std::sinh(ph), std::cos(y) * std::sinh(ph),
                   std::cosh(ph)},
                  x};
  };
  imm.dx = [phi, shift](double x, double y) {
    const double ph = phi(x, y);
    const double cot = 1.0 / std::tan(x + shift(y));
    return Vec4{std::sin(y) * std::cosh(ph) * cot,
                std::cos(y) * std::cosh(ph) * cot, std::sinh(ph) * cot, 1.0};
  };
  imm.dy = [phi, shift, eps, x_anchor](double x, double y) {
    const double es = shift(y);
    const double des = eps * std::cos(y);
    const double ph = phi(x, y);
    const double ph_y =
        des * (1.0 / std::tan(x + es) - 1.0 / std::tan(x_anchor + es));
    return Vec4{std::cos(y) * std::sinh(ph) + std::sin(y) * std::cosh(ph) * ph_y,
                -std::sin(y) * std::sinh(ph) + std::cos(y) * std::cosh(ph) * ph_y,
                std::sinh(ph) * ph_y, 0.0};
  };
  return imm;
}

Immersion make_off_h2(const Immersion& base, double scale) {
  if (!(scale > 0.0)) {
    raise(ErrorCode::InvalidArgument, "off_h2: scale must be positive");
  }
  Immersion imm;
  imm.domain = base.domain;
  imm.tag = base.tag + ".off_h2";
  imm.eval = [eval = base.eval, scale](double x, double y) {
    Point4 p = eval(x, y);
    return Point4{scale * p.h, p.t};
  };
  if (base.has_analytic_partials()) {
    imm.dx = [dx = base.dx, scale](double x, double y) {
      Vec4 v = dx(x, y);
      return Vec4{scale * v.x1, scale * v.x2, scale * v.x3, v.t};
    };
    imm.dy = [dy = base.dy, scale](double x, double y) {
      Vec4 v = dy(x, y);
      return Vec4{scale * v.x1, scale * v.x2, scale * v.x3, v.t};
    };
  }
  return imm;
}

std::pair<Curve3, Curve3> h2_curve_catalog(const std::string& id,
                                           double radius) {
  if (id == "geodesic") {
    return {[](double y) {
              return LorentzVec3{0.0, std::sinh(y), std::cosh(y)};
            },
            [](double y) {
              return LorentzVec3{0.0, std::cosh(y), std::sinh(y)};
            }};
  }
  if (id == "circle") {
    if (!(radius > 0.0)) {
      raise(ErrorCode::InvalidArgument, "h2 circle: radius must be positive");
    }
    const double r = radius, w = std::sqrt(1.0 + radius * radius);
    return {[r, w](double y) {
              return LorentzVec3{r * std::sin(y), r * std::cos(y), w};
            },
            [r](double y) {
              return LorentzVec3{r * std::cos(y), -r * std::sin(y), 0.0};
            }};
  }
  raise(ErrorCode::UnknownExample, "h2 curve catalog: unknown id '" + id + "'");
}

}  // namespace h2r
