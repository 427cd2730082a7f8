#ifndef H2R_VERIFIERS_HPP
#define H2R_VERIFIERS_HPP

#include <map>
#include <string>
#include <vector>

#include "h2r/families.hpp"
#include "h2r/surface.hpp"

namespace h2r {

/// One residual field reduced over a grid. pass <=> max_abs <= tolerance.
struct ResidualReport {
  std::string name;
  int nx = 0, ny = 0;
  Rect rect{0, 1, 0, 1};  // effective (margin-shrunk) rectangle
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double argmax_x = 0.0, argmax_y = 0.0;
  std::string note;
};

using ToleranceMap = std::map<std::string, double>;

/// Registry of grid verifiers on immersions. A single registry name may
/// produce several reports (e.g. "normal_flatness" yields .norm and
/// .identity). Unknown names throw InvalidArgument.
std::vector<std::string> verifier_names();
bool is_verifier(const std::string& name);
std::vector<ResidualReport> run_verifier(const std::string& name,
                                         const Immersion& imm, int nx, int ny,
                                         const ToleranceMap& overrides = {});

/// |g(A e1, e2)| with e1 the unit T direction, e2 the g-orthogonal unit
/// tangent; throws DegenerateAngle when sin(theta) < 1e-3 on the grid.
std::vector<ResidualReport> principal_direction_residual(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides = {});

/// beta_xx + tan(theta) theta_x beta_x - beta cos^2(theta) with beta=sqrt(G),
/// after validating the chart is canonical (E=1, F=0 to 1e-6); NotCanonical
/// otherwise.
std::vector<ResidualReport> canonical_pde_residual(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides = {});

/// Angle-field form of the minimal-surface equation, both shapes:
///   .direct    cos(t)(t_x^2+t_y^2-1) - sin(t)(t_xx+t_yy)
///   .log_form  sin^2(t) Lap[ln tan(t/2)] + cos(t)
///   .agreement |direct + log_form| (the two differ by sign exactly)
std::vector<ResidualReport> minimal_angle_pde_residual(
    const Field2& theta, Rect rect, int nx, int ny,
    const ToleranceMap& overrides = {});

/// ||R_perp(dx,dy)xi|| (".norm") and the chart identity
/// ||R_perp - sin(theta) theta_y xi_tilde|| (".identity").
std::vector<ResidualReport> normal_flatness_residual(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides = {});

/// |K_intrinsic - (det A - cos^2 theta)| (".gauss_identity") and the
/// Codazzi vector residual (".codazzi").
std::vector<ResidualReport> gauss_codazzi_residuals(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides = {});

/// ||nabla_X T - cos(theta) A X|| (".grad_t") and |X(cos theta) + g(AX,T)|
/// (".dcos_theta"), maximized over X in {dx, dy}.
std::vector<ResidualReport> structure_eq_residuals(
    const Immersion& imm, int nx, int ny, const ToleranceMap& overrides = {});

/// One minimal-family member of the curvature scan.
struct ScanEntry {
  double c1 = 0.0, c2 = 0.0;
  double max_k = 0.0;  // max of K over the spatial grid
};

struct ScanResult {
  std::vector<ScanEntry> entries;
  double threshold = -1e-3;  // every max_k must stay below this
  bool all_negative = false;
};

/// Scans minimal-family parameters for flat members: every admissible
/// (c1,c2) must keep K strictly negative on its spatial grid.
ScanResult flat_and_minimal_scan(const std::vector<std::pair<double, double>>& params,
                                 int nx, int ny, double threshold = -1e-3);

/// The 5x5 grid over [-2,2]^2 with the degenerate origin removed.
std::vector<std::pair<double, double>> default_scan_parameters();

}  // namespace h2r

#endif
