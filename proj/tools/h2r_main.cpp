// Command-line front end: family construction from JSON specs, mesh export,
// residual verification runs, special-function evaluation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "h2r/family_json.hpp"
#include "h2r/special_functions.hpp"
#include "h2r/verifiers.hpp"

namespace {

using h2r::Error;
using h2r::ErrorCode;
using h2r::Json;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    h2r::raise(ErrorCode::InvalidArgument, "cannot open spec file: " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    h2r::raise(ErrorCode::InvalidArgument,
               "spec file " + path + " is not valid JSON: " + e.what());
  }
  return j;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GenerateArgs {
  std::string spec_path;
  std::string out_path;
  std::string chart = "poincare_disk_x_r";
  std::string format = "obj";
  int nx = 10, ny = 10;
};

void write_mesh(const h2r::Immersion& imm, const GenerateArgs& args) {
  if (args.nx < 2 || args.ny < 2) {
    h2r::raise(ErrorCode::InvalidArgument, "generate: need nx, ny >= 2");
  }
  const bool raw = args.chart == "raw4d";
  const bool as_obj = !raw && args.format == "obj";
  const h2r::Rect d = imm.domain;

  std::ofstream out(args.out_path);
  if (!out) {
    h2r::raise(ErrorCode::InvalidArgument,
               "generate: cannot write " + args.out_path);
  }

  std::vector<h2r::Point4> points;
  points.reserve(static_cast<std::size_t>(args.nx) * args.ny);
  for (int i = 0; i < args.nx; ++i) {
    const double x = d.x0 + (d.x1 - d.x0) * i / (args.nx - 1);
    for (int j = 0; j < args.ny; ++j) {
      const double y = d.y0 + (d.y1 - d.y0) * j / (args.ny - 1);
      points.push_back(imm.eval(x, y));
    }
  }

  if (raw || args.format == "csv") {
    for (const auto& p : points) {
      if (raw) {
        out << fmt17(p.h.x1) << "," << fmt17(p.h.x2) << "," << fmt17(p.h.x3)
            << "," << fmt17(p.t) << "\n";
      } else {
        const double w = 1.0 + p.h.x3;
        out << fmt17(p.h.x1 / w) << "," << fmt17(p.h.x2 / w) << ","
            << fmt17(p.t) << "\n";
      }
    }
  } else if (as_obj) {
    for (const auto& p : points) {
      const double w = 1.0 + p.h.x3;
      out << "v " << fmt17(p.h.x1 / w) << " " << fmt17(p.h.x2 / w) << " "
          << fmt17(p.t) << "\n";
    }
    // grid quads split into triangles; vertices are stored row-major in i
    for (int i = 0; i + 1 < args.nx; ++i) {
      for (int j = 0; j + 1 < args.ny; ++j) {
        const int a = i * args.ny + j + 1;  // 1-based
        const int b = a + 1;
        const int c = a + args.ny;
        const int e = c + 1;
        out << "f " << a << " " << b << " " << e << "\n";
        out << "f " << a << " " << e << " " << c << "\n";
      }
    }
  } else {
    h2r::raise(ErrorCode::InvalidArgument,
               "generate: format must be obj or csv");
  }
  out.close();

  // Per-vertex curvature scalars; FD stencils are clamped to the interior.
  std::ofstream curv(args.out_path + ".curvature.csv");
  if (!curv) {
    h2r::raise(ErrorCode::InvalidArgument,
               "generate: cannot write curvature CSV next to " + args.out_path);
  }
  curv << "x,y,K,Hmean,theta\n";
  const double margin = 0.012;
  auto clamp = [](double v, double lo, double hi) {
    return std::max(lo, std::min(hi, v));
  };
  for (int i = 0; i < args.nx; ++i) {
    const double x = d.x0 + (d.x1 - d.x0) * i / (args.nx - 1);
    for (int j = 0; j < args.ny; ++j) {
      const double y = d.y0 + (d.y1 - d.y0) * j / (args.ny - 1);
      const double cx = clamp(x, d.x0 + margin, d.x1 - margin);
      const double cy = clamp(y, d.y0 + margin, d.y1 - margin);
      const h2r::GeometrySample s = h2r::sample_geometry(imm, cx, cy);
      curv << fmt17(x) << "," << fmt17(y) << "," << fmt17(s.K) << ","
           << fmt17(s.Hmean) << "," << fmt17(s.theta) << "\n";
    }
  }
}

int cmd_generate(const GenerateArgs& args) {
  const Json spec = load_json(args.spec_path);
  const h2r::Immersion imm = h2r::build_family(spec);
  write_mesh(imm, args);
  return kExitPass;
}

struct VerifyArgs {
  std::string spec_path;
  std::vector<std::string> checks;
  std::string report_path;
  int nx = 25, ny = 25;
  std::vector<std::string> tol_overrides;  // name=value
};

h2r::ToleranceMap parse_overrides(const std::vector<std::string>& kvs) {
  h2r::ToleranceMap tols;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      h2r::raise(ErrorCode::InvalidArgument,
                 "tolerance override must be name=value, got '" + kv + "'");
    }
    tols[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return tols;
}

int cmd_verify(const VerifyArgs& args) {
  const Json spec = load_json(args.spec_path);
  if (args.checks.empty()) {
    h2r::raise(ErrorCode::InvalidArgument, "verify: no checks requested");
  }
  const bool field_spec = h2r::is_angle_field_spec(spec);
  // Validate every requested name before running anything.
  for (const auto& name : args.checks) {
    const bool known = h2r::is_verifier(name) || name == "minimal_angle_pde";
    if (!known) {
      h2r::raise(ErrorCode::InvalidArgument,
                 "verify: unknown check '" + name + "'");
    }
    if (field_spec && name != "minimal_angle_pde") {
      h2r::raise(ErrorCode::InvalidArgument,
                 "verify: angle_field specs only support minimal_angle_pde");
    }
    if (!field_spec && name == "minimal_angle_pde") {
      h2r::raise(ErrorCode::InvalidArgument,
                 "verify: minimal_angle_pde needs an angle_field spec");
    }
  }
  const h2r::ToleranceMap tols = parse_overrides(args.tol_overrides);

  std::vector<h2r::ResidualReport> reports;
  if (field_spec) {
    h2r::Rect rect{0, 1, 0, 1};
    const h2r::Field2 theta = h2r::build_angle_field(spec, &rect);
    auto rs = h2r::minimal_angle_pde_residual(theta, rect, args.nx, args.ny, tols);
    reports.insert(reports.end(), rs.begin(), rs.end());
  } else {
    const h2r::Immersion imm = h2r::build_family(spec);
    for (const auto& name : args.checks) {
      try {
        auto rs = h2r::run_verifier(name, imm, args.nx, args.ny, tols);
        reports.insert(reports.end(), rs.begin(), rs.end());
      } catch (const Error& e) {
        // A tripped verifier guard is a failed verification, not a usage
        // error: surface it as a failing report.
        if (e.code() == ErrorCode::NotCanonical ||
            e.code() == ErrorCode::DegenerateAngle) {
          h2r::ResidualReport r;
          r.name = name;
          r.nx = args.nx;
          r.ny = args.ny;
          r.rect = imm.domain;
          r.max_abs = std::numeric_limits<double>::infinity();
          r.tolerance = 0.0;
          r.pass = false;
          r.note = std::string(h2r::error_code_name(e.code())) + ": " + e.what();
          reports.push_back(r);
        } else {
          throw;
        }
      }
    }
  }

  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
              << " max=" << r.max_abs << " tol=" << r.tolerance << "\n";
  }
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path);
    if (!out) {
      h2r::raise(ErrorCode::InvalidArgument,
                 "verify: cannot write " + args.report_path);
    }
    out << h2r::reports_to_json(reports).dump(2) << "\n";
  }
  return all_pass ? kExitPass : kExitVerifyFail;
}

int cmd_specfun(const std::string& name, const std::vector<double>& args) {
  auto expect = [&](std::size_t n) {
    if (args.size() != n) {
      h2r::raise(ErrorCode::InvalidArgument,
                 "specfun " + name + ": expected " + std::to_string(n) +
                     " numeric arguments");
    }
  };
  double value = 0.0;
  if (name == "ellip_f") {
    expect(2);
    value = h2r::ellip_f(args[0], args[1]);
  } else if (name == "jacobi_am") {
    expect(2);
    value = h2r::jacobi_am(args[0], args[1]);
  } else if (name == "fresnel_c") {
    expect(1);
    value = h2r::fresnel_c(args[0]);
  } else if (name == "fresnel_s") {
    expect(1);
    value = h2r::fresnel_s(args[0]);
  } else {
    h2r::raise(ErrorCode::InvalidArgument,
               "specfun: unknown function '" + name + "'");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  std::cout << buf << "\n";
  return kExitPass;
}

int cmd_example(const std::string& id, const std::string& out_dir, int nx,
                int ny) {
  const h2r::Immersion imm = h2r::make_named_example(id);
  std::filesystem::create_directories(out_dir);

  GenerateArgs gen;
  gen.out_path = out_dir + "/" + id + ".obj";
  gen.nx = std::max(nx, 10);
  gen.ny = std::max(ny, 10);
  write_mesh(imm, gen);

  std::vector<h2r::ResidualReport> reports;
  for (const auto& name : h2r::canonical_checks_for_example(id)) {
    auto rs = h2r::run_verifier(name, imm, nx, ny);
    reports.insert(reports.end(), rs.begin(), rs.end());
  }
  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
              << " max=" << r.max_abs << " tol=" << r.tolerance << "\n";
  }
  std::ofstream out(out_dir + "/" + id + ".report.json");
  out << h2r::reports_to_json(reports).dump(2) << "\n";
  return all_pass ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surfaces in H^2 x R with a canonical principal direction"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "export a surface mesh");
  generate->add_option("--spec", gen.spec_path, "family spec JSON")->required();
  generate->add_option("--out", gen.out_path, "output path")->required();
  generate->add_option("--nx", gen.nx, "grid columns");
  generate->add_option("--ny", gen.ny, "grid rows");
  generate->add_option("--chart", gen.chart, "raw4d | poincare_disk_x_r");
  generate->add_option("--format", gen.format, "obj | csv");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "run residual verifiers");
  verify->add_option("--spec", ver.spec_path, "family spec JSON")->required();
  verify->add_option("--checks", ver.checks, "verifier names")
      ->required()
      ->delimiter(',');
  verify->add_option("--report", ver.report_path, "report JSON output");
  verify->add_option("--nx", ver.nx, "grid columns");
  verify->add_option("--ny", ver.ny, "grid rows");
  verify->add_option("--tol", ver.tol_overrides, "tolerance override name=value");

  std::string fn_name;
  std::vector<double> fn_args;
  auto* specfun = app.add_subcommand("specfun", "evaluate a special function");
  specfun->add_option("name", fn_name, "ellip_f | jacobi_am | fresnel_c | fresnel_s")
      ->required();
  specfun->add_option("args", fn_args, "numeric arguments");

  std::string ex_id, ex_dir = ".";
  int ex_nx = 25, ex_ny = 25;
  auto* example = app.add_subcommand("example", "build and check a catalog surface");
  example->add_option("id", ex_id, "example id")->required();
  example->add_option("--out-dir", ex_dir, "output directory");
  example->add_option("--nx", ex_nx, "grid columns");
  example->add_option("--ny", ex_ny, "grid rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*verify) return cmd_verify(ver);
    if (*specfun) return cmd_specfun(fn_name, fn_args);
    if (*example) return cmd_example(ex_id, ex_dir, ex_nx, ex_ny);
  } catch (const Error& e) {
    std::cerr << "error [" << h2r::error_code_name(e.code()) << "]: "
              << e.what() << "\n";
    return h2r::is_numeric_failure(e.code()) ? kExitNumeric : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
