#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isoptic/analytic.hpp"
#include "isoptic/aperture.hpp"
#include "isoptic/error.hpp"
#include "isoptic/experiments.hpp"
#include "isoptic/io.hpp"
#include "isoptic/tracer.hpp"

using namespace isoptic;
using nlohmann::json;

namespace {

// Exit codes: 1 a residual or verification check failed, 2 bad input,
// 3 a solver failed.
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kSolverFailed = 3;

struct TraceOptions {
  std::string shape;
  std::vector<double> alphas;
  std::string preset;
  std::string method = "auto";
  std::size_t samples = 0;  // 0: method default
  double tol = kDefaultTraceTolerance;
  std::string format = "csv";
  std::string out;
  bool verify = false;
  std::uint64_t seed = 1;
};

struct Preset {
  std::string shape;
  std::vector<double> alphas;
  bool central_only = false;
};

Preset preset_by_name(const std::string& name) {
  Preset p;
  if (name == "fig3") {
    p.shape = R"({"kind":"parabola"})";
    for (double d : {4.0, 3.5, 3.0, 2.5, 2.0, 1.5, 1.2}) p.alphas.push_back(kPi / d);
  } else if (name == "fig5") {
    p.shape = R"({"kind":"sine"})";
    for (int k = 1; k <= 10; ++k) p.alphas.push_back(kPi / (1 + 0.1 * k));
  } else if (name == "fig6") {
    p.shape = R"({"kind":"sine"})";
    for (int k = 0; k < 20; ++k) p.alphas.push_back(1.92 + 0.03 * k / 19);
    p.central_only = true;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "' (fig3, fig5, fig6)");
  }
  return p;
}

bool is_graph_like(const ConvexShape& s) {
  return std::holds_alternative<SineArch>(s) || std::holds_alternative<FunctionGraph>(s);
}

bool has_closed_form(const ConvexShape& s, double alpha) {
  if (std::holds_alternative<ParabolaRegion>(s)) return true;
  if (const auto* e = std::get_if<Ellipse>(&s)) return std::abs(alpha - kPi / 2) < 1e-15 && e->a > 0;
  return false;
}

CurveTrace trace_one(const ConvexShape& shape, double alpha, const TraceOptions& o) {
  const Angle a = Angle::radians(alpha);
  std::string method = o.method;
  if (method == "auto") {
    method = has_closed_form(shape, alpha) ? "analytic" : is_graph_like(shape) ? "newton" : "bisect";
  }
  if (method == "analytic") {
    if (std::holds_alternative<ParabolaRegion>(shape)) {
      const std::size_t n = o.samples ? o.samples : 201;
      std::vector<double> xs;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(n == 1 ? 0.0 : -5.0 + 10.0 * double(i) / double(n - 1));
      auto t = parabola_curve_trace(a, xs);
      t.tolerance = o.tol;
      return t;
    }
    if (const auto* e = std::get_if<Ellipse>(&shape); e && has_closed_form(shape, alpha)) {
      auto t = director_circle_trace(*e, o.samples ? o.samples : kDefaultRayDirections);
      t.tolerance = o.tol;
      return t;
    }
    throw Error(ErrorCode::InvalidArgument, "no closed form for " + shape_id(shape) + " at this angle");
  }
  if (method == "newton") {
    if (!is_graph_like(shape)) {
      throw Error(ErrorCode::InvalidArgument, "the tangent method needs the sine arch or a function graph");
    }
    return tangent_pair_trace(shape, a, default_xi_grid(shape, o.samples ? o.samples : kDefaultTangentSamples), o.tol);
  }
  if (method == "bisect") {
    RayBisectionOptions ro;
    ro.tolerance = o.tol;
    return ray_bisection_trace(shape, a, interior_point(shape), o.samples ? o.samples : kDefaultRayDirections, ro);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + method + "'");
}

// Oracle cross-check of every traced point plus seeded random exterior points.
bool verify_trace(const ConvexShape& shape, const CurveTrace& t, std::mt19937_64& rng) {
  const double tol = is_bounded(shape) ? 1e-3 : 1e-2;
  bool ok = true;
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& p : t.points()) {
    const double d = std::abs(aperture_oracle(shape, p, 100000) - t.alpha.value());
    if (d > tol) {
      std::cerr << "verify: oracle disagrees by " << d << " at " << p.x << "," << p.y << "\n";
      ok = false;
    }
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  if (lo_x > hi_x) return ok;
  std::uniform_real_distribution<double> ux(lo_x - 1, hi_x + 1);
  std::uniform_real_distribution<double> uy(lo_y - 1, hi_y + 1);
  for (int drawn = 0; drawn < 32;) {
    const Point2 x{ux(rng), uy(rng)};
    if (contains(shape, x)) continue;
    ++drawn;
    const double d = std::abs(aperture_oracle(shape, x, 100000) - aperture_angle(shape, x));
    if (d > tol) {
      std::cerr << "verify: aperture and oracle disagree by " << d << " at " << x.x << "," << x.y << "\n";
      ok = false;
    }
  }
  return ok;
}

// Keeps only the central (both lines smooth) part of a sine trace.
CurveTrace central_part(CurveTrace t) {
  for (auto& s : t.samples) {
    if (!s.is_gap() && s.region != SineRegion::I) s.point.reset();
  }
  return t;
}

io::SvgOptions fitted_svg(const std::vector<CurveTrace>& traces) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& t : traces) {
    for (const auto& p : t.points()) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  }
  io::SvgOptions o;
  if (hi_y > lo_y && hi_x > lo_x) o.y_zoom = (hi_x - lo_x) / (hi_y - lo_y);
  return o;
}

void write_trace(std::ostream& out, const std::string& format, const CurveTrace& t, const ConvexShape& shape) {
  if (format == "csv") {
    io::write_csv(out, t);
  } else if (format == "svg") {
    io::write_svg(out, {t}, &shape);
  } else {
    out << io::trace_to_json(t).dump(2) << '\n';
  }
}

std::string alpha_tag(std::size_t k, double alpha) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "alpha_%02zu_%.6f", k, alpha);
  return buf;
}

int cmd_trace(TraceOptions o) {
  bool central_only = false;
  if (!o.preset.empty()) {
    const Preset p = preset_by_name(o.preset);
    if (o.shape.empty()) o.shape = p.shape;
    if (o.alphas.empty()) o.alphas = p.alphas;
    central_only = p.central_only;
  }
  if (o.shape.empty()) throw Error(ErrorCode::InvalidArgument, "--shape or --preset is required");
  if (o.alphas.empty()) throw Error(ErrorCode::InvalidArgument, "--alpha or --preset is required");
  const ConvexShape shape = io::parse_shape_argument(o.shape);

  std::vector<CurveTrace> traces;
  for (double a : o.alphas) traces.push_back(trace_one(shape, a, o));

  bool ok = true;
  std::mt19937_64 rng(o.seed);
  for (const auto& t : traces) {
    if (!t.within_tolerance()) {
      std::cerr << "alpha " << t.alpha.value() << ": max residual " << t.max_residual() << " exceeds " << t.tolerance
                << "\n";
      ok = false;
    }
    if (o.verify && !verify_trace(shape, t, rng)) ok = false;
  }

  if (o.out.empty()) {
    if (traces.size() != 1) throw Error(ErrorCode::InvalidArgument, "several angles need --out DIR");
    write_trace(std::cout, o.format, central_only ? central_part(traces[0]) : traces[0], shape);
  } else if (traces.size() == 1 && std::filesystem::path(o.out).has_extension()) {
    std::ofstream f(o.out, std::ios::binary);
    write_trace(f, o.format, central_only ? central_part(traces[0]) : traces[0], shape);
  } else {
    std::filesystem::create_directories(o.out);
    std::vector<CurveTrace> shown;
    for (std::size_t k = 0; k < traces.size(); ++k) {
      shown.push_back(central_only ? central_part(traces[k]) : traces[k]);
      std::ofstream f(std::filesystem::path(o.out) / (alpha_tag(k, traces[k].alpha.value()) + "." + o.format),
                      std::ios::binary);
      write_trace(f, o.format, shown.back(), shape);
    }
    if (o.format == "svg") {
      // All curves in one picture; the central waveform parts need their own
      // vertical zoom to be visible.
      std::ofstream f(std::filesystem::path(o.out) / "family.svg", std::ios::binary);
      io::write_svg(f, shown, central_only ? nullptr : &shape, central_only ? fitted_svg(shown) : io::SvgOptions{});
    }
  }
  return ok ? 0 : kCheckFailed;
}

int cmd_aperture(const std::string& shape_arg, const std::vector<double>& xy, bool verify) {
  const ConvexShape shape = io::parse_shape_argument(shape_arg);
  const Point2 x{xy.at(0), xy.at(1)};
  const auto r = aperture(shape, x);
  if (r.inside) {
    std::cerr << "point " << x.x << "," << x.y << " lies in the shape\n";
    return kBadInput;
  }
  std::printf("angle_rad %.17g\nangle_deg %.17g\n", r.angle, r.angle * 180.0 / kPi);
  for (const auto* l : {&r.tangents->left, &r.tangents->right}) {
    std::printf("%s %s", l == &r.tangents->left ? "left" : "right", to_string(l->kind));
    if (l->kind == TangencyKind::AtInfinity) {
      std::printf(" direction %.17g %.17g\n", l->direction.x, l->direction.y);
    } else {
      std::printf(" point %.17g %.17g\n", l->point.x, l->point.y);
    }
  }
  if (std::holds_alternative<SineArch>(shape) && x.y < 0) std::printf("region %s\n", to_string(classify_sine_region(x)));
  if (verify) {
    const double o = aperture_oracle(shape, x, 100000);
    std::printf("oracle_rad %.17g\n", o);
    if (std::abs(o - r.angle) > (is_bounded(shape) ? 1e-3 : 1e-2)) return kCheckFailed;
  }
  return 0;
}

void emit_json(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream f(out, std::ios::binary);
    f << j.dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curves of constant aperture angle for planar convex sets"};
  app.require_subcommand(1);

  TraceOptions to;
  auto* trace = app.add_subcommand("trace", "trace C(alpha, Q) for one or more angles");
  trace->add_option("--shape", to.shape, "shape JSON or @file");
  trace->add_option("--alpha", to.alphas, "angles in radians")->delimiter(',');
  trace->add_option("--preset", to.preset, "fig3, fig5 or fig6")->check(CLI::IsMember({"fig3", "fig5", "fig6"}));
  trace->add_option("--method", to.method)->check(CLI::IsMember({"auto", "analytic", "newton", "bisect"}));
  trace->add_option("--samples", to.samples, "samples per curve");
  trace->add_option("--tol", to.tol, "residual tolerance");
  trace->add_option("--format", to.format)->check(CLI::IsMember({"csv", "svg", "json"}));
  trace->add_option("--out", to.out, "output file, or directory for several angles");
  trace->add_flag("--verify", to.verify, "cross-check against the sampling oracle");
  trace->add_option("--seed", to.seed, "seed for the random verification points");

  std::string ap_shape;
  std::vector<double> ap_point;
  bool ap_verify = false;
  auto* ap = app.add_subcommand("aperture", "aperture angle of a shape from a point");
  ap->add_option("--shape", ap_shape)->required();
  ap->add_option("--point", ap_point, "x,y")->delimiter(',')->expected(2)->required();
  ap->add_flag("--verify", ap_verify);

  auto* ex = app.add_subcommand("experiment", "numerical experiments");
  ex->require_subcommand(1);
  std::string ex_out;
  ex->add_option("--out", ex_out, "JSON report path (stdout if absent)");

  std::vector<double> wf_range{1.80, 2.00};
  double wf_step = 0.005;
  std::size_t wf_samples = kDefaultTangentSamples;
  auto* wf = ex->add_subcommand("waveform", "sine arch central part: concave or wave-shaped");
  wf->add_option("--range", wf_range, "lo,hi")->delimiter(',')->expected(2);
  wf->add_option("--step", wf_step);
  wf->add_option("--samples", wf_samples);

  std::vector<double> ec_range{0.60, 0.80};
  double ec_step = 0.005;
  std::size_t ec_alphas = 60;
  std::size_t ec_dirs = 720;
  auto* ec = ex->add_subcommand("ellipse-convexity", "smallest b/a with all curves convex");
  ec->add_option("--range", ec_range, "lo,hi")->delimiter(',')->expected(2);
  ec->add_option("--step", ec_step);
  ec->add_option("--alphas", ec_alphas, "number of angles in (0, pi)");
  ec->add_option("--directions", ec_dirs);

  std::string pc_shape = R"({"kind":"ellipse","a":2,"b":1})";
  double pc_alpha = kPi / 2;
  std::vector<std::size_t> pc_n{8, 16, 32, 64, 128};
  std::size_t pc_dirs = 720;
  auto* pc = ex->add_subcommand("polygon-convergence", "inscribed n-gon curves against the smooth curve");
  pc->add_option("--shape", pc_shape);
  pc->add_option("--alpha", pc_alpha);
  pc->add_option("--n", pc_n)->delimiter(',');
  pc->add_option("--directions", pc_dirs);

  CLI11_PARSE(app, argc, argv);

  try {
    if (trace->parsed()) return cmd_trace(to);
    if (ap->parsed()) return cmd_aperture(ap_shape, ap_point, ap_verify);
    if (wf->parsed()) {
      const auto r = experiments::run_waveform_experiment(wf_range[0], wf_range[1], wf_step, wf_samples);
      emit_json(r.to_json(), ex_out);
      for (const auto& row : r.rows) {
        if (row.max_residual > kDefaultTraceTolerance) return kCheckFailed;
      }
      return 0;
    }
    if (ec->parsed()) {
      emit_json(experiments::run_ellipse_convexity(ec_range[0], ec_range[1], ec_step, ec_alphas, ec_dirs).to_json(),
                ex_out);
      return 0;
    }
    if (pc->parsed()) {
      const auto r = experiments::run_polygon_convergence(io::parse_shape_argument(pc_shape), pc_alpha, pc_n, pc_dirs);
      emit_json(r.to_json(), ex_out);
      for (const auto& row : r.rows) {
        if (row.max_residual > kDefaultTraceTolerance) return kCheckFailed;
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::InvalidShape:
      case ErrorCode::PointInsideShape:
      case ErrorCode::ParameterOutOfRange:
      case ErrorCode::DegenerateAngle:
        return kBadInput;
      default:
        return kSolverFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverFailed;
  }
  return 0;
}
