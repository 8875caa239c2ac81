// Command-line front end: resonance doublets, exceptional points,
// eigenenergy-surface unfolding and monodromy for the double-barrier
// potential.

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "reso/analysis.hpp"

using nlohmann::json;
using namespace reso;

namespace {

// All numeric output carries 12 significant digits.
std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}
double sig12(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

json cplx_json(Cplx z) { return json{{"re", sig12(z.real())}, {"im", sig12(z.imag())}}; }

struct Config {
  FixedParams fixed;
  ControlPoint control;
  KWindow window{2.0, 2.4, -0.3, 0.0};
  int grid_n = 64;
  double tol = 1e-6;
  int threads = 1;

  // surface
  double surface_half_d = 0.01, surface_half_v3 = 0.002;
  int surface_n1 = 16, surface_n2 = 16;
  // section / trajectory
  double section_v3 = 1.0381;
  double section_half_d = 0.02;
  int section_n = 101;
  // loop
  double loop_radius = 0.01;
  int loop_windings = 1;
  int loop_samples = 256;
  double loop_center_d = 0.0, loop_center_v3 = 0.0;
};

void apply_json(Config& cfg, const json& j) {
  if (j.contains("potential")) {
    const auto& p = j.at("potential");
    if (p.contains("u2")) cfg.fixed.u2 = p.at("u2").get<double>();
    if (p.contains("u4")) cfg.fixed.u4 = p.at("u4").get<double>();
    if (p.contains("r1")) cfg.fixed.r1 = p.at("r1").get<double>();
    if (p.contains("w3")) cfg.fixed.w3 = p.at("w3").get<double>();
    if (p.contains("w4")) cfg.fixed.w4 = p.at("w4").get<double>();
    if (p.contains("u3_scale")) cfg.fixed.u3_scale = p.at("u3_scale").get<double>();
    if (p.contains("outer_well_sign"))
      cfg.fixed.outer_well_sign = p.at("outer_well_sign").get<double>();
  }
  if (j.contains("control")) {
    const auto& c = j.at("control");
    if (c.contains("d")) cfg.control.d = c.at("d").get<double>();
    if (c.contains("v3")) cfg.control.v3 = c.at("v3").get<double>();
  }
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (w.contains("re_min")) cfg.window.re_min = w.at("re_min").get<double>();
    if (w.contains("re_max")) cfg.window.re_max = w.at("re_max").get<double>();
    if (w.contains("im_min")) cfg.window.im_min = w.at("im_min").get<double>();
    if (w.contains("im_max")) cfg.window.im_max = w.at("im_max").get<double>();
  }
  if (j.contains("grid_n")) cfg.grid_n = j.at("grid_n").get<int>();
  if (j.contains("surface")) {
    const auto& s = j.at("surface");
    if (s.contains("half_d")) cfg.surface_half_d = s.at("half_d").get<double>();
    if (s.contains("half_v3")) cfg.surface_half_v3 = s.at("half_v3").get<double>();
    if (s.contains("n1")) cfg.surface_n1 = s.at("n1").get<int>();
    if (s.contains("n2")) cfg.surface_n2 = s.at("n2").get<int>();
  }
  if (j.contains("section")) {
    const auto& s = j.at("section");
    if (s.contains("v3")) cfg.section_v3 = s.at("v3").get<double>();
    if (s.contains("half_d")) cfg.section_half_d = s.at("half_d").get<double>();
    if (s.contains("n")) cfg.section_n = s.at("n").get<int>();
  }
  if (j.contains("loop")) {
    const auto& l = j.at("loop");
    if (l.contains("radius")) cfg.loop_radius = l.at("radius").get<double>();
    if (l.contains("windings")) cfg.loop_windings = l.at("windings").get<int>();
    if (l.contains("samples_per_turn")) cfg.loop_samples = l.at("samples_per_turn").get<int>();
    if (l.contains("center_d_offset")) cfg.loop_center_d = l.at("center_d_offset").get<double>();
    if (l.contains("center_v3_offset"))
      cfg.loop_center_v3 = l.at("center_v3_offset").get<double>();
  }
}

Config load_config(const std::string& path) {
  Config cfg;
  std::string effective = path;
  if (effective.empty()) {
    if (const char* env = std::getenv("RESO_CONFIG")) effective = env;
  }
  if (!effective.empty()) {
    std::ifstream in(effective);
    if (!in) throw std::invalid_argument("config: cannot open '" + effective + "'");
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("config: ") + e.what());
    }
    apply_json(cfg, j);
  }
  if (!cfg.fixed.valid()) throw std::invalid_argument("config: invalid fixed potential parameters");
  if (!cfg.control.valid()) throw std::invalid_argument("config: invalid control point");
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void emit_report(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text(out_path, text);
}

Doublet find_doublet(const Config& cfg) {
  PotentialProfile p{cfg.fixed, cfg.control};
  auto zeros = scan_window(p, cfg.window, cfg.grid_n);
  if (zeros.size() != 2)
    throw NonConvergence("expected an isolated doublet (found " +
                             std::to_string(zeros.size()) + " zeros)",
                         Cplx{}, 0.0);
  return Doublet{zeros[0], zeros[1], cfg.control, false};
}

struct EpBundle {
  ExceptionalPoint ep;
  EpDiagnostics diag;
  UnfoldingCoefficients coeffs;
};

EpBundle solve_ep(const Config& cfg) {
  EpBundle b{};
  b.ep = locate_ep(cfg.fixed, find_doublet(cfg));
  b.diag = verify_ep(cfg.fixed, b.ep);
  b.coeffs = compute_coefficients(cfg.fixed, b.ep);
  return b;
}

json ep_json(const EpBundle& b) {
  return json{
      {"d_star", sig12(b.ep.control_star.d)},
      {"v3_star", sig12(b.ep.control_star.v3)},
      {"k_d", cplx_json(b.ep.k_d)},
      {"residual_f", b.ep.residual_f},
      {"residual_fprime", b.ep.residual_fprime},
      {"abs_fsecond", sig12(std::abs(b.ep.second_deriv))},
      {"zero_count_circle", b.diag.zero_count_circle},
      {"figure_of_merit", b.diag.figure_of_merit},
      {"is_ep", b.diag.is_ep},
  };
}

json unfold_json(const EpBundle& b) {
  const auto& u = b.coeffs;
  json j = ep_json(b);
  j["E_d"] = cplx_json(u.E_d);
  j["c1"] = cplx_json(u.c[0]);
  j["c2"] = cplx_json(u.c[1]);
  j["d1"] = cplx_json(u.dvec[0]);
  j["d2"] = cplx_json(u.dvec[1]);
  j["C1"] = cplx_json(u.C[0]);
  j["C2"] = cplx_json(u.C[1]);
  j["Rvec"] = {sig12(u.Rvec[0]), sig12(u.Rvec[1])};
  j["Ivec"] = {sig12(u.Ivec[0]), sig12(u.Ivec[1])};
  j["xi_hat0"] = {sig12(u.xi_hat0[0]), sig12(u.xi_hat0[1])};
  CutLines cuts = cut_lines(u);
  j["cut_L_R"] = {sig12(cuts.l_r_direction[0]), sig12(cuts.l_r_direction[1])};
  j["cut_L_I"] = {sig12(cuts.l_i_direction[0]), sig12(cuts.l_i_direction[1])};
  return j;
}

int cmd_doublet(const Config& cfg, const std::string& out) {
  // An empty window is a valid (count 0) result, not an error.
  PotentialProfile p{cfg.fixed, cfg.control};
  auto zeros = scan_window(p, cfg.window, cfg.grid_n);
  json arr = json::array();
  for (Cplx z : zeros) arr.push_back(cplx_json(z));
  json j{{"count", zeros.size()},
         {"control", {{"d", sig12(cfg.control.d)}, {"v3", sig12(cfg.control.v3)}}},
         {"zeros", arr}};
  emit_report(j, out);
  return 0;
}

int cmd_ep(const Config& cfg, const std::string& out) {
  emit_report(ep_json(solve_ep(cfg)), out);
  return 0;
}

int cmd_unfold(const Config& cfg, const std::string& out) {
  emit_report(unfold_json(solve_ep(cfg)), out);
  return 0;
}

int cmd_surface(const Config& cfg, const std::string& out) {
  EpBundle b = solve_ep(cfg);
  auto grid = surface_scan(cfg.fixed, b.ep, b.coeffs, cfg.surface_half_d, cfg.surface_half_v3,
                           cfg.surface_n1, cfg.surface_n2, cfg.threads);
  std::ostringstream csv;
  csv << "d,v3,re_k1,im_k1,re_k2,im_k2,re_khat1,im_khat1,re_khat2,im_khat2\n";
  for (const auto& s : grid) {
    if (!s.ok) continue;
    csv << fmt12(s.control.d) << ',' << fmt12(s.control.v3) << ',' << fmt12(s.k1.real()) << ','
        << fmt12(s.k1.imag()) << ',' << fmt12(s.k2.real()) << ',' << fmt12(s.k2.imag()) << ','
        << fmt12(s.khat1.real()) << ',' << fmt12(s.khat1.imag()) << ',' << fmt12(s.khat2.real())
        << ',' << fmt12(s.khat2.imag()) << '\n';
  }
  if (out.empty())
    std::cout << csv.str();
  else
    write_text(out, csv.str());
  return 0;
}

SectionResult run_section(const Config& cfg, const EpBundle& b) {
  double d0 = b.ep.control_star.d;
  return section(cfg.fixed, b.ep, b.coeffs, cfg.section_v3, d0 - cfg.section_half_d,
                 d0 + cfg.section_half_d, cfg.section_n);
}

int cmd_section(const Config& cfg, const std::string& out) {
  EpBundle b = solve_ep(cfg);
  SectionResult sec = run_section(cfg, b);
  std::ostringstream csv;
  csv << "d,v3,re_E1,im_E1,re_E2,im_E2,dE,dGamma,re_Ehat1,im_Ehat1,re_Ehat2,im_Ehat2\n";
  for (const auto& s : sec.sweep) {
    csv << fmt12(s.d) << ',' << fmt12(s.v3) << ',' << fmt12(s.E1.real()) << ','
        << fmt12(s.E1.imag()) << ',' << fmt12(s.E2.real()) << ',' << fmt12(s.E2.imag()) << ','
        << fmt12(s.dE) << ',' << fmt12(s.dGamma) << ',' << fmt12(s.Ehat1.real()) << ','
        << fmt12(s.Ehat1.imag()) << ',' << fmt12(s.Ehat2.real()) << ',' << fmt12(s.Ehat2.imag())
        << '\n';
  }
  if (!out.empty()) write_text(out, csv.str());
  json j{{"v3", sig12(sec.fixed_v3)},
         {"classification", to_string(sec.classification)},
         {"crossing_d", sig12(sec.crossing_d)},
         {"r_dot_xi_c", sec.r_dot_xi_c}};
  std::cout << j.dump(2) << '\n';
  if (out.empty()) std::cout << csv.str();
  return 0;
}

int cmd_trajectory(const Config& cfg, const std::string& out) {
  EpBundle b = solve_ep(cfg);
  SectionResult sec = run_section(cfg, b);
  TrajectoryResult tr = pole_trajectory(sec, b.coeffs);
  std::ostringstream csv;
  csv << "step,re_E,im_E,branch_label\n";
  for (const auto& pt : tr.points)
    csv << pt.step << ',' << fmt12(pt.E.real()) << ',' << fmt12(pt.E.imag()) << ',' << pt.branch
        << '\n';
  if (!out.empty()) write_text(out, csv.str());
  json j{{"type", to_string(tr.type)},
         {"cot_phi1", sig12(tr.cot_phi1)},
         {"asymptote_slopes", {sig12(tr.asymptote_slope_1), sig12(tr.asymptote_slope_2)}},
         {"degenerate_fit", tr.degenerate_fit}};
  if (!tr.degenerate_fit)
    j["conic_fit"] = {{"B", sig12(tr.fit_B)}, {"C", sig12(tr.fit_C)}, {"D", sig12(tr.fit_D)}};
  std::cout << j.dump(2) << '\n';
  if (out.empty()) std::cout << csv.str();
  return 0;
}

int cmd_loop(const Config& cfg, const std::string& out) {
  EpBundle b = solve_ep(cfg);
  LoopResult lr = encircle(cfg.fixed, b.ep, b.coeffs, cfg.loop_radius, cfg.loop_windings,
                           cfg.loop_samples, XiPoint{cfg.loop_center_d, cfg.loop_center_v3});
  if (!out.empty()) {
    std::ostringstream csv;
    csv << "turn_fraction,d,v3,re_ka,im_ka,re_kb,im_kb\n";
    for (const auto& s : lr.path)
      csv << fmt12(s.turn_fraction) << ',' << fmt12(s.control.d) << ',' << fmt12(s.control.v3)
          << ',' << fmt12(s.ka.real()) << ',' << fmt12(s.ka.imag()) << ',' << fmt12(s.kb.real())
          << ',' << fmt12(s.kb.imag()) << '\n';
    write_text(out, csv.str());
  }
  json j{{"windings", lr.windings},
         {"permutation", lr.permutation == LoopPermutation::Swap ? "swap" : "identity"},
         {"max_residual", lr.max_residual}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// validate: the composite invariant suite.

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

int cmd_validate(const Config& cfg, const std::string& out) {
  std::vector<Check> checks;
  auto add = [&](std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  };
  PotentialProfile p{cfg.fixed, cfg.control};
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  // S-matrix unitarity on a real-k sweep.
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      double k = 0.1 + (5.0 - 0.1) * (i + 0.5) / 200.0;
      worst = std::max(worst, std::abs(std::abs(s_matrix(p, k).s) - 1.0));
    }
    add("unitarity |S|=1", worst < 1e-12, "max deviation " + fmt12(worst));
  }

  // Doublet window: scan count vs argument principle.
  Doublet doub{};
  bool have_doublet = false;
  {
    auto zeros = scan_window(p, cfg.window, cfg.grid_n);
    int ap = argument_principle_count(p, cfg.window);
    bool ok = static_cast<int>(zeros.size()) == ap;
    add("scan count = winding number", ok,
        "scan " + std::to_string(zeros.size()) + ", contour " + std::to_string(ap));
    if (zeros.size() == 2) {
      doub = Doublet{zeros[0], zeros[1], cfg.control, false};
      have_doublet = true;
    }
    // Mirror symmetry: -conj(k) is also a zero.
    bool mirror_ok = true;
    for (Cplx z : zeros) {
      PotentialProfile pm = p;
      try {
        Cplx zm = polish_zero(pm, -std::conj(z));
        if (std::abs(zm + std::conj(z)) > 1e-8) mirror_ok = false;
      } catch (const std::runtime_error&) {
        mirror_ok = false;
      }
    }
    add("zero mirror symmetry", mirror_ok, std::to_string(zeros.size()) + " zeros checked");
  }

  // Analytic f' against Richardson-extrapolated central differences.
  {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      Cplx k(0.7 + 2.0 * u01(rng), -0.3 * u01(rng) - 0.01);
      Cplx fp = jost_value_and_derivative(p, k).second;
      auto fd = [&](double h) {
        return (jost_function(p, k + h) - jost_function(p, k - h)) / (2.0 * h);
      };
      Cplx d1 = fd(1e-4), d2 = fd(5e-5);
      Cplx rich = (4.0 * d2 - d1) / 3.0;
      worst = std::max(worst, std::abs(fp - rich) / std::abs(rich));
    }
    add("analytic f' vs finite differences", worst < 1e-8, "max rel " + fmt12(worst));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      Cplx k(0.7 + 2.0 * u01(rng), -0.3 * u01(rng) - 0.01);
      auto pd = jost_param_derivatives(p, k);
      double h = 1e-5;
      PotentialProfile pp = p, pm = p;
      pp.control.d += h;
      pm.control.d -= h;
      Cplx fd_d = (jost_function(pp, k) - jost_function(pm, k)) / (2.0 * h);
      worst = std::max(worst, std::abs(pd.df_dd - fd_d) / std::abs(fd_d));
      pp = pm = p;
      pp.control.v3 += h;
      pm.control.v3 -= h;
      Cplx fd_v = (jost_function(pp, k) - jost_function(pm, k)) / (2.0 * h);
      worst = std::max(worst, std::abs(pd.df_dv3 - fd_v) / std::abs(fd_v));
    }
    add("parameter partials vs finite differences", worst < 1e-7, "max rel " + fmt12(worst));
  }

  // branch_sqrt involution.
  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Cplx F(2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0);
      Cplx r = branch_sqrt(F);
      worst = std::max(worst, std::abs(r * r - F));
    }
    add("branch_sqrt(F)^2 = F", worst < 1e-12, "max abs " + fmt12(worst));
  }

  if (have_doublet) {
    try {
      EpBundle b;
      b.ep = locate_ep(cfg.fixed, doub);
      b.diag = verify_ep(cfg.fixed, b.ep);
      b.coeffs = compute_coefficients(cfg.fixed, b.ep);
      add("EP residuals", b.diag.is_ep,
          "|f| " + fmt12(b.diag.abs_f) + ", |f'| " + fmt12(b.diag.abs_fprime));
      add("EP zero count on circle", b.diag.zero_count_circle == 2,
          std::to_string(b.diag.zero_count_circle));
      add("EP figure of merit < 1e-8", b.diag.figure_of_merit < 1e-8,
          fmt12(b.diag.figure_of_merit));

      // Coefficient fidelity against exact doublets at radius 1e-4.
      constexpr int npts = 20;
      Eigen::MatrixXd A(npts, 2);
      Eigen::VectorXcd bg(npts), bm(npts);
      for (int i = 0; i < npts; ++i) {
        double th = 2.0 * std::numbers::pi * i / npts;
        XiPoint xi{1e-4 * std::cos(th), 1e-4 * std::sin(th)};
        Doublet dd = doublet_at(cfg.fixed, b.coeffs, b.ep.control_star, xi);
        A(i, 0) = xi.xi1;
        A(i, 1) = xi.xi2;
        bg(i) = (dd.k1 - dd.k2) * (dd.k1 - dd.k2);
        bm(i) = dd.midpoint() - b.ep.k_d;
      }
      auto lstsq2 = [&](const Eigen::VectorXcd& rhs) {
        Eigen::VectorXd re = A.colPivHouseholderQr().solve(rhs.real().eval());
        Eigen::VectorXd im = A.colPivHouseholderQr().solve(rhs.imag().eval());
        return std::array<Cplx, 2>{Cplx(re(0), im(0)), Cplx(re(1), im(1))};
      };
      auto cf = lstsq2(bg);
      auto df = lstsq2(bm);
      double cerr = std::max(std::abs(cf[0] - b.coeffs.c[0]) / std::abs(b.coeffs.c[0]),
                             std::abs(cf[1] - b.coeffs.c[1]) / std::abs(b.coeffs.c[1]));
      double derr = std::max(std::abs(df[0] - b.coeffs.dvec[0]) / std::abs(b.coeffs.dvec[0]),
                             std::abs(df[1] - b.coeffs.dvec[1]) / std::abs(b.coeffs.dvec[1]));
      add("c coefficients vs doublet fit (1%)", cerr < 1e-2, "max rel " + fmt12(cerr));
      add("d coefficients vs doublet fit (1%)", derr < 1e-2, "max rel " + fmt12(derr));

      // Approximant identities.
      double worst = 0.0;
      for (int i = 0; i < 1000; ++i) {
        double r = 1e-2 * u01(rng), th = 2.0 * std::numbers::pi * u01(rng);
        XiPoint xi{r * std::cos(th), r * std::sin(th)};
        ContactEnergy ce = contact_energy(b.coeffs, xi);
        double dE = 2.0 * ce.re_eps, dG = -4.0 * ce.im_eps;
        double lhs1 = dE * dE - 0.25 * dG * dG, rhs1 = b.coeffs.R_dot(xi);
        double lhs2 = dE * dG, rhs2 = -b.coeffs.I_dot(xi);
        double scale = std::abs(b.coeffs.C_dot(xi)) + 1e-300;
        worst = std::max({worst, std::abs(lhs1 - rhs1) / scale, std::abs(lhs2 - rhs2) / scale});
      }
      add("approximant energy/width identities", worst < 1e-12, "max rel " + fmt12(worst));

      // Seams along +/- xi_hat0 at radius 1e-3.
      XiPoint plus{1e-3 * b.coeffs.xi_hat0[0], 1e-3 * b.coeffs.xi_hat0[1]};
      XiPoint minus{-plus.xi1, -plus.xi2};
      Doublet dp = doublet_at(cfg.fixed, b.coeffs, b.ep.control_star, plus);
      Doublet dm = doublet_at(cfg.fixed, b.coeffs, b.ep.control_star, minus);
      double seam_tol = 1e-6 * std::abs(b.ep.k_d);
      bool seam_r = std::abs(dp.k1.real() - dp.k2.real()) < seam_tol &&
                    std::abs(dp.k1.imag() - dp.k2.imag()) > 1e-4;
      bool seam_i = std::abs(dm.k1.imag() - dm.k2.imag()) < seam_tol &&
                    std::abs(dm.k1.real() - dm.k2.real()) > 1e-4;
      add("L_R seam along +xi_hat0", seam_r,
          "dRe " + fmt12(std::abs(dp.k1.real() - dp.k2.real())));
      add("L_I seam along -xi_hat0", seam_i,
          "dIm " + fmt12(std::abs(dm.k1.imag() - dm.k2.imag())));
    } catch (const std::runtime_error& e) {
      add("EP pipeline", false, e.what());
    }
  } else {
    add("EP pipeline", false, "no doublet in window");
  }

  bool all = true;
  std::ostringstream table;
  for (const auto& c : checks) {
    all = all && c.pass;
    table << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  (" << c.detail << ")\n";
  }
  std::cout << table.str();
  std::cout << (all ? "all checks passed" : "validation FAILED") << '\n';
  if (!out.empty()) write_text(out, table.str());
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance doublets, exceptional points and eigenenergy-surface unfolding "
               "for a double-barrier potential"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  int threads = 1;
  double tol = 1e-6;
  app.add_option("--config", config_path, "JSON configuration file")->envname("RESO_CONFIG");
  app.add_option("--out", out_path, "output file (JSON report or CSV)");
  app.add_option("--threads", threads, "worker threads for grid jobs");
  app.add_option("--tol", tol, "tolerance override for comparisons");

  // Per-subcommand overrides of the most common config fields.
  double opt_d = -1, opt_v3 = -1;
  for (const char* name : {"doublet", "ep", "unfold", "surface", "section", "trajectory",
                           "loop", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();  // let the global --config/--out/--threads/--tol follow the subcommand
    sub->add_option("--d", opt_d, "inner-barrier thickness override");
    sub->add_option("--v3", opt_v3, "outer-well parameter override");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Config cfg;
  try {
    cfg = load_config(config_path);
    cfg.threads = threads;
    cfg.tol = tol;
    if (opt_d > 0) cfg.control.d = opt_d;
    if (opt_v3 > 0) cfg.control.v3 = opt_v3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "doublet") return cmd_doublet(cfg, out_path);
    if (sub == "ep") return cmd_ep(cfg, out_path);
    if (sub == "unfold") return cmd_unfold(cfg, out_path);
    if (sub == "surface") return cmd_surface(cfg, out_path);
    if (sub == "section") return cmd_section(cfg, out_path);
    if (sub == "trajectory") return cmd_trajectory(cfg, out_path);
    if (sub == "loop") return cmd_loop(cfg, out_path);
    if (sub == "validate") return cmd_validate(cfg, out_path);
    std::cerr << "error: unknown subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 1;
  }
}
