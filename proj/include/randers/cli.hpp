#pragma once
// Command-line front end. Five commands over one loading layer:
//   report   — sampled curvature/torsion report for a metric
//   screen   — necessary-condition verdict with fitted c / lambda
//   verify   — cross-path identity suite (every quantity that has two
//              independent computation routes is compared)
//   geodesic — RK4 trace as CSV
//   catalog  — list built-in metrics
// All documents are deterministic for a fixed configuration (seeded sampling,
// fixed key order, 17-significant-digit numbers) and written atomically.
// Exit codes: 0 pass, 1 fail, 2 input error, 3 not applicable, 4 inconclusive.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "randers/catalog.hpp"
#include "randers/jsonout.hpp"
#include "randers/screener.hpp"

namespace randers {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNotApplicable = 3;
inline constexpr int kExitInconclusive = 4;

struct RunConfig {
  std::string command;
  std::string spec_path;     // --spec: metric file, or
  std::string catalog_name;  // --catalog: built-in entry
  double K = 4.0;            // catalog curvature parameter
  double q = 0.3;            // catalog drift strength
  std::string sign = "+";    // catalog drift sign
  int points = 5;
  int flags = 16;
  std::uint64_t seed = 0;
  std::string backend_name = "dual";
  std::string out_path;      // empty: stdout
  double tol = 0;            // screening pass threshold override (0: default)
  Vec<double> x0, y0;        // geodesic start
  double T = 1.0;
  double h = 1e-3;

  Backend backend() const {
    return backend_name == "fd" ? Backend::fd : Backend::dual;
  }
};

namespace detail {

struct LoadedInput {
  bool frame = false;
  MetricSpec spec;    // set when !frame
  FrameSpace space;   // set when frame
  std::string label;
};

inline LoadedInput load_input(const RunConfig& cfg) {
  if (cfg.spec_path.empty() == cfg.catalog_name.empty())
    throw Error("exactly one of --spec and --catalog is required");
  LoadedInput in;
  if (!cfg.spec_path.empty()) {
    std::ifstream f(cfg.spec_path, std::ios::binary);
    if (!f) throw Error("cannot open spec file: " + cfg.spec_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    in.spec = load_metric_spec(ss.str());
    in.label = in.spec.name;
  } else {
    CatalogParams p;
    p.K = cfg.K;
    p.q = cfg.q;
    p.sign = cfg.sign == "-" ? -1 : +1;
    p.seed = cfg.seed;
    CatalogEntry e = catalog_entry(cfg.catalog_name, p);
    in.frame = e.frame;
    in.spec = std::move(e.spec);
    in.space = std::move(e.space);
    in.label = e.name;
  }
  return in;
}

inline const MetricSpec& coordinate_spec(const LoadedInput& in) {
  if (in.frame)
    throw Error("this catalog entry is frame-based and supports only the "
                "screen command; use its coordinate-chart twin instead");
  return in.spec;
}

inline Json doc_header(const RunConfig& cfg, const std::string& label, int n) {
  Json d = Json::object();
  d["schema"] = "randers-lab/1";
  d["command"] = cfg.command;
  d["metric"] = label;
  d["n"] = n;
  d["backend"] = cfg.backend_name;
  d["seed"] = cfg.seed;
  d["points"] = cfg.points;
  d["flags"] = cfg.flags;
  return d;
}

inline void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_text_atomic(cfg.out_path, text);
  }
}

inline Vec<Point> sample_points(const MetricSpec& spec, const RunConfig& cfg) {
  Rng rng(cfg.seed);
  Vec<Point> xs;
  for (int i = 0; i < cfg.points; ++i)
    xs.push_back(rng.box_point(spec.domain, 0.25));
  return xs;
}

}  // namespace detail

// ==== report ====================================================================

inline int cmd_report(const RunConfig& cfg) {
  detail::LoadedInput in = detail::load_input(cfg);
  const MetricSpec& spec = detail::coordinate_spec(in);
  const int n = spec.n;
  const Backend bk = cfg.backend();
  if (cfg.points < 1) throw Error("--points must be at least 1");

  Vec<Point> xs = detail::sample_points(spec, cfg);
  Rng dir_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  Json doc = detail::doc_header(cfg, in.label, n);
  doc["killing_residual"] = killing_residual(spec, xs, bk);

  double k_acc = 0, kvar_max = 0;
  Json pts = Json::array();
  for (const Point& x : xs) {
    AlphaData al = alpha_at(spec, x, bk);
    BetaData be = beta_at(spec, x, al, bk);
    Vec<double> y = dir_rng.unit_vector(n);

    Json P = Json::object();
    P["x"] = x;
    P["y"] = y;

    Json A = Json::object();
    A["det_a"] = al.det_a;
    double scal = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) scal += al.a_inv(i, j) * al.ricci(i, j);
    A["scalar_curvature"] = scal;
    P["alpha"] = A;

    Json B = Json::object();
    B["b_norm"] = std::sqrt(be.b2);
    B["r_norm"] = frob_norm(be.r);
    B["s_norm"] = frob_norm(be.s);
    B["t_norm"] = frob_norm(be.t);
    B["div_s_norm"] = norm2(be.div_s);
    P["beta"] = B;

    FlagStatistics fs = scalar_flag_variance(spec, x, y, cfg.flags, cfg.seed, bk);
    P["flag_curvature_mean"] = fs.mean;
    P["flag_curvature_variance"] = fs.variance;
    P["scalar_flag_residual"] = fs.residual;

    SCurvature sv = s_curvature(spec, x, y, bk);
    P["s_curvature"] = sv.S;
    P["s_curvature_definition"] = sv.S_definition;
    P["distortion"] = sv.tau;
    P["bh_density"] = sv.sigma_bh;

    P["mean_cartan_norm"] = norm2(mean_cartan(spec, x, y, bk));
    MeanLandsberg ml = mean_landsberg(spec, x, y, bk);
    P["mean_landsberg_norm"] = norm2(ml.J);
    P["j_bar"] = ml.J_bar;

    k_acc += fs.mean;
    kvar_max = std::max(kvar_max, fs.variance);
    pts.push_back(std::move(P));
  }
  doc["flag_curvature_mean"] = k_acc / cfg.points;
  doc["flag_curvature_variance_max"] = kvar_max;
  doc["points_data"] = std::move(pts);

  detail::emit(cfg, dump_document(doc));
  return kExitPass;
}

// ==== screen ====================================================================

inline int cmd_screen(const RunConfig& cfg) {
  detail::LoadedInput in = detail::load_input(cfg);
  ScreenerReport rep;
  int n;
  if (in.frame) {
    rep = screen_frame(in.space);
    n = in.space.n;
  } else {
    ScreenPlan plan;
    plan.points = cfg.points;
    plan.flags = cfg.flags;
    plan.seed = cfg.seed;
    plan.backend = cfg.backend();
    if (cfg.tol > 0) {
      plan.pass_tol = cfg.tol;
      plan.fail_tol = std::max(plan.fail_tol, plan.pass_tol);
    }
    rep = screen(in.spec, plan);
    n = in.spec.n;
  }

  Json doc = detail::doc_header(cfg, in.label, n);
  doc["verdict"] = to_string(rep.verdict);
  doc["failed"] = rep.failed;
  doc["reason"] = rep.reason;
  doc["witness"] = rep.witness;
  doc["killing_residual"] = rep.killing;
  if (rep.points.empty()) {
    doc["c"] = nullptr;
    doc["lambda"] = nullptr;
    doc["kappa"] = nullptr;
  } else {
    double c_acc = 0, l_acc = 0, kap_acc = 0;
    int kap_n = 0;
    for (const PointScreen& p : rep.points) {
      c_acc += p.c.value;
      l_acc += p.lambda.value;
      if (p.extended) {
        kap_acc += p.kappa.value;
        ++kap_n;
      }
    }
    doc["c"] = c_acc / static_cast<double>(rep.points.size());
    doc["lambda"] = l_acc / static_cast<double>(rep.points.size());
    if (kap_n > 0)
      doc["kappa"] = kap_acc / kap_n;
    else
      doc["kappa"] = nullptr;
  }
  doc["flag_variance_max"] = rep.flag_variance_max;

  Json pts = Json::array();
  for (const PointScreen& p : rep.points) {
    Json P = Json::object();
    P["x"] = p.x;
    P["c"] = p.c.value;
    P["c_residual"] = p.c.residual;
    P["divergence_residual"] = p.div_residual;
    P["lambda"] = p.lambda.value;
    P["lambda_residual"] = p.lambda.residual;
    P["lambda_ricci"] = p.lambda_ricci.value;
    P["lambda_ricci_residual"] = p.lambda_ricci.residual;
    P["lambda_gap"] = p.lambda_gap;
    if (p.extended) {
      P["kappa"] = p.kappa.value;
      P["kappa_residual"] = p.kappa.residual;
      P["xi_cubic_residual"] = p.xi.cubic;
      P["xi_quadratic_residual"] = p.xi.quadratic;
      P["flag_variance"] = p.flag_variance;
    }
    pts.push_back(std::move(P));
  }
  doc["points_data"] = std::move(pts);

  detail::emit(cfg, dump_document(doc));
  switch (rep.verdict) {
    case Verdict::necessary_pass: return kExitPass;
    case Verdict::fail: return kExitFail;
    case Verdict::not_applicable: return kExitNotApplicable;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

// ==== verify ====================================================================

namespace detail {

struct CheckRow {
  std::string name;
  bool applicable = true;
  double residual = 0;
  double tol = 0;
};

inline void add_check(Vec<CheckRow>& rows, const std::string& name,
                      double residual, double tol) {
  rows.push_back({name, true, residual, tol});
}

inline void add_na(Vec<CheckRow>& rows, const std::string& name, double tol) {
  rows.push_back({name, false, 0, tol});
}

}  // namespace detail

inline int cmd_verify(const RunConfig& cfg) {
  detail::LoadedInput in = detail::load_input(cfg);
  const MetricSpec& spec = detail::coordinate_spec(in);
  const int n = spec.n;
  const Backend bk = cfg.backend();
  if (cfg.points < 1) throw Error("--points must be at least 1");

  Vec<Point> xs = detail::sample_points(spec, cfg);
  Rng dir_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  Vec<Vec<double>> ys;
  for (size_t i = 0; i < xs.size(); ++i) ys.push_back(dir_rng.unit_vector(n));

  const double killing = killing_residual(spec, xs, bk);
  const bool killing_ok = killing < 1e-8;

  Vec<detail::CheckRow> checks;

  // Divergence of the drift deformation against the curvature contraction —
  // an unconditional identity, so it must hold on every valid input.
  {
    double r = 0;
    Rng rng(cfg.seed + 1);
    for (const Point& x : xs)
      for (int k = 0; k < 3; ++k)
        r = std::max(r, prop41_residual(spec, x, rng.unit_vector(n), bk));
    detail::add_check(checks, "s_divergence_ricci_identity", r, 1e-6);
  }

  // Fundamental tensor: jet route vs closed form.
  {
    double r = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      detail::Ingredients ing = detail::ingredients(spec, xs[i], ys[i], bk);
      FundamentalTensor ft = detail::fundamental_with(spec, ing, xs[i], ys[i], bk);
      Mat<double> gc = detail::g_closed(ing);
      double gap = 0, scale = 0;
      for (size_t k = 0; k < ft.g.a.size(); ++k) {
        gap = std::max(gap, std::abs(ft.g.a[k] - gc.a[k]));
        scale = std::max(scale, std::abs(ft.g.a[k]));
      }
      r = std::max(r, gap / (1 + scale));
    }
    detail::add_check(checks, "fundamental_tensor_paths", r, 1e-8);
  }

  // Spray: generic jet route vs drift-deformation closed form.
  {
    double r = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      detail::Ingredients ing = detail::ingredients(spec, xs[i], ys[i], bk);
      SprayCoefficients sp = spray(spec, xs[i], ys[i], bk);
      Vec<double> gc = detail::spray_closed(ing, sp.G_bar);
      r = std::max(r, detail::max_abs_gap(sp.G, gc) /
                          (1 + detail::max_abs_of(sp.G)));
    }
    detail::add_check(checks, "spray_paths", r, 1e-8);
  }

  // Nonlinear connection: jet route vs the Killing-drift closed form.
  if (killing_ok) {
    double r = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      detail::Ingredients ing = detail::ingredients(spec, xs[i], ys[i], bk);
      SprayCurvature sc = spray_curvature(spec, xs[i], ys[i], bk);
      Mat<double> nc = detail::connection_closed_killing(ing, sc.N_bar);
      double gap = 0, scale = 0;
      for (size_t k = 0; k < sc.N.a.size(); ++k) {
        gap = std::max(gap, std::abs(sc.N.a[k] - nc.a[k]));
        scale = std::max(scale, std::abs(sc.N.a[k]));
      }
      r = std::max(r, gap / (1 + scale));
    }
    detail::add_check(checks, "connection_killing_paths", r, 1e-6);
  } else {
    detail::add_na(checks, "connection_killing_paths", 1e-6);
  }

  // Mean Cartan torsion: closed form vs the y-gradient of the distortion.
  {
    double r = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      const Point& x = xs[i];
      SmoothMap half_log_det;
      half_log_det.in_dim = n;
      half_log_det.out_dim = 1;
      half_log_det.f0 = [&spec, &x](std::span<const D0> zs, std::span<D0> out) {
        Vec<double> yt(zs.begin(), zs.end());
        out[0] = 0.5 * std::log(fundamental_tensor(spec, x, yt,
                                                   Backend::dual).det_g);
      };
      JetTable jt = evaluate_jet(half_log_det, ys[i], 1, Backend::fd);
      Vec<double> I = mean_cartan(spec, x, ys[i], bk);
      double gap = 0;
      for (int k = 0; k < n; ++k)
        gap = std::max(gap, std::abs(I[static_cast<size_t>(k)] - jt.d1(0, k)));
      r = std::max(r, gap / (1 + norm2(I)));
    }
    detail::add_check(checks, "mean_cartan_paths", r, 1e-6);
  }

  // S-curvature: drift closed form vs connection-trace definition.
  {
    double r = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      SCurvature sv = s_curvature(spec, xs[i], ys[i], bk);
      r = std::max(r, std::abs(sv.S - sv.S_definition) / (1 + std::abs(sv.S)));
    }
    detail::add_check(checks, "s_curvature_paths", r, 1e-6);
  }

  // Drift-contracted mean Landsberg curvature vs its Killing closed form.
  if (killing_ok) {
    double r = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      AlphaData al = alpha_at(spec, xs[i], bk);
      BetaData be = beta_at(spec, xs[i], al, bk);
      DirectionalContractions c = contract_with_y(be, al, ys[i]);
      MeanLandsberg ml = mean_landsberg(spec, xs[i], ys[i], bk);
      const double s = c.s_ratio, one_s = 1 + s;
      double closed = (n + 1) * (1 + 3 * s + be.b2 + s * s) * c.s0 /
                      (2 * c.alpha * one_s * one_s);
      r = std::max(r, std::abs(ml.J_bar - closed) / (1 + std::abs(closed)));
    }
    detail::add_check(checks, "landsberg_drift_paths", r, 1e-6);
  } else {
    detail::add_na(checks, "landsberg_drift_paths", 1e-6);
  }

  // Transport balance between mean Landsberg and mean Cartan curvatures.
  // Claimed only where the flag curvature is scalar and y-flat; checked at
  // the first sample point (the field derivative is the costly part).
  {
    const Point& x = xs[0];
    const Vec<double>& y = ys[0];
    FlagStatistics fs = scalar_flag_variance(spec, x, y, cfg.flags, cfg.seed, bk);
    bool flat_k = fs.variance < 1e-8;
    if (flat_k)
      flat_k = norm2(flag_curvature_gradient(spec, x, y, cfg.flags, cfg.seed,
                                             bk)) < 1e-4;
    if (flat_k) {
      SmoothMap jf;
      jf.in_dim = 2 * n;
      jf.out_dim = n;
      jf.f0 = [&spec, n](std::span<const D0> zs, std::span<D0> out) {
        Point xt(zs.begin(), zs.begin() + n);
        Vec<double> yt(zs.begin() + n, zs.end());
        MeanLandsberg ml = mean_landsberg(spec, xt, yt);
        for (int k = 0; k < n; ++k) out[static_cast<size_t>(k)] = ml.J[static_cast<size_t>(k)];
      };
      Vec<double> Jt = horizontal_derivative_along_y(spec, x, y, jf, true,
                                                     Backend::fd, bk);
      Vec<double> I = mean_cartan(spec, x, y, bk);
      FundamentalTensor ft = fundamental_tensor(spec, x, y, bk);
      double gap = 0, scale = 0;
      for (int k = 0; k < n; ++k) {
        double rhs = fs.mean * ft.F * ft.F * I[static_cast<size_t>(k)];
        gap = std::max(gap, std::abs(Jt[static_cast<size_t>(k)] + rhs));
        scale = std::max(scale, std::abs(rhs));
      }
      detail::add_check(checks, "landsberg_cartan_transport", gap / (1 + scale),
                        1e-5);
    } else {
      detail::add_na(checks, "landsberg_cartan_transport", 1e-5);
    }
  }

  // Scalar-flag contraction identities at the first sample point.
  {
    bool applicable = true;
    ScalarFlagIdentities lr;
    try {
      lr = scalar_flag_identities(spec, xs[0], ys[0], cfg.flags, cfg.seed, bk);
    } catch (const DomainError&) {
      applicable = false;
    }
    if (applicable) {
      detail::add_check(checks, "ricci_split", lr.ricci_split, 1e-5);
      detail::add_check(checks, "s_transport", lr.s_transport, 1e-5);
      detail::add_check(checks, "j_transport", lr.j_transport, 1e-5);
    } else {
      detail::add_na(checks, "ricci_split", 1e-5);
      detail::add_na(checks, "s_transport", 1e-5);
      detail::add_na(checks, "j_transport", 1e-5);
    }
  }

  // Positive homogeneity in y: degrees 1, 2, 2, 2, 1, -1, 0 for
  // F, G, R, Ric, S, I, J under y -> 2y.
  {
    double r = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      const Point& x = xs[i];
      Vec<double> y2 = ys[i];
      for (double& v : y2) v *= 2;
      SprayCurvature s1 = spray_curvature(spec, x, ys[i], bk);
      SprayCurvature s2 = spray_curvature(spec, x, y2, bk);
      auto rel = [&r](double got, double want) {
        r = std::max(r, std::abs(got - want) / (1 + std::abs(want)));
      };
      rel(s2.F, 2 * s1.F);
      for (int k = 0; k < n; ++k) {
        rel(s2.G[static_cast<size_t>(k)], 4 * s1.G[static_cast<size_t>(k)]);
        for (int l = 0; l < n; ++l) rel(s2.R(k, l), 4 * s1.R(k, l));
      }
      rel(s2.ric, 4 * s1.ric);
      rel(s_curvature(spec, x, y2, bk).S, 2 * s_curvature(spec, x, ys[i], bk).S);
      Vec<double> i1 = mean_cartan(spec, x, ys[i], bk);
      Vec<double> i2 = mean_cartan(spec, x, y2, bk);
      Vec<double> j1 = mean_landsberg(spec, x, ys[i], bk).J;
      Vec<double> j2 = mean_landsberg(spec, x, y2, bk).J;
      for (int k = 0; k < n; ++k) {
        rel(i2[static_cast<size_t>(k)], 0.5 * i1[static_cast<size_t>(k)]);
        rel(j2[static_cast<size_t>(k)], j1[static_cast<size_t>(k)]);
      }
    }
    detail::add_check(checks, "homogeneity", r, 1e-8);
  }

  Json doc = detail::doc_header(cfg, in.label, n);
  doc["killing_residual"] = killing;
  bool all_pass = true;
  Json rows = Json::array();
  for (const detail::CheckRow& c : checks) {
    Json row = Json::object();
    row["name"] = c.name;
    if (!c.applicable) {
      row["status"] = "NOT_APPLICABLE";
      row["residual"] = nullptr;
    } else if (c.residual < c.tol) {
      row["status"] = "PASS";
      row["residual"] = c.residual;
    } else {
      row["status"] = "FAIL";
      row["residual"] = c.residual;
      all_pass = false;
    }
    row["tolerance"] = c.tol;
    rows.push_back(std::move(row));
  }
  doc["status"] = all_pass ? "PASS" : "FAIL";
  doc["checks"] = std::move(rows);

  detail::emit(cfg, dump_document(doc));
  return all_pass ? kExitPass : kExitFail;
}

// ==== geodesic ==================================================================

inline int cmd_geodesic(const RunConfig& cfg) {
  detail::LoadedInput in = detail::load_input(cfg);
  const MetricSpec& spec = detail::coordinate_spec(in);
  const int n = spec.n;
  if (cfg.x0.size() != static_cast<size_t>(n) ||
      cfg.y0.size() != static_cast<size_t>(n))
    throw Error("--x0 and --y0 must have " + std::to_string(n) + " components");

  GeodesicTrace tr = geodesic_trace(spec, cfg.x0, cfg.y0, cfg.T, cfg.h);

  std::string csv = "t";
  for (int i = 1; i <= n; ++i) csv += ",x" + std::to_string(i);
  for (int i = 1; i <= n; ++i) csv += ",y" + std::to_string(i);
  csv += ",F\n";
  for (const GeodesicSample& s : tr.samples) {
    csv += detail::json_number(s.t);
    for (double v : s.x) csv += "," + detail::json_number(v);
    for (double v : s.y) csv += "," + detail::json_number(v);
    csv += "," + detail::json_number(s.F) + "\n";
  }
  if (tr.exited)
    std::fprintf(stderr, "note: trajectory left the domain at t = %s\n",
                 detail::json_number(tr.exit_time).c_str());

  detail::emit(cfg, csv);
  return kExitPass;
}

// ==== catalog ===================================================================

inline int cmd_catalog(const RunConfig& cfg) {
  Json doc = Json::object();
  doc["schema"] = "randers-lab/1";
  doc["command"] = "catalog";
  Json entries = Json::array();
  for (const std::string& name : catalog_names()) {
    CatalogEntry e = catalog_entry(name, {});
    Json row = Json::object();
    row["name"] = name;
    row["parameters"] = catalog_parameter_doc(name);
    row["frame_based"] = e.frame;
    row["note"] = e.note;
    entries.push_back(std::move(row));
  }
  doc["entries"] = std::move(entries);
  detail::emit(cfg, dump_document(doc));
  return kExitPass;
}

// ==== entry point ===============================================================

inline int run_cli(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Randers metric curvature laboratory"};
  app.require_subcommand(1);

  auto add_shared = [&cfg](CLI::App* c) {
    c->add_option("--spec", cfg.spec_path, "metric spec file (JSON)");
    c->add_option("--catalog", cfg.catalog_name, "built-in catalog entry");
    c->add_option("--K", cfg.K, "catalog curvature parameter");
    c->add_option("--q", cfg.q, "catalog drift strength");
    c->add_option("--sign", cfg.sign, "catalog drift sign")
        ->check(CLI::IsMember({"+", "-"}));
    c->add_option("--points", cfg.points, "sample points");
    c->add_option("--flags", cfg.flags, "flag directions per point");
    c->add_option("--seed", cfg.seed, "sampling seed");
    c->add_option("--backend", cfg.backend_name, "derivative backend")
        ->check(CLI::IsMember({"dual", "fd"}));
    c->add_option("--out", cfg.out_path, "output file (default: stdout)");
    c->add_option("--tol", cfg.tol, "screening pass threshold override")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* rep = app.add_subcommand("report", "sampled curvature/torsion report");
  add_shared(rep);
  CLI::App* scr = app.add_subcommand("screen", "necessary-condition verdict");
  add_shared(scr);
  CLI::App* ver = app.add_subcommand("verify", "cross-path identity suite");
  add_shared(ver);
  CLI::App* geo = app.add_subcommand("geodesic", "RK4 geodesic trace (CSV)");
  geo->set_help_flag("--help", "print help");  // frees -h for the step size
  add_shared(geo);
  geo->add_option("--x0", cfg.x0, "start point, comma-separated")
      ->required()
      ->delimiter(',');
  geo->add_option("--y0", cfg.y0, "start velocity, comma-separated")
      ->required()
      ->delimiter(',');
  geo->add_option("--T", cfg.T, "integration time");
  geo->add_option("--h", cfg.h, "step size");
  CLI::App* cat = app.add_subcommand("catalog", "list built-in metrics");
  cat->add_option("--out", cfg.out_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (rep->parsed()) {
      cfg.command = "report";
      return cmd_report(cfg);
    }
    if (scr->parsed()) {
      cfg.command = "screen";
      return cmd_screen(cfg);
    }
    if (ver->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
    if (geo->parsed()) {
      cfg.command = "geodesic";
      return cmd_geodesic(cfg);
    }
    cfg.command = "catalog";
    return cmd_catalog(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
}

}  // namespace randers
