// Acceptance suite: end-to-end checks of the library contract, one printed
// line per criterion. Exit status is the number of failed criteria, so a
// clean run exits 0. Tolerances are fixed here and are not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>

#include "randers/beta.hpp"
#include "randers/catalog.hpp"
#include "randers/finsler.hpp"
#include "randers/frame.hpp"
#include "randers/sampling.hpp"
#include "randers/screener.hpp"

namespace {

using namespace randers;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// One criterion's outcome. expect() collects every violated sub-check so the
// printed line names all of them, not just the first.
struct Criterion {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

const char* kChartNames[] = {"bao-shen",           "euclidean", "euclid-const-beta",
                             "euclid-rot-killing", "funk-ball", "random"};

// ==== 1: moving-frame tables are exact ==========================================
// The constant-curvature frame family must reproduce its drift-derivative
// tables with zero numerical error (exact rational arithmetic), for both
// curvature levels and both signs of the drift root. del^2 = K - 1, so the
// squared-rotation diagonal is -(K - 1) exactly.

Criterion criterion_1() {
  Criterion c;
  auto t0 = Clock::now();
  for (double K : {2.0, 4.0}) {
    for (int sign : {+1, -1}) {
      FrameSpace fs = constant_curvature_frame(detail::rational_of(K), sign);
      FrameTensors ft = frame_tensors(fs);
      const QuadExt zero(0), del = fs.del(), eps = fs.eps();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          QuadExt want = zero;
          if (i == 1 && j == 2) want = zero - del;
          if (i == 2 && j == 1) want = del;
          c.expect(ft.nabla_b(i, j) == want, "drift-derivative table");
          c.expect(ft.r(i, j) == zero, "symmetrized derivative nonzero");
          c.expect(ft.s(i, j) == want, "rotation table");
          QuadExt want_t = zero;
          if ((i == 1 && j == 1) || (i == 2 && j == 2)) want_t = zero - del * del;
          c.expect(ft.t(i, j) == want_t, "squared-rotation table");
        }
      for (size_t i = 0; i < 3; ++i) {
        c.expect(ft.s_vec[i].is_zero(), "rotation contraction nonzero");
        c.expect(ft.t_vec[i].is_zero(), "squared-rotation contraction nonzero");
      }
      c.expect(ft.div_s[0] == QuadExt(2) * del * eps,
               "rotation divergence != 2*del*eps*y1");
      c.expect(ft.div_s[1].is_zero() && ft.div_s[2].is_zero(),
               "rotation divergence has components beyond y1");
    }
  }
  double el = ms_since(t0);
  c.expect(el < 1000.0, "runtime " + fmt(el) + " ms exceeds 1 s");
  if (c.ok)
    c.detail = "exact tables for K=2,4, both root signs, " + fmt(el) + " ms";
  return c;
}

// ==== 2: necessary-condition screen on the constant-curvature family ============
// Both realizations (coordinate chart and moving frame) must screen to
// NECESSARY_PASS with the fitted scalars c = -(K-1), lambda = K and every
// reported residual below 1e-8, inside a 10 s budget.

Criterion criterion_2() {
  Criterion c;
  auto t0 = Clock::now();
  for (double K : {2.0, 4.0}) {
    for (bool frame : {false, true}) {
      CatalogEntry e =
          catalog_entry(frame ? "bao-shen-frame" : "bao-shen", {.K = K});
      ScreenerReport r = frame ? screen_frame(e.space) : screen(e.spec, {});
      const char* tag = frame ? "frame" : "chart";
      c.expect(r.verdict == Verdict::necessary_pass,
               std::string(tag) + " verdict " + to_string(r.verdict));
      c.expect(!r.points.empty(), std::string(tag) + " reported no points");
      for (const PointScreen& p : r.points) {
        c.expect(std::abs(p.c.value + (K - 1.0)) < 1e-8,
                 std::string(tag) + " c=" + fmt(p.c.value));
        c.expect(std::abs(p.lambda.value - K) < 1e-8,
                 std::string(tag) + " lambda=" + fmt(p.lambda.value));
        const double rs[] = {p.c.residual, p.div_residual, p.lambda.residual,
                             p.lambda_ricci.residual, p.lambda_gap};
        for (double rr : rs)
          c.expect(rr < 1e-8, std::string(tag) + " residual " + fmt(rr));
      }
    }
  }
  double el = ms_since(t0);
  c.expect(el < 10000.0, "runtime " + fmt(el / 1000.0) + " s exceeds 10 s");
  if (c.ok)
    c.detail = "NECESSARY_PASS, c=-(K-1), lambda=K, residuals<1e-8, "
               "chart+frame, K=2,4, " + fmt(el / 1000.0) + " s";
  return c;
}

// ==== 3: constant flag curvature on the chart ===================================
// Flag curvature within 1e-6 of the curvature parameter over 50 seeded flags
// at 5 points (per K), and the Ricci trace equals (n-1)KF^2 within 1e-8.

Criterion criterion_3() {
  Criterion c;
  double kmax = 0, rmax = 0;
  int flags = 0;
  for (double K : {2.0, 4.0}) {
    CatalogEntry e = catalog_entry("bao-shen", {.K = K});
    Rng rng(11);
    for (int p = 0; p < 5; ++p) {
      Point x = rng.box_point(e.spec.domain, 0.25);
      for (int d = 0; d < 2; ++d) {
        Vec<double> y = rng.unit_vector(3);
        SprayCurvature sc = spray_curvature(e.spec, x, y);
        for (int u = 0; u < 5; ++u) {
          kmax = std::max(kmax,
                          std::abs(flag_curvature(sc, rng.unit_vector(3)) - K));
          ++flags;
        }
        rmax = std::max(rmax, std::abs(sc.ric - 2.0 * K * sc.F * sc.F) /
                                  (1.0 + std::abs(sc.ric)));
      }
    }
  }
  c.expect(kmax < 1e-6, "flag curvature off by " + fmt(kmax));
  c.expect(rmax < 1e-8, "Ricci trace residual " + fmt(rmax));
  if (c.ok)
    c.detail = std::to_string(flags) + " flags, max |K_flag - K| = " + fmt(kmax) +
               ", Ricci trace residual " + fmt(rmax);
  return c;
}

// ==== 4: divergence/curvature exchange identity =================================
// The contracted-commutation identity relating the rotation divergence to the
// curvature term holds below 1e-6 for 20 seeded polynomial metric/form pairs
// in dimensions 3 and 4, at 10 points x 5 directions each, within 30 s.

Criterion criterion_4() {
  Criterion c;
  auto t0 = Clock::now();
  double rmax = 0;
  for (int n : {3, 4}) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
      CatalogEntry e = catalog_entry("random", {.seed = s, .n = n});
      Rng rng(100 + s);
      for (int p = 0; p < 10; ++p) {
        Point x = rng.box_point(e.spec.domain, 0.25);
        for (int d = 0; d < 5; ++d)
          rmax = std::max(rmax,
                          prop41_residual(e.spec, x, rng.unit_vector(n)));
      }
    }
  }
  double el = ms_since(t0);
  c.expect(rmax < 1e-6, "max residual " + fmt(rmax));
  c.expect(el < 30000.0, "runtime " + fmt(el / 1000.0) + " s exceeds 30 s");
  if (c.ok)
    c.detail = "max residual " + fmt(rmax) +
               " over 40 seeded pairs (R3+R4), 10 pts x 5 dirs, " +
               fmt(el / 1000.0) + " s";
  return c;
}

// ==== 5: closed forms against definition paths ==================================
// Fundamental tensor, spray, mean Cartan torsion, mean Landsberg curvature
// and its drift trace each carry an independent second computation path and
// must agree (the library throws if they drift past 1e-6). The nonlinear
// connection's closed form is checked wherever the drift form is Killing, and
// the volume normalization against Monte-Carlo at 1e6 samples within 1%.

Criterion criterion_5() {
  Criterion c;
  double nmax = 0, bhmax = 0;
  for (const char* nm : kChartNames) {
    CatalogEntry e = catalog_entry(nm);
    const int n = e.spec.n;
    Rng rng(5);
    Point x0;
    for (int p = 0; p < 3; ++p) {
      Point x = rng.box_point(e.spec.domain, 0.25);
      if (p == 0) x0 = x;
      const bool killing = killing_residual(e.spec, {x}, Backend::dual) < 1e-8;
      for (int d = 0; d < 2; ++d) {
        Vec<double> y = rng.unit_vector(n);
        try {
          (void)fundamental_tensor(e.spec, x, y);
          (void)spray(e.spec, x, y);
          (void)mean_cartan(e.spec, x, y);
          (void)mean_landsberg(e.spec, x, y);
        } catch (const std::exception& ex) {
          c.expect(false, std::string(nm) + ": " + ex.what());
          continue;
        }
        if (killing) {
          SprayCurvature sc = spray_curvature(e.spec, x, y);
          detail::Ingredients ing =
              detail::ingredients(e.spec, x, y, Backend::dual);
          Mat<double> nc = detail::connection_closed_killing(ing, sc.N_bar);
          double scale = 0, gap = 0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              scale = std::max(scale, std::abs(sc.N(i, j)));
              gap = std::max(gap, std::abs(sc.N(i, j) - nc(i, j)));
            }
          nmax = std::max(nmax, gap / (1.0 + scale));
        }
      }
    }
    BhVolume v = bh_volume(e.spec, x0, 1000000);
    double rel = std::abs(v.mc - v.closed) / v.closed;
    bhmax = std::max(bhmax, rel);
    c.expect(rel < 0.01,
             std::string(nm) + ": volume Monte-Carlo gap " + fmt(rel));
  }
  c.expect(nmax < 1e-6, "connection closed-form gap " + fmt(nmax));
  if (c.ok)
    c.detail = "all two-path agreements hold on 6 chart entries; "
               "connection gap " + fmt(nmax) + ", volume MC gap " + fmt(bhmax) +
               " at 1e6 samples";
  return c;
}

// ==== 6: mean Landsberg transport on the constant-curvature chart ===============
// With constant flag curvature K the transport identity reduces to
// J_{i|m} y^m + K F^2 I_i = 0 (the curvature-gradient source vanishes); it
// must hold within 1e-5. The S-curvature vanishes identically here, which
// makes the S-transport counterpart trivially 0 = 0: both S paths and the
// flag-curvature gradient are checked to be numerically zero.

Criterion criterion_6() {
  Criterion c;
  double tmax = 0, smax = 0, kgmax = 0;
  for (double K : {2.0, 4.0}) {
    CatalogEntry e = catalog_entry("bao-shen", {.K = K});
    const MetricSpec spec = e.spec;
    const int n = spec.n;
    Rng rng(31);
    for (int p = 0; p < 2; ++p) {
      Point x = rng.box_point(spec.domain, 0.25);
      Vec<double> y = rng.unit_vector(n);
      SprayCurvature sc = spray_curvature(spec, x, y);
      Vec<double> I = mean_cartan(spec, x, y);
      FlagStatistics fs = scalar_flag_variance(spec, x, y, 8);
      c.expect(fs.variance < 1e-10, "flag variance " + fmt(fs.variance));

      SmoothMap jf;
      jf.in_dim = 2 * n;
      jf.out_dim = n;
      jf.f0 = [&spec, n](std::span<const D0> zs, std::span<D0> out) {
        Point xt(zs.begin(), zs.begin() + n);
        Vec<double> yt(zs.begin() + n, zs.end());
        MeanLandsberg ml = mean_landsberg(spec, xt, yt);
        for (int k = 0; k < n; ++k)
          out[static_cast<size_t>(k)] = ml.J[static_cast<size_t>(k)];
      };
      Vec<double> Jt = horizontal_derivative_along_y(spec, x, y, jf, true,
                                                     Backend::fd, Backend::dual);
      double scale = 0;
      for (double v : Jt) scale = std::max(scale, std::abs(v));
      for (double v : I) scale = std::max(scale, std::abs(v));
      for (int i = 0; i < n; ++i) {
        double defect = Jt[static_cast<size_t>(i)] +
                        fs.mean * sc.F * sc.F * I[static_cast<size_t>(i)];
        tmax = std::max(tmax, std::abs(defect) / (1.0 + scale));
      }

      SCurvature s = s_curvature(spec, x, y);
      smax = std::max({smax, std::abs(s.S), std::abs(s.S_definition)});
      for (double v : flag_curvature_gradient(spec, x, y, 8))
        kgmax = std::max(kgmax, std::abs(v));
    }
  }
  c.expect(tmax < 1e-5, "transport defect " + fmt(tmax));
  c.expect(smax < 1e-9, "S-curvature not zero: " + fmt(smax));
  c.expect(kgmax < 1e-4, "flag-curvature gradient " + fmt(kgmax));
  if (c.ok)
    c.detail = "transport defect " + fmt(tmax) + ", |S| <= " + fmt(smax) +
               " (trivially transported), curvature gradient " + fmt(kgmax);
  return c;
}

// ==== 7: rotational-drift negative control ======================================
// Contract under test: the rotational Killing control (q = 0.3 on the
// half-width-1.5 box) screens to FAIL with first failure at the deformation
// identity "eq_1_3" and a residual above 0.3, corroborated by a direct
// scalar-flag variance above 1e-3. The verdict and the variance hold; the
// named-identity sub-checks are asserted exactly as stated and their measured
// values are printed either way.

Criterion criterion_7() {
  Criterion c;
  CatalogEntry e = catalog_entry("euclid-rot-killing", {.q = 0.3});
  ScreenerReport r = screen(e.spec, {});
  c.expect(r.verdict == Verdict::fail,
           std::string("verdict ") + to_string(r.verdict) + " (wanted FAIL)");
  c.expect(r.failed == kEqConformal,
           "first failure at " + (r.failed.empty() ? std::string("-") : r.failed) +
               " (wanted " + kEqConformal + ")");
  double cres = 0, lrres = 0;
  for (const PointScreen& p : r.points) {
    cres = std::max(cres, p.c.residual);
    lrres = std::max(lrres, p.lambda_ricci.residual);
  }
  c.expect(cres > 0.3, std::string(kEqConformal) + " residual " + fmt(cres) +
                           " (wanted > 0.3)");

  Rng rng(2);
  double vmax = 0;
  for (int p = 0; p < 8; ++p) {
    Point x = rng.box_point(e.spec.domain, 0.25);
    for (int d = 0; d < 4; ++d)
      vmax = std::max(
          vmax, scalar_flag_variance(e.spec, x, rng.unit_vector(3), 24, 7)
                    .variance);
  }
  c.expect(vmax > 1e-3, "direct flag variance " + fmt(vmax) +
                            " (wanted > 1e-3)");
  c.note("measured: verdict=" + std::string(to_string(r.verdict)) +
         ", failed=" + (r.failed.empty() ? std::string("-") : r.failed) +
         ", " + kEqConformal + " residual=" + fmt(cres) + ", " +
         kEqRicciSplit + " residual=" + fmt(lrres) +
         ", direct flag variance=" + fmt(vmax));
  return c;
}

// ==== 8: projectively flat ball validation ======================================
// The funk-ball entry has constant flag curvature -1/4 and S-curvature
// (n+1)F/2 (both computation paths), each within 1e-6; its drift form is not
// Killing, so the screen must return NOT_APPLICABLE.

Criterion criterion_8() {
  Criterion c;
  CatalogEntry e = catalog_entry("funk-ball");
  const int n = e.spec.n;
  Rng rng(3);
  double kgap = 0, sgap = 0;
  for (int p = 0; p < 3; ++p) {
    Point x = rng.box_point(e.spec.domain, 0.25);
    for (int d = 0; d < 3; ++d) {
      Vec<double> y = rng.unit_vector(n);
      SprayCurvature sc = spray_curvature(e.spec, x, y);
      for (int u = 0; u < 5; ++u)
        kgap = std::max(kgap,
                        std::abs(flag_curvature(sc, rng.unit_vector(n)) + 0.25));
      SCurvature s = s_curvature(e.spec, x, y);
      const double want = 0.5 * (n + 1) * sc.F;
      sgap = std::max({sgap, std::abs(s.S - want) / (1.0 + std::abs(want)),
                       std::abs(s.S_definition - want) / (1.0 + std::abs(want))});
    }
  }
  c.expect(kgap < 1e-6, "flag curvature deviates from -1/4 by " + fmt(kgap));
  c.expect(sgap < 1e-6, "S-curvature differs from (n+1)F/2 by " + fmt(sgap));
  ScreenerReport r = screen(e.spec, {});
  c.expect(r.verdict == Verdict::not_applicable && r.reason == "beta_not_killing",
           std::string("screen verdict ") + to_string(r.verdict) + "/" +
               r.reason + " (wanted NOT_APPLICABLE/beta_not_killing)");
  if (c.ok)
    c.detail = "flag gap " + fmt(kgap) + ", S-curvature gap " + fmt(sgap) +
               ", screen NOT_APPLICABLE(beta_not_killing)";
  return c;
}

// ==== 9: homogeneity and structure invariants ===================================
// At 50 seeded (x, y) per chart entry: F, spray, curvature, Ricci trace,
// S-curvature, mean Cartan torsion and mean Landsberg covector scale with
// degrees 1, 2, 2, 2, 1, -1, 0 under y -> 2y (1e-8 relative); the curvature
// annihilates y on both slots (1e-8); g(y,y) = F^2 and the torsion traces
// I.y, J.y vanish (1e-10); where the flag variance is below 1e-10 the Ricci
// trace matches (n-1)*K_mean*F^2 (1e-8). One geodesic per entry keeps F
// within 1e-6 relative over T = 1 at step 1e-3.

Criterion criterion_9() {
  Criterion c;
  double hmax = 0, rymax = 0, algmax = 0, cfmax = 0, dmax = 0;
  int idx = 0;
  for (const char* nm : kChartNames) {
    CatalogEntry e = catalog_entry(nm);
    const MetricSpec& spec = e.spec;
    const int n = spec.n;
    Rng rng(static_cast<std::uint64_t>(17 + idx));
    for (int k = 0; k < 50; ++k) {
      Point x = rng.box_point(spec.domain, 0.25);
      Vec<double> y = rng.unit_vector(n);
      Vec<double> y2 = y;
      for (double& v : y2) v *= 2.0;

      SprayCurvature a1 = spray_curvature(spec, x, y);
      SprayCurvature a2 = spray_curvature(spec, x, y2);
      auto rel = [](double got, double want) {
        return std::abs(got - want) / (1.0 + std::abs(want));
      };
      hmax = std::max(hmax, rel(a2.F, 2.0 * a1.F));
      hmax = std::max(hmax, rel(a2.ric, 4.0 * a1.ric));
      for (int i = 0; i < n; ++i) {
        hmax = std::max(hmax, rel(a2.G[static_cast<size_t>(i)],
                                  4.0 * a1.G[static_cast<size_t>(i)]));
        for (int j = 0; j < n; ++j)
          hmax = std::max(hmax, rel(a2.R(i, j), 4.0 * a1.R(i, j)));
      }
      SCurvature s1 = s_curvature(spec, x, y);
      SCurvature s2 = s_curvature(spec, x, y2);
      hmax = std::max(hmax, rel(s2.S, 2.0 * s1.S));
      Vec<double> i1 = mean_cartan(spec, x, y);
      Vec<double> i2 = mean_cartan(spec, x, y2);
      MeanLandsberg m1 = mean_landsberg(spec, x, y);
      MeanLandsberg m2 = mean_landsberg(spec, x, y2);
      for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
        hmax = std::max(hmax, rel(i2[i], 0.5 * i1[i]));
        hmax = std::max(hmax, rel(m2.J[i], m1.J[i]));
      }

      // curvature annihilates the flagpole on both slots
      double rscale = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rscale = std::max(rscale, std::abs(a1.R(i, j)));
      Vec<double> y_low(static_cast<size_t>(n), 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          y_low[static_cast<size_t>(i)] += a1.g(i, j) * y[static_cast<size_t>(j)];
      for (int i = 0; i < n; ++i) {
        double ry = 0, yr = 0;
        for (int k2 = 0; k2 < n; ++k2) {
          ry += a1.R(i, k2) * y[static_cast<size_t>(k2)];
          yr += y_low[static_cast<size_t>(k2)] * a1.R(k2, i);
        }
        rymax = std::max({rymax, std::abs(ry) / (1.0 + rscale),
                          std::abs(yr) / (1.0 + rscale)});
      }

      // metric square, torsion traces
      double gyy = 0;
      for (int i = 0; i < n; ++i)
        gyy += y_low[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
      algmax = std::max(algmax, std::abs(gyy - a1.F * a1.F) /
                                    (1.0 + a1.F * a1.F));
      double iy = 0, jy = 0, iscale = 0, jscale = 0;
      for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
        iy += i1[i] * y[i];
        jy += m1.J[i] * y[i];
        iscale = std::max(iscale, std::abs(i1[i]));
        jscale = std::max(jscale, std::abs(m1.J[i]));
      }
      algmax = std::max({algmax, std::abs(iy) / (1.0 + iscale),
                         std::abs(jy) / (1.0 + jscale)});

      // scalar-flag consistency of the Ricci trace
      if (k < 5) {
        FlagStatistics fs = scalar_flag_variance(spec, x, y, 8);
        if (fs.variance < 1e-10)
          cfmax = std::max(cfmax, rel(a1.ric, (n - 1) * fs.mean * a1.F * a1.F));
      }
    }

    // geodesic drift from the domain center
    const double half =
        0.5 * (spec.domain[0][1] - spec.domain[0][0]);
    Point x0(static_cast<size_t>(n), 0.0);
    Rng rg(static_cast<std::uint64_t>(23 + idx));
    Vec<double> y0 = rg.unit_vector(n);
    for (double& v : y0) v *= 0.45 * half;
    GeodesicTrace tr = geodesic_trace(spec, x0, y0, 1.0, 1e-3);
    c.expect(tr.samples.size() >= 100,
             std::string(nm) + ": geodesic retained only " +
                 std::to_string(tr.samples.size()) + " samples");
    const double F0 = tr.samples.front().F;
    double drift = 0;
    for (const GeodesicSample& smp : tr.samples)
      drift = std::max(drift, std::abs(smp.F - F0) / std::abs(F0));
    dmax = std::max(dmax, drift);
    c.expect(drift < 1e-6, std::string(nm) + ": geodesic drift " + fmt(drift));
    ++idx;
  }
  c.expect(hmax < 1e-8, "homogeneity gap " + fmt(hmax));
  c.expect(rymax < 1e-8, "curvature flagpole residual " + fmt(rymax));
  c.expect(algmax < 1e-10, "metric-square/torsion-trace residual " + fmt(algmax));
  c.expect(cfmax < 1e-8, "Ricci trace vs mean flag curvature " + fmt(cfmax));
  if (c.ok)
    c.detail = "50 (x,y) per entry: homogeneity " + fmt(hmax) +
               ", flagpole " + fmt(rymax) + ", traces " + fmt(algmax) +
               ", Ricci-vs-flag " + fmt(cfmax) + ", geodesic drift " + fmt(dmax);
  return c;
}

// ==== 10: chart validation against the frame ====================================
// The unit-sphere coframe satisfies its structure equations below 1e-8 at 20
// seeded points, and scalar invariants computed on the chart agree with the
// frame's exact values within 1e-6: drift norm, flag curvature, S-curvature,
// mean Landsberg drift trace, and the screen's fitted scalars.

Criterion criterion_10() {
  Criterion c;
  CatalogEntry e0 = catalog_entry("bao-shen");
  double sres =
      coframe_structure_residual(sphere_coframe_forms(), e0.spec.domain, 20);
  c.expect(sres < 1e-8, "structure residual " + fmt(sres));

  double agree = 0;
  auto eta = sphere_coframe_forms();
  for (double K : {2.0, 4.0}) {
    CatalogEntry ch = catalog_entry("bao-shen", {.K = K});
    CatalogEntry fr = catalog_entry("bao-shen-frame", {.K = K});
    FrameTensors ft = frame_tensors(fr.space);
    const double b2f = fr.space.num(ft.b2);
    const double delta = std::sqrt(K - 1.0);
    Rng rng(41);
    for (int t = 0; t < 4; ++t) {
      Point x = rng.box_point(ch.spec.domain, 0.25);
      Vec<double> v = rng.unit_vector(3);
      // frame components v relate to chart velocities y through the coframe,
      // with the first form scaled by sqrt(K).
      Mat<double> w = coframe_at(eta, x);
      for (int j = 0; j < 3; ++j) w(0, j) *= std::sqrt(K);
      auto lu = lu_factor(w);
      Vec<double> y = lu_solve(lu, v);

      AlphaData al = alpha_at(ch.spec, x);
      BetaData be = beta_at(ch.spec, x, al);
      double a2 = 0, beta = 0;
      for (int i = 0; i < 3; ++i) {
        beta += be.b[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
        for (int j = 0; j < 3; ++j)
          a2 += al.a(i, j) * y[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
      }
      agree = std::max(agree, std::abs(std::sqrt(a2) - std::sqrt(norm2(v))));
      agree = std::max(agree,
                       std::abs(beta - delta / std::sqrt(K) * v[0]));
      agree = std::max(agree, std::abs(be.b2 - b2f));
      FlagStatistics fst = scalar_flag_variance(ch.spec, x, y, 8, 5);
      agree = std::max(agree, std::abs(fst.mean - K));
      SCurvature s = s_curvature(ch.spec, x, y);
      agree = std::max(agree, std::abs(s.S));
      MeanLandsberg ml = mean_landsberg(ch.spec, x, y);
      agree = std::max(agree, std::abs(ml.J_bar));
    }
    ScreenerReport rc = screen(ch.spec, {});
    ScreenerReport rf = screen_frame(fr.space);
    c.expect(!rc.points.empty() && !rf.points.empty(), "screen reported no points");
    if (!rc.points.empty() && !rf.points.empty()) {
      agree = std::max(agree, std::abs(rc.points.front().c.value -
                                       rf.points.front().c.value));
      agree = std::max(agree, std::abs(rc.points.front().lambda.value -
                                       rf.points.front().lambda.value));
    }
  }
  c.expect(agree < 1e-6, "frame/chart scalar gap " + fmt(agree));
  if (c.ok)
    c.detail = "structure residual " + fmt(sres) + ", frame/chart scalar gap " +
               fmt(agree);
  return c;
}

}  // namespace

int main() {
  struct Row {
    int id;
    const char* what;
    Criterion (*fn)();
  };
  const Row rows[] = {
      {1, "exact moving-frame tables", criterion_1},
      {2, "necessary-condition screen, both realizations", criterion_2},
      {3, "constant flag curvature on the chart", criterion_3},
      {4, "divergence/curvature exchange identity", criterion_4},
      {5, "closed forms vs definition paths", criterion_5},
      {6, "mean Landsberg transport identity", criterion_6},
      {7, "rotational-drift negative control", criterion_7},
      {8, "projectively flat ball validation", criterion_8},
      {9, "homogeneity and structure invariants", criterion_9},
      {10, "chart/frame cross-validation", criterion_10},
  };
  int failures = 0;
  for (const Row& row : rows) {
    Criterion c;
    try {
      c = row.fn();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    std::printf("criterion %2d: %s  %s%s%s\n", row.id, c.ok ? "PASS" : "FAIL",
                row.what, c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  if (failures)
    std::printf("%d of 10 criteria failed\n", failures);
  else
    std::printf("all 10 criteria passed\n");
  return failures ? 1 : 0;
}
