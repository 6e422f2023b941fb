#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "hermitlab/catalog.hpp"
#include "hermitlab/chern.hpp"
#include "hermitlab/classify.hpp"
#include "hermitlab/conformal.hpp"
#include "hermitlab/curvature_compare.hpp"
#include "hermitlab/fd_oracle.hpp"
#include "hermitlab/levicivita.hpp"
#include "hermitlab/nilker.hpp"

using namespace hermitlab;

namespace {

constexpr std::uint64_t kSeed = 0x5EED;
constexpr int kSweepRandoms = 20;
constexpr int kSweepPoints = 20;

// pinned thresholds
constexpr double kClassifyTol = 1e-7;
constexpr double kGrayTol = 1e-8;
constexpr double kTorsionCurvatureTol = 1e-7;
constexpr double kTheta2RouteTol = 1e-6;
constexpr double kSectionalTol = 1e-7;
constexpr double kGapFloor = -1e-10;
constexpr double kGapStrict = 1e-6;
constexpr double kTorsionSignificant = 1e-3;
constexpr double kScalarTol = 1e-8;
constexpr double kRicciTol = 1e-7;
constexpr double kDecompositionTol = 1e-7;
constexpr double kConformalTransformTol = 1e-8;
constexpr double kKernelTol = 1e-8;
constexpr int kRigidityTrials = 10000;
constexpr double kRigidityFloorLiteral = 1e-3;
constexpr double kRigidityFloorCompleted = 0.5;
constexpr double kRigidityFloorFull = 1.0;
constexpr double kFdFirstTol = 1e-6;
constexpr double kFdSecondTol = 1e-4;
constexpr int kFdPoints = 100;
constexpr double kBalancedTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct SweepItem {
  CatalogEntry entry;
  std::vector<PointAnalysis> analyses;
};

const std::vector<SweepItem>& sweep() {
  static const std::vector<SweepItem> items = [] {
    std::vector<std::string> names = catalog_names();
    for (int s = 1; s <= kSweepRandoms; ++s) names.push_back("random_polynomial:" + std::to_string(s));
    std::vector<SweepItem> out;
    for (const auto& name : names) {
      SweepItem it{catalog_get(name), {}};
      for (const auto& p : sample_points(it.entry.metric, it.entry.region, kSweepPoints, kSeed))
        it.analyses.push_back(analyze_point(it.entry.metric, p));
      out.push_back(std::move(it));
    }
    return out;
  }();
  return items;
}

// max over the sweep of f, with the metric where it occurred
Outcome sweep_max(const std::function<double(const PointAnalysis&)>& f, double tol, const std::string& what) {
  double worst = 0.0;
  std::string where;
  for (const auto& it : sweep())
    for (const auto& a : it.analyses) {
      const double v = f(a);
      if (!(v <= worst)) {
        worst = v;
        where = it.entry.metric.name;
      }
    }
  return {worst < tol, what + " max " + fmt(worst) + " (" + where + ") < " + fmt(tol)};
}

Outcome c1() {
  struct Want {
    std::string name;
    std::map<std::string, bool> flags;
  };
  const std::map<std::string, bool> kahler_all{{"kahler", true},        {"balanced", true},
                                               {"kahler_like", true},   {"g_kahler_like", true},
                                               {"pluriclosed", true}};
  auto flat = kahler_all;
  flat["hermitian_flat"] = true;
  const std::vector<Want> wants{
      {"iwasawa", {{"kahler", false}, {"balanced", true}, {"kahler_like", true}, {"hermitian_flat", true}}},
      {"gkl_surface", {{"g_kahler_like", true}, {"kahler", false}}},
      {"conformal_gklike", {{"g_kahler_like", true}}},
      {"euclidean", flat},
      {"fubini_study_chart", kahler_all}};
  Outcome o;
  int checked = 0;
  for (const auto& w : wants) {
    const auto e = catalog_get(w.name);
    const auto rep = classify_at(e.metric, sample_points(e.metric, e.region, 50, kSeed), kClassifyTol);
    for (const auto& [flag, want] : w.flags) {
      ++checked;
      if (rep.flag(flag) != want) {
        o.pass = false;
        o.detail += " " + w.name + "." + flag + " mismatch";
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " flags match on 50 points, tol " + fmt(kClassifyTol);
  return o;
}

Outcome c2() { return sweep_max([](const PointAnalysis& a) { return gray_vanishing(a.riemann); }, kGrayTol, "|R_ijkl|"); }

Outcome c3() {
  return sweep_max([](const PointAnalysis& a) { return torsion_curvature_suite(a).max(); }, kTorsionCurvatureTol, "relative residual");
}

Outcome c4() {
  return sweep_max([](const PointAnalysis& a) { return theta2_gamma_check(a.chern, a.riemann).Theta2_routes; },
                   kTheta2RouteTol, "Theta2 route deviation");
}

Outcome c5() {
  double res = 0.0, gap_min = 0.0;
  bool strict = true;
  std::string missing;
  for (const auto& it : sweep()) {
    double tmax = 0.0, gmax = 0.0;
    for (std::size_t p = 0; p < it.analyses.size(); ++p) {
      const auto& a = it.analyses[p];
      tmax = std::max(tmax, torsion_norm(a.chern));
      std::mt19937_64 rng(kSeed + p);
      for (int k = 0; k < 50; ++k) {
        const auto X = random_unit(a.chern.n, rng), Y = random_unit(a.chern.n, rng);
        const auto t = sectional_comparison(a, X, Y);
        res = std::max({res, t.bisectional_identity, t.bisectional_difference, t.holomorphic_difference});
        gap_min = std::min(gap_min, t.gap);
        gmax = std::max(gmax, t.gap);
      }
    }
    if (tmax > kTorsionSignificant && !(gmax > kGapStrict)) {
      strict = false;
      missing += " " + it.entry.metric.name;
    }
  }
  const bool pass = res < kSectionalTol && gap_min >= kGapFloor && strict;
  return {pass, "residual " + fmt(res) + " < " + fmt(kSectionalTol) + ", min gap " + fmt(gap_min) + " >= " +
                    fmt(kGapFloor) + (strict ? ", strict gap on every torsion metric" : ", no strict gap on" + missing)};
}

Outcome c6() {
  double scal = 0.0, ric = 0.0, l12 = 0.0;
  int used = 0;
  for (const auto& it : sweep())
    for (std::size_t p = 0; p < it.analyses.size(); ++p) {
      const auto& a = it.analyses[p];
      const int N = 2 * a.chern.n;
      std::mt19937_64 rng(kSeed ^ (p + 1));
      std::vector<Eigen::VectorXd> us;
      for (int k = 0; k < 5; ++k) us.push_back(random_unit_real(N, rng));
      const auto r = ricci_and_scalar(a, us);
      scal = std::max(scal, r.scalar);
      ric = std::max({ric, r.linear, r.j_invariant});
      for (int k = 0; k < 3; ++k) {
        const auto l = curvature_decomposition_check(a, random_unit_real(N, rng), random_unit_real(N, rng));
        if (l.degenerate) continue;
        ++used;
        l12 = std::max({l12, l.identity, l.decomposition});
      }
    }
  return {scal < kScalarTol && ric < kRicciTol && l12 < kDecompositionTol && used > 0,
          "scalar " + fmt(scal) + " < " + fmt(kScalarTol) + ", Ricci " + fmt(ric) + " < " + fmt(kRicciTol) +
              ", curvature decomposition " + fmt(l12) + " < " + fmt(kDecompositionTol) + " on " + std::to_string(used) +
              " pairs"};
}

Outcome c7() {
  struct Pair {
    std::string base, u;
    ConformalBranch branch;
    bool region_unit;
  };
  const auto K = ConformalBranch::KahlerLike, G = ConformalBranch::GKahlerLike;
  const std::vector<Pair> pairs{{"euclidean", "-ln(abs2(z1 - 2) + abs2(z2))", G, true},
                                {"conformal_klike", "re(z1)", K, false},
                                {"iwasawa", "re(z1*z2)", K, false},
                                {"euclidean", "re(z1)", G, false},
                                {"conformal_klike", "abs2(z1)", K, false},
                                {"gkl_surface", "ln(im(z2))", G, false}};
  Outcome o;
  double transform = 0.0;
  int positives = 0, agree = 0;
  for (const auto& pr : pairs) {
    const auto e = catalog_get(pr.base);
    const auto u = ConformalFactor::parse(pr.u, e.metric.n);
    const auto pts = sample_points(e.metric, e.region, kSweepPoints, kSeed);
    const auto r = gk_conformal_conditions(e.metric, u, pts, pr.branch, kClassifyTol);
    positives += r.condition_holds ? 1 : 0;
    if (r.agrees()) {
      ++agree;
    } else {
      o.pass = false;
      o.detail += " disagreement on " + pr.base + "/" + pr.u + ";";
    }
    for (const auto& p : pts) {
      transform = std::max(transform, torsion_transform_check(e.metric, u, p));
      const auto l = connection_transform_check(e.metric, u, p);
      transform = std::max({transform, l.theta1, l.theta2});
    }
  }
  if (positives != 3) {
    o.pass = false;
    o.detail += " expected 3 positive controls, got " + std::to_string(positives) + ";";
  }
  if (!(transform < kConformalTransformTol)) o.pass = false;
  o.detail += (o.detail.empty() ? "" : " ") + std::to_string(agree) + "/6 pairs agree (" + std::to_string(positives) +
              " positive), transformation laws " + fmt(transform) + " < " + fmt(kConformalTransformTol);
  return o;
}

Outcome c8() {
  std::mt19937_64 rng(kSeed);
  double worst = 0.0;
  int min_dim = 1 << 20, max_n = 0, max_m = 0;
  for (int f = 0; f < 200; ++f) {
    const NilFixture fx = random_fixture(rng);
    max_n = std::max(max_n, fx.family.n());
    max_m = std::max(max_m, fx.family.m());
    const Eigen::MatrixXcd basis = kernel_oracle(fx.family);
    min_dim = std::min(min_dim, static_cast<int>(basis.cols()));
    InductiveOptions opt;
    opt.seed = kSeed + static_cast<std::uint64_t>(f);
    const Eigen::VectorXcd w1 = common_kernel_inductive(fx.family, opt);
    const Eigen::VectorXcd w2 = common_kernel_constructive(fx.T, fx.X).w;
    for (const auto* w : {&w1, &w2}) {
      worst = std::max({worst, kernel_residual(fx.family, *w), oracle_membership(basis, *w),
                        std::abs(w->norm() - 1.0)});
    }
  }
  return {worst < kKernelTol && min_dim >= 1 && max_n <= 8 && max_m <= 4,
          "200 families (n <= " + std::to_string(max_n) + ", m <= " + std::to_string(max_m) + "), worst " +
              fmt(worst) + " < " + fmt(kKernelTol) + ", min oracle dimension " + std::to_string(min_dim)};
}

Outcome rigidity(RigiditySystem sys, double floor, const std::string& label) {
  const auto r = n3_rigidity_search(kRigidityTrials, kSeed, sys);
  return {r.best > floor, label + " min residual over " + std::to_string(r.trials) + " unit restarts " + fmt(r.best) +
                              " > " + fmt(floor)};
}

Outcome c9() { return rigidity(RigiditySystem::Literal, kRigidityFloorLiteral, "displayed system"); }

Outcome c9b() {
  const Outcome a = rigidity(RigiditySystem::Completed, kRigidityFloorCompleted, "completed system");
  const Outcome b = rigidity(RigiditySystem::Full, kRigidityFloorFull, "full quadratic identities");
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

Outcome c10() {
  double first = 0.0, second = 0.0;
  int exprs = 0;
  std::vector<std::string> names = catalog_names();
  for (int s = 1; s <= kSweepRandoms; ++s) names.push_back("random_polynomial:" + std::to_string(s));
  for (const auto& name : names) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, kFdPoints, kSeed))
      for (const auto& x : e.metric.entries) {
        const FdDeviation d = expr_fd_deviation(x, p);
        first = std::max(first, d.first);
        second = std::max(second, d.second);
        ++exprs;
      }
  }
  return {first < kFdFirstTol && second < kFdSecondTol,
          std::to_string(exprs) + " evaluations, first " + fmt(first) + " < " + fmt(kFdFirstTol) + ", second " +
              fmt(second) + " < " + fmt(kFdSecondTol)};
}

Outcome c11() {
  double bal = 0.0, sig = 0.0, eta = 0.0;
  int klike = 0;
  for (const auto& it : sweep()) {
    const auto rep = classify_analyses(it.analyses, kClassifyTol);
    const bool kl = rep.flag("kahler_like");
    klike += kl ? 1 : 0;
    for (const auto& a : it.analyses) {
      bal = std::max(bal, balanced_identity_residual(a.chern));
      if (kl) {
        sig = std::max(sig, ddbar_omega_sigma_residual(a.chern));
        eta = std::max(eta, delbar_eta(a.chern));
      }
    }
  }
  return {bal < kBalancedTol && sig < kBalancedTol && eta < kBalancedTol && klike > 0,
          "balanced identity " + fmt(bal) + ", Kahler-like (" + std::to_string(klike) + " metrics) ddbar omega - sigma " +
              fmt(sig) + ", delbar eta " + fmt(eta) + " < " + fmt(kBalancedTol)};
}

Outcome c12() {
  Outcome o;
  int torsion_metrics = 0;
  for (const auto& it : sweep()) {
    double tmax = 0.0;
    for (const auto& a : it.analyses) tmax = std::max(tmax, torsion_norm(a.chern));
    if (tmax <= kTorsionSignificant) continue;
    ++torsion_metrics;
    const auto rep = classify_analyses(it.analyses, kClassifyTol);
    if (rep.flag("kahler_like") && rep.flag("g_kahler_like")) {
      o.pass = false;
      o.detail += " " + it.entry.metric.name + " flagged both;";
    }
  }
  if (o.pass) o.detail = std::to_string(torsion_metrics) + " metrics with torsion, none flagged both";
  if (!o.pass) o.detail = "violations:" + o.detail;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1", c1},  {"2", c2},   {"3", c3},   {"4", c4},   {"5", c5},   {"6", c6},  {"7", c7},
      {"8", c8},  {"9", c9},   {"9b", c9b}, {"10", c10}, {"11", c11}, {"12", c12}};
  CLI::App cli{"Acceptance criteria"};
  std::vector<std::string> only;
  cli.add_option("--criterion", only, "criterion ids to run (default: all)")->delimiter(',');
  CLI11_PARSE(cli, argc, argv);
  std::set<std::string> chosen(only.begin(), only.end());
  for (const auto& id : chosen) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == id; })) {
      std::fprintf(stderr, "unknown criterion '%s'\n", id.c_str());
      return 2;
    }
  }
  bool all = true;
  for (const auto& [id, fn] : criteria) {
    if (!chosen.empty() && !chosen.count(id)) continue;
    const Outcome o = fn();
    all = all && o.pass;
    std::printf("criterion %-3s %s  %s\n", id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
