#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <set>

#include "hermitlab/chern.hpp"
#include "hermitlab/classify.hpp"
#include "hermitlab/conformal.hpp"
#include "hermitlab/curvature_compare.hpp"
#include "hermitlab/error.hpp"
#include "hermitlab/fd_oracle.hpp"
#include "hermitlab/levicivita.hpp"
#include "hermitlab/nilker.hpp"
#include "hermitlab_app/app.hpp"

namespace hermitlab::app {

using nlohmann::json;

namespace {

// Running maximum (or minimum) with the point where it occurred.
struct Extreme {
  double value = 0.0;
  int at = -1;
  bool minimum = false;
  void add(double v, int p) {
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    if (at < 0 || (minimum ? v < value : v > value)) {
      value = v;
      at = p;
    }
  }
};

class SuiteBuilder {
 public:
  SuiteBuilder(std::string name, const RunConfig& cfg) : cfg_(cfg) { result_.name = std::move(name); }

  double tol(const std::string& check, double fallback) const {
    const auto it = cfg_.tolerances.find(result_.name + "." + check);
    return it == cfg_.tolerances.end() ? fallback : it->second;
  }

  void below(const std::string& check, const Extreme& e, double fallback, std::string note = {}) {
    const double t = tol(check, fallback);
    result_.checks.push_back({check, "<", e.value, t, e.at, e.value < t, std::move(note)});
  }
  void above(const std::string& check, const Extreme& e, double fallback, std::string note = {}) {
    const double t = tol(check, fallback);
    result_.checks.push_back({check, ">", e.value, t, e.at, e.value > t, std::move(note)});
  }
  void expect(const std::string& check, bool ok, double value, double t, int at, std::string note) {
    result_.checks.push_back({check, "==", value, t, at, ok, std::move(note)});
  }

  json& details() { return result_.details; }
  SuiteResult finish() { return std::move(result_); }

 private:
  const RunConfig& cfg_;
  SuiteResult result_;
};

std::mt19937_64 point_rng(std::uint64_t seed, int p) {
  return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(p + 1)));
}

double max_torsion(const std::vector<PointAnalysis>& as) {
  double t = 0.0;
  for (const auto& a : as) t = std::max(t, torsion_norm(a.chern));
  return t;
}

SuiteResult classify_suite(const RunConfig& cfg, const CatalogEntry& entry, const ClassificationReport& rep) {
  SuiteBuilder b("classify", cfg);
  for (const auto& [flag, r] : rep.flags) {
    b.details()["flags"][flag] = {{"value", r.value}, {"residual", r.residual}, {"worst_point", r.worst_point}};
  }
  b.details()["tolerance"] = rep.tolerance;
  for (const auto& [flag, want] : entry.expected) {
    const auto it = rep.flags.find(flag);
    if (it == rep.flags.end()) throw InvalidInput("unknown expected flag '" + flag + "'");
    const auto& r = it->second;
    b.expect("expected." + flag, r.value == want, r.residual, rep.tolerance, r.worst_point,
             std::string("expected ") + (want ? "true" : "false") + ", got " + (r.value ? "true" : "false"));
  }
  b.expect("consistency", rep.consistent(), 0.0, rep.tolerance, -1, "true flags under tolerance; kahler implies the rest");
  return b.finish();
}

SuiteResult identities_suite(const RunConfig& cfg, const std::vector<PointAnalysis>& as,
                             const ClassificationReport& rep) {
  SuiteBuilder b("identities", cfg);
  Extreme gray, l21, l22, l23, l24, theta2_routes, theta2_formula, gamma_formula, theta2_02, sym, bianchi, ctype, skew,
      balanced, dtorsion, ddbar;
  Extreme sigma, delbar, wedge, eta_trace, gkb, bothlike;
  const bool klike = rep.flag("kahler_like"), gkl = rep.flag("g_kahler_like");
  for (int p = 0; p < static_cast<int>(as.size()); ++p) {
    const auto& a = as[static_cast<std::size_t>(p)];
    const double s = 1.0 + curvature_scale(a);
    gray.add(gray_vanishing(a.riemann), p);
    const TorsionCurvatureResiduals l7 = torsion_curvature_suite(a);
    l21.add(l7.torsion_derivative, p);
    l22.add(l7.r_ijk_lbar, p);
    l23.add(l7.r_ij_kbar_lbar, p);
    l24.add(l7.r_k_lbar_i_jbar, p);
    const Theta2Check tc = theta2_gamma_check(a.chern, a.riemann);
    theta2_routes.add(tc.Theta2_routes / s, p);
    theta2_formula.add(tc.theta2_formula, p);
    gamma_formula.add(tc.gamma_formula, p);
    theta2_02.add(std::max(tc.theta2_01_part, tc.Theta2_02_part / s), p);
    const RiemannSymmetry rs = riemann_symmetries(a.riemann);
    sym.add(std::max({rs.antisym_first, rs.antisym_last, rs.pair_swap, rs.bianchi}) / s, p);
    bianchi.add(bianchi_residual(a.chern) / s, p);
    ctype.add(curvature_type_residual(a.chern) / s, p);
    skew.add(curvature_skew_residual(a.chern) / s, p);
    balanced.add(balanced_identity_residual(a.chern), p);
    dtorsion.add(torsion_derivative_residual(a.chern) / s, p);
    ddbar.add(ddbar_omega_residual(a.chern) / s, p);
    if (klike) {
      sigma.add(ddbar_omega_sigma_residual(a.chern) / s, p);
      delbar.add(delbar_eta(a.chern) / s, p);
      wedge.add(kahler_like_wedge(a.chern) / s, p);
    }
    if (gkl) {
      eta_trace.add(eta_trace_residual(a.chern) / s, p);
      gkb.add(gk_bianchi_symmetry(a.riemann) / s, p);
    }
    if (klike && gkl) bothlike.add(bothlike_suite(a.chern).max() / s, p);
  }
  b.below("gray_vanishing", gray, 1e-8);
  b.below("torsion_curvature.torsion_derivative", l21, 1e-7);
  b.below("torsion_curvature.r_ijk_lbar", l22, 1e-7);
  b.below("torsion_curvature.r_ij_kbar_lbar", l23, 1e-7);
  b.below("torsion_curvature.r_k_lbar_i_jbar", l24, 1e-7);
  b.below("theta2_two_route", theta2_routes, 1e-6);
  b.below("theta2_torsion_formula", theta2_formula, 1e-8);
  b.below("gamma_torsion_formula", gamma_formula, 1e-8);
  b.below("theta2_type", theta2_02, 1e-8);
  b.below("riemann_symmetries", sym, 1e-8);
  b.below("chern_bianchi", bianchi, 1e-8);
  b.below("chern_curvature_type", ctype, 1e-8);
  b.below("chern_curvature_skew", skew, 1e-8);
  b.below("balanced_identity", balanced, 1e-8);
  b.below("torsion_derivative", dtorsion, 1e-8);
  b.below("ddbar_omega", ddbar, 1e-8);
  if (klike) {
    b.below("kahler_like.ddbar_omega_sigma", sigma, 1e-8);
    b.below("kahler_like.delbar_eta", delbar, 1e-8);
    b.below("kahler_like.wedge", wedge, 1e-8);
  }
  if (gkl) {
    b.below("g_kahler_like.eta_trace", eta_trace, 1e-8);
    b.below("g_kahler_like.bianchi_symmetry", gkb, 1e-8);
  }
  if (klike && gkl) b.below("both_like.torsion_identities", bothlike, 1e-8);
  b.details()["normalization"] = "curvature residuals divided by 1 + max curvature component at the point";
  return b.finish();
}

SuiteResult compare_suite(const RunConfig& cfg, const std::vector<PointAnalysis>& as) {
  SuiteBuilder b("compare", cfg);
  Extreme e41, e42, e43, gap_max, lin, jinv, scal, l12id, l12dec;
  Extreme gap_min{0.0, -1, true};
  int decomposition_samples = 0;
  for (int p = 0; p < static_cast<int>(as.size()); ++p) {
    const auto& a = as[static_cast<std::size_t>(p)];
    const int n = a.chern.n;
    auto rng = point_rng(cfg.seed, p);
    for (int k = 0; k < 50; ++k) {
      const auto X = random_unit(n, rng);
      const auto Y = random_unit(n, rng);
      const SectionalComparison t = sectional_comparison(a, X, Y);
      e41.add(t.bisectional_identity, p);
      e42.add(t.bisectional_difference, p);
      e43.add(t.holomorphic_difference, p);
      gap_min.add(t.gap, p);
      gap_max.add(t.gap, p);
    }
    std::vector<Eigen::VectorXd> us;
    for (int k = 0; k < 4; ++k) us.push_back(random_unit_real(2 * n, rng));
    const RicciCheck rc = ricci_and_scalar(a, us);
    lin.add(rc.linear, p);
    jinv.add(rc.j_invariant, p);
    scal.add(rc.scalar, p);
    for (int k = 0; k < 4; ++k) {
      const CurvatureDecomposition l = curvature_decomposition_check(a, random_unit_real(2 * n, rng), random_unit_real(2 * n, rng));
      if (l.degenerate) continue;
      ++decomposition_samples;
      l12id.add(l.identity, p);
      l12dec.add(l.decomposition, p);
    }
  }
  b.below("holomorphic_bisectional_identity", e41, 1e-7);
  b.below("bisectional_difference", e42, 1e-7);
  b.below("holomorphic_sectional_difference", e43, 1e-7);
  b.above("sectional_gap_nonnegative", gap_min, -1e-10);
  const double tmax = max_torsion(as);
  if (tmax > 1e-3) b.above("sectional_gap_strict", gap_max, 1e-6, "max torsion " + std::to_string(tmax));
  b.below("ricci_linear", lin, 1e-7);
  b.below("ricci_j_invariant", jinv, 1e-7);
  b.below("scalar_curvature", scal, 1e-8);
  b.below("decomposition_identity", l12id, 1e-7);
  b.below("decomposition_sum", l12dec, 1e-7);
  b.details()["direction_pairs_per_point"] = 50;
  b.details()["decomposition_samples"] = decomposition_samples;
  b.details()["max_torsion"] = tmax;
  return b.finish();
}

SuiteResult conformal_suite(const RunConfig& cfg, const CatalogEntry& entry,
                            const std::vector<std::vector<Complex>>& points, const ClassificationReport& rep) {
  SuiteBuilder b("conformal", cfg);
  const ConformalFactor u = ConformalFactor::parse(cfg.conformal_u, entry.metric.n);
  u.check_real(points);
  b.details()["u"] = u.text;
  Extreme t36, t37, t38;
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    const auto& pt = points[static_cast<std::size_t>(p)];
    t36.add(torsion_transform_check(entry.metric, u, pt), p);
    const ConnectionTransform l = connection_transform_check(entry.metric, u, pt);
    t37.add(l.theta1, p);
    t38.add(l.theta2, p);
  }
  b.below("torsion_transform", t36, 1e-8);
  b.below("theta1_transform", t37, 1e-8);
  b.below("theta2_transform", t38, 1e-8);

  std::vector<ConformalBranch> branches;
  const std::string& br = cfg.conformal_branch;
  if (br == "kahler_like" || (br == "auto" && rep.flag("kahler_like"))) branches.push_back(ConformalBranch::KahlerLike);
  if (br == "g_kahler_like" || (br == "auto" && rep.flag("g_kahler_like")))
    branches.push_back(ConformalBranch::GKahlerLike);
  if (entry.metric.n == 1) {
    // every metric of dimension 1 carries both flags
    branches.clear();
    b.details()["biconditional"] = "skipped: dimension 1";
  } else if (branches.empty()) {
    b.details()["biconditional"] = "skipped: base metric is neither kahler_like nor g_kahler_like";
  }
  for (const auto branch : branches) {
    const std::string key = branch == ConformalBranch::KahlerLike ? "kahler_like" : "g_kahler_like";
    const ConformalConditionReport c = gk_conformal_conditions(entry.metric, u, points, branch, rep.tolerance);
    b.expect("biconditional." + key, c.agrees(), c.condition, rep.tolerance, -1,
             std::string("condition ") + (c.condition_holds ? "holds" : "fails") + ", transformed flag " +
                 (c.transformed_flag ? "true" : "false"));
    json d{{"condition", c.condition},
           {"condition_holds", c.condition_holds},
           {"transformed_flag", c.transformed_flag},
           {"transformed_residual", c.transformed.flags.at(key).residual}};
    if (branch == ConformalBranch::GKahlerLike) {
      d["hessian_20"] = c.factor.hessian_20;
      d["hessian_11"] = c.factor.hessian_11;
      d["trace"] = c.factor.trace;
      d["harmonic"] = c.factor.harmonic;
    }
    b.details()["branches"][key] = d;
  }
  return b.finish();
}

SuiteResult nilker_suite(const RunConfig& cfg, const std::vector<PointAnalysis>& as) {
  SuiteBuilder b("nilker", cfg);
  std::mt19937_64 rng(cfg.seed);
  Extreme ind, con, mem_ind, mem_con, unit;
  Extreme dim{0.0, -1, true};
  std::map<std::string, int> kinds;
  const int fixtures = cfg.points;
  for (int f = 0; f < fixtures; ++f) {
    const NilFixture fx = random_fixture(rng);
    ++kinds[fx.kind];
    const Eigen::MatrixXcd basis = kernel_oracle(fx.family);
    dim.add(static_cast<double>(basis.cols()), f);
    InductiveOptions opt;
    opt.seed = cfg.seed + static_cast<std::uint64_t>(f);
    const Eigen::VectorXcd w1 = common_kernel_inductive(fx.family, opt);
    const ConstructiveResult w2 = common_kernel_constructive(fx.T, fx.X);
    ind.add(kernel_residual(fx.family, w1), f);
    con.add(kernel_residual(fx.family, w2.w), f);
    mem_ind.add(oracle_membership(basis, w1), f);
    mem_con.add(oracle_membership(basis, w2.w), f);
    unit.add(std::max(std::abs(w1.norm() - 1.0), std::abs(w2.w.norm() - 1.0)), f);
  }
  b.below("inductive_kernel", ind, 1e-8);
  b.below("constructive_kernel", con, 1e-8);
  b.below("inductive_oracle_membership", mem_ind, 1e-8);
  b.below("constructive_oracle_membership", mem_con, 1e-8);
  b.below("unit_norm", unit, 1e-12);
  b.above("oracle_dimension", dim, 0.5, "common kernel dimension >= 1");
  b.details()["fixtures"] = fixtures;
  b.details()["kinds"] = kinds;

  // torsion of the metric itself, where it satisfies the family relation
  Extreme tor;
  int applicable = 0;
  for (int p = 0; p < static_cast<int>(as.size()); ++p) {
    const CTensor T = values(as[static_cast<std::size_t>(p)].chern.T);
    if (max_abs(T) < 1e-12 || commutation_residual(T) > 1e-9 * (1.0 + max_abs(T) * max_abs(T))) continue;
    ++applicable;
    const NilpotentFamily F = family_from_torsion(T);
    auto prng = point_rng(cfg.seed, p);
    const ConstructiveResult c = common_kernel_constructive(T, random_unit(F.n(), prng));
    tor.add(std::max(kernel_residual(F, common_kernel_inductive(F)), kernel_residual(F, c.w)), p);
  }
  b.details()["torsion_family_points"] = applicable;
  if (applicable > 0) b.below("torsion_family_kernel", tor, 1e-8);
  return b.finish();
}

SuiteResult oracle_suite(const RunConfig& cfg, const CatalogEntry& entry,
                         const std::vector<std::vector<Complex>>& points) {
  SuiteBuilder b("oracle", cfg);
  Extreme e1, e2, first, second;
  Extreme parts[5];
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    const auto& pt = points[static_cast<std::size_t>(p)];
    for (const auto& x : entry.metric.entries) {
      const FdDeviation d = expr_fd_deviation(x, pt);
      e1.add(d.first, p);
      e2.add(d.second, p);
    }
    const OracleReport r = fd_oracle(entry.metric, pt);
    first.add(r.first(), p);
    second.add(r.second(), p);
    parts[0].add(r.torsion, p);
    parts[1].add(r.christoffel, p);
    parts[2].add(r.chern_curvature, p);
    parts[3].add(r.riemann, p);
    parts[4].add(r.torsion_derivative, p);
  }
  b.below("expression_first_order", e1, 1e-6);
  b.below("expression_second_order", e2, 1e-4);
  b.below("first_derivative_quantities", first, 1e-5);
  b.below("second_derivative_quantities", second, 1e-3);
  b.details()["step"] = kFdStep;
  b.details()["torsion"] = parts[0].value;
  b.details()["christoffel"] = parts[1].value;
  b.details()["chern_curvature"] = parts[2].value;
  b.details()["riemann"] = parts[3].value;
  b.details()["torsion_derivative"] = parts[4].value;
  return b.finish();
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<std::string> parse_suites(const std::vector<std::string>& names) {
  std::set<std::string> chosen;
  for (const auto& s : names) {
    if (s == "all") {
      chosen.insert(kSuiteNames.begin(), kSuiteNames.end());
    } else if (std::find(kSuiteNames.begin(), kSuiteNames.end(), s) != kSuiteNames.end()) {
      chosen.insert(s);
    } else {
      throw InvalidInput("unknown suite '" + s + "'");
    }
  }
  std::vector<std::string> out;
  for (const auto& s : kSuiteNames)
    if (chosen.count(s)) out.push_back(s);
  return out;
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool Report::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); }) &&
         (!oracle || oracle->passed());
}

Report run(const RunConfig& config) {
  if (config.points < 1) throw InvalidInput("--points must be at least 1");
  if (config.conformal_branch != "auto" && config.conformal_branch != "kahler_like" &&
      config.conformal_branch != "g_kahler_like")
    throw InvalidInput("unknown conformal branch '" + config.conformal_branch + "'");
  Report rep;
  rep.config = config;
  rep.config.suites = parse_suites(config.suites);
  rep.entry = load_metric(config.metric);
  rep.points = sample_points(rep.entry.metric, rep.entry.region, config.points, config.seed);
  if (config.timestamp) rep.timestamp = utc_now();

  std::vector<PointAnalysis> as;
  for (const auto& p : rep.points) as.push_back(analyze_point(rep.entry.metric, p));
  const ClassificationReport cls = classify_analyses(as, config.tolerance);

  for (const auto& s : rep.config.suites) {
    if (s == "classify") rep.suites.push_back(classify_suite(rep.config, rep.entry, cls));
    if (s == "identities") rep.suites.push_back(identities_suite(rep.config, as, cls));
    if (s == "compare") rep.suites.push_back(compare_suite(rep.config, as));
    if (s == "conformal") rep.suites.push_back(conformal_suite(rep.config, rep.entry, rep.points, cls));
    if (s == "nilker") rep.suites.push_back(nilker_suite(rep.config, as));
  }
  if (config.oracle) rep.oracle = oracle_suite(rep.config, rep.entry, rep.points);
  return rep;
}

}  // namespace hermitlab::app
