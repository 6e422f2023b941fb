#include <doctest.h>

#include "hermitlab/catalog.hpp"
#include "hermitlab/error.hpp"
#include "hermitlab/expr.hpp"
#include "support.hpp"

using namespace hermitlab;

TEST_CASE("surface conformal factor parses and evaluates") {
  const Expr e = parse("(-i*z2 + i*conj(z2))^2", 2);
  const support::Point p{{0.3, 0.1}, {0.5, 1.0}};
  CHECK(std::abs(e.eval_value(p) - 4.0) < 1e-14);
  CHECK(e.max_coord() == 2);
}

TEST_CASE("abs2 at 3+4i") {
  const support::Point p{{3, 4}};
  const Jet j = parse("abs2(z1)", 1).eval(p);
  CHECK(std::abs(j.value() - 25.0) < 1e-13);
  CHECK(std::abs(j.d2(0, 1) - 1.0) < 1e-15);
}

TEST_CASE("syntax error offsets") {
  auto offset = [](const std::string& src, int n) -> std::size_t {
    try {
      (void)parse(src, n);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  CHECK(offset("z1 + * z2", 2) == 5);
  CHECK(offset("z3", 2) == 0);
  CHECK(offset("foo(z1)", 1) == 0);
  CHECK(offset("z1^z1", 1) == 3);
  CHECK(offset("(z1", 1) != std::string::npos);
  CHECK(offset("", 1) == 0);
  CHECK(offset("z1 z1", 1) == 3);
}

TEST_CASE("precedence and associativity") {
  const support::Point p{{2, 0}};
  CHECK(std::abs(parse("1 + 2*z1^2", 1).eval_value(p) - 9.0) < 1e-14);
  CHECK(std::abs(parse("-z1^2", 1).eval_value(p) + 4.0) < 1e-14);
  CHECK(std::abs(parse("z1 - 1 - 1", 1).eval_value(p)) < 1e-14);
  CHECK(std::abs(parse("8/z1/2", 1).eval_value(p) - 2.0) < 1e-14);
  CHECK(std::abs(parse("z1^-2", 1).eval_value(p) - 0.25) < 1e-14);
  CHECK(std::abs(parse("2^3^2", 1).eval_value(p) - 512.0) < 1e-10);
}

TEST_CASE("print round-trips") {
  for (const std::string src : {"(-i*z2 + i*conj(z2))^2", "1 + abs2(z1) - re(z1*z2)/3.5", "exp(-2*ln(1 + abs2(z1)))",
                                "z1^-2 + sqrt(4 + im(z2))", "-(z1 - z2)*conj(-z1)"}) {
    const Expr e = parse(src, 2);
    const std::string text = print(e);
    CHECK_MESSAGE(parse(text, 2) == e, src << " -> " << text);
  }
}

TEST_CASE("expression jets agree with finite differences") {
  std::mt19937_64 rng(7);
  const Expr e = parse("exp(z1*conj(z2))/(2 + abs2(z1)) + sqrt(3 + re(z2))*ln(2 + im(z1))", 2);
  for (int t = 0; t < 5; ++t) {
    const auto p = support::random_point(rng, 2, 0.5);
    const Jet j = e.eval(p);
    const support::Scalar f = [&](const support::Point& q) { return e.eval_value(q); };
    for (int a = 0; a < 4; ++a) {
      CHECK(std::abs(j.d1(a) - support::wirtinger_fd(f, p, a)) < 1e-7);
      for (int b = 0; b < 4; ++b) CHECK(std::abs(j.d2(a, b) - support::wirtinger_fd2(f, p, a, b)) < 1e-4);
    }
  }
}

TEST_CASE("ln outside the principal domain") {
  const support::Point p{{-2, 0}};
  CHECK_THROWS_AS(parse("ln(z1)", 1).eval(p), SingularEvaluation);
}

TEST_CASE("metric evaluation") {
  const auto eu = catalog_get("euclidean");
  const support::Point p{{0.2, 0.3}, {-0.1, 0.4}};
  const JetMatrix g = eval_metric(eu.metric, p);
  CHECK((g.values() - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
  CHECK(std::abs(g(0, 0).d1(1)) == 0.0);

  const auto s = catalog_get("gkl_surface");
  const JetMatrix gs = eval_metric(s.metric, support::Point{{0.4, -0.2}, {0, 1}});
  CHECK(std::abs(gs(0, 0).value() - 4.0) < 1e-14);
  CHECK(std::abs(gs(1, 1).value() - 1.0) < 1e-14);
  CHECK_THROWS_AS(eval_metric(s.metric, support::Point{{0, 0}, {0, 0.01}}), DomainError);

  const auto iw = catalog_get("iwasawa");
  const Eigen::MatrixXcd gi = eval_metric(iw.metric, support::Point{{1, 0}, {0, 0}, {0, 0}}).values();
  Eigen::MatrixXcd want(3, 3);
  want << 1, 0, 0, 0, 2, -1, 0, -1, 1;
  CHECK((gi - want).norm() < 1e-14);

  const auto bad = MetricField::from_text("indef", 1, {"-1"});
  CHECK_THROWS_AS(eval_metric(bad, support::Point{{0, 0}}), DegenerateMetric);
  const auto nh = MetricField::from_text("nh", 2, {"1", "z1", "z1", "1"});
  CHECK_THROWS_AS(eval_metric(nh, support::Point{{0.1, 0.2}, {0, 0}}), InvalidInput);
  CHECK_THROWS_AS(MetricField::from_text("short", 2, {"1"}), InvalidInput);
  CHECK_THROWS_AS(MetricField::from_text("syn", 1, {"1 +"}), ParseError);
}
