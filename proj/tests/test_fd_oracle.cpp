#include <doctest.h>

#include "hermitlab/catalog.hpp"
#include "hermitlab/fd_oracle.hpp"
#include "support.hpp"

using namespace hermitlab;

TEST_CASE("expression jets agree with finite differences over the catalog") {
  for (const auto& name : support::sweep_names(3)) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 10)) {
      for (const auto& x : e.metric.entries) {
        const FdDeviation d = expr_fd_deviation(x, p);
        CHECK_MESSAGE(d.first < 1e-6, name);
        CHECK_MESSAGE(d.second < 1e-4, name);
      }
    }
  }
}

TEST_CASE("derivative quantities agree with finite differences") {
  for (const auto& name : support::sweep_names(2)) {
    const auto e = catalog_get(name);
    for (const auto& p : sample_points(e.metric, e.region, 3)) {
      const OracleReport r = fd_oracle(e.metric, p);
      CHECK_MESSAGE(r.first() < 1e-5, name);
      CHECK_MESSAGE(r.second() < 1e-3, name);
    }
  }
}

TEST_CASE("a wrong derivative is detected") {
  // a function whose jet would be wrong if conj were treated as holomorphic
  const Expr e = parse("z1*conj(z1)^2", 1);
  const support::Point p{{0.4, 0.3}};
  const FdDeviation d = expr_fd_deviation(e, p);
  CHECK(d.first < 1e-8);
  // compare against a different expression's jet: expect a large deviation
  const Jet j = parse("z1^2*conj(z1)", 1).eval(p);
  const support::Scalar f = [&](const support::Point& q) { return e.eval_value(q); };
  CHECK(std::abs(j.d1(0) - support::wirtinger_fd(f, p, 0)) > 1e-2);
}
