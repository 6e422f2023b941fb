#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hermitlab/catalog.hpp"
#include "hermitlab/chern.hpp"
#include "hermitlab/forms.hpp"
#include "support.hpp"

using namespace hermitlab;

namespace {

// Sign of sorting a sequence of distinct directions, 0 on repeats.
int parity(std::vector<int> dirs) {
  int sign = 1;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      if (dirs[i] == dirs[j]) return 0;
      if (dirs[i] > dirs[j]) sign = -sign;
    }
  return sign;
}

}  // namespace

TEST_CASE("wedge basics") {
  const int n = 2;
  CHECK(wedge(Form::dz(n, 0), Form::dz(n, 0)).max_abs() == 0.0);
  const Form a = wedge(Form::dz(n, 0), Form::dzbar(n, 1));
  const Form b = wedge(Form::dzbar(n, 1), Form::dz(n, 0));
  CHECK((a + b).max_abs() == 0.0);
  CHECK(a.degree() == 2);
  // degree overflow is the zero form
  Form top = Form::dz(n, 0) ^ Form::dz(n, 1) ^ Form::dzbar(n, 0) ^ Form::dzbar(n, 1);
  CHECK((top ^ Form::dz(n, 0)).max_abs() == 0.0);
}

TEST_CASE("omega^n / n! against brute-force expansion") {
  const auto e = catalog_get("euclidean");
  const support::Point p{{0.1, 0.2}, {0.3, -0.4}};
  const ChernData c = chern_at(e.metric, p);
  const Form vol = power(c.omega(), 2);
  // expand (i sum dz_a ^ dzbar_a)^2 over ordered pairs of terms
  const int n = 2;
  std::map<Form::Mask, Complex> brute;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const std::vector<int> dirs{a, n + a, b, n + b};
      const int s = parity(dirs);
      if (s == 0) continue;
      Form::Mask m = 0;
      for (int d : dirs) m |= Form::Mask{1} << d;
      brute[m] += Complex(0, 1) * Complex(0, 1) * static_cast<double>(s);
    }
  for (const auto& [m, v] : brute) CHECK(std::abs(vol.coefficient(m).value() * 0.5 - v * 0.5) < 1e-15);
  // standard volume coefficient on dz1^dzbar1^dz2^dzbar2 is i^2 = -1
  const Form::Mask std_mask = 0b1111;
  const int sign = parity({0, 2, 1, 3});
  CHECK(std::abs(vol.coefficient(std_mask).value() / 2.0 * static_cast<double>(sign) - (-1.0)) < 1e-15);
}

TEST_CASE("exterior derivative") {
  const auto e = catalog_get("euclidean");
  const support::Point p{{0.1, 0.2}, {0.3, -0.4}};
  const ChernData c = chern_at(e.metric, p);
  CHECK(c.omega().del().max_abs() < 1e-15);
  CHECK(c.omega().d().max_abs() < 1e-15);

  // d(f dz1) = df ^ dz1 for f = z1 conj(z2)
  const Expr f = parse("z1*conj(z2)", 2);
  const Jet fj = f.eval(p);
  const Form w = fj * Form::dz(2, 0);
  const Form dw = w.d();
  const Form want = Jet(fj.d1(3)) * (Form::dzbar(2, 1) ^ Form::dz(2, 0));
  CHECK((dw.values() - want).max_abs() < 1e-15);

  // d^2 on a 0-form needs the second-order data: d(df) = 0
  const Form df = Form::scalar(2, fj).d();
  CHECK(df.d().max_abs() < 1e-14);
}

TEST_CASE("balanced identity on Iwasawa") {
  const auto e = catalog_get("iwasawa");
  for (const auto& p : support::sample("iwasawa", 20)) CHECK(balanced_identity_residual(chern_at(e.metric, p)) < 1e-9);
}
