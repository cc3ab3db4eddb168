/*
 * Copyright (c) 2026 The conelab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <filesystem>
#include <fstream>

#include "common/error.hpp"
#include "doctest.h"
#include "fd/norms.hpp"
#include "fd/operators.hpp"
#include "green/green.hpp"
#include "green/hessian.hpp"
#include "green/report.hpp"
#include "support/generators.hpp"
#include "symcone/symcone.hpp"

using namespace conelab;
using namespace conelab::green;
using conelab::cone::ConeIndex;
using conelab::cone::SymMatrix;
using conelab::fd::Point;

namespace {

double r2(const Point& x, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

const double kFourPi = 4.0 * M_PI;

}  // namespace

TEST_SUITE("fk and psi") {
  TEST_CASE("examples") {
    CHECK(fk_pointwise(SymMatrix::diagonal(std::vector<double>{-2, -2, -2}), ConeIndex(2)) == doctest::Approx(12.0));
    for (int n = 1; n <= 6; ++n)
      for (int k = 1; k <= n; ++k)
        CHECK(fk_pointwise(SymMatrix::identity(n), ConeIndex(k)) == doctest::Approx(cone::binomial(n, k)));
    // D^2 |x| at r: eigenvalues 0 (radial) and 1/r
    const double r = 0.7;
    CHECK(fk_pointwise(SymMatrix::diagonal(std::vector<double>{0.0, 1 / r, 1 / r}), ConeIndex(3)) == 0.0);
  }

  TEST_CASE("F_k agrees with elem_sym of the spectrum") {
    conelab::testing::Gen gen(301);
    for (int t = 0; t < 300; ++t) {
      const int n = gen.integer(2, 6);
      const int k = gen.integer(1, n);
      const auto d = gen.gaussian_vector(n);
      const auto m = SymMatrix::conjugated(gen.orthogonal(n), d);
      const double want = cone::elem_sym(cone::spectrum_of(m), ConeIndex(k));
      CHECK(std::abs(fk_pointwise(m, ConeIndex(k)) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
  }

  TEST_CASE("psi") {
    for (int n = 2; n <= 5; ++n)
      for (int k = 1; k <= n; ++k) {
        CHECK(psi_from_f(n, 1.0, n, ConeIndex(k)) == doctest::Approx(cone::binomial(n, k)));
        CHECK(psi_from_f(0.0, 2.0, n, ConeIndex(k)) == 0.0);
      }
    CHECK(psi_from_f(6.0, 2.0, 3, ConeIndex(2)) == doctest::Approx(3.0));
    CHECK_THROWS_AS(psi_from_f(1.0, 0.0, 3, ConeIndex(2)), DomainError);
    CHECK_THROWS_AS(psi_from_f(1.0, -1.0, 3, ConeIndex(2)), DomainError);
    conelab::testing::Gen gen(302);
    for (int t = 0; t < 100; ++t) {
      const double f = gen.uniform(0.0, 5.0), rho = gen.uniform(0.1, 3.0), d = gen.uniform(0.01, 1.0);
      CHECK(psi_from_f(f + d, rho, 4, ConeIndex(3)) >= psi_from_f(f, rho, 4, ConeIndex(3)));
      CHECK(psi_from_f(f, rho + d, 4, ConeIndex(3)) <= psi_from_f(f, rho, 4, ConeIndex(3)));
    }
  }
}

TEST_SUITE("green's function") {
  TEST_CASE("GreenBallSpec validation") {
    CHECK_THROWS_AS(GreenBallSpec::make(3, 1, 1.0), UnsupportedError);
    CHECK_THROWS_AS(GreenBallSpec::make(3, 2, 0.0), ConfigError);
    CHECK_THROWS_AS(GreenBallSpec::make(3, 2, 1.0, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(GreenBallSpec::make(3, 4, 1.0), RangeError);
    CHECK(GreenBallSpec::make(4, 2, 1.0).log_branch());
    CHECK_FALSE(GreenBallSpec::make(4, 3, 1.0).log_branch());
  }

  TEST_CASE("examples") {
    const auto s = GreenBallSpec::make(3, 2, 1.0);
    CHECK(green_ball(s, std::vector<double>{0.25, 0.0, 0.0}) == doctest::Approx(-1.0 / std::sqrt(kFourPi)).epsilon(1e-14));
    CHECK(-1.0 / std::sqrt(kFourPi) == doctest::Approx(-0.28209).epsilon(1e-5));
    CHECK(green_ball(s, std::vector<double>{0.0, 1.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(green_ball(s, std::vector<double>{0.0, 1.1, 0.0}), DomainError);
    const auto l = GreenBallSpec::make(4, 2, 2.0);
    CHECK(green_ball(l, std::vector<double>{2.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(green_ball(l, std::vector<double>{1.0, 0.0, 0.0, 0.0}) ==
          doctest::Approx(std::log(0.5) / std::sqrt(6.0 * M_PI * M_PI / 2.0)));
    CHECK(std::isinf(green_ball(l, std::vector<double>{0.0, 0.0, 0.0, 0.0})));
    CHECK_THROWS_AS(green_at_center(l), UnsupportedError);
  }

  TEST_CASE("k = n is the cone over the sphere") {
    conelab::testing::Gen gen(303);
    for (int t = 0; t < 200; ++t) {
      const int n = gen.integer(1, 6);
      const double R = gen.uniform(0.1, 3.0);
      std::vector<double> y = gen.gaussian_vector(n);
      const auto s = GreenBallSpec::make(n, n, R, y);
      auto dir = gen.gaussian_vector(n);
      double len = 0.0;
      for (double v : dir) len += v * v;
      len = std::sqrt(len);
      const double rho = gen.uniform(0.0, R);
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = y[i] + rho * dir[i] / len;
      const double want = (rho - R) / std::pow(cone::unit_ball_volume(n), 1.0 / n);
      CHECK(green_ball(s, x) == doctest::Approx(want).epsilon(1e-12).scale(R));
    }
  }

  TEST_CASE("boundary values and radial F_k vanish") {
    for (int n = 2; n <= 6; ++n) {
      for (int k = (n + 1) / 2; k <= n; ++k) {
        for (double R : {0.5, 1.0, 3.0}) {
          const auto s = GreenBallSpec::make(n, k, R);
          std::vector<double> x(n, 0.0);
          x[n - 1] = R;
          CHECK(green_ball(s, x) == 0.0);
          const auto prof = green_profile(s);
          for (double r : prof.samples(200, 1e-3 * R, R - 1e-3 * R)) {
            CHECK(std::abs(radial_fk(n, ConeIndex(k), prof, r)) <= 1e-12);
            x[n - 1] = r;
            CHECK(prof.value(r) == doctest::Approx(green_ball(s, x)).epsilon(1e-13).scale(1.0));
          }
        }
      }
    }
  }

  TEST_CASE("radial F_k examples") {
    for (int n = 2; n <= 5; ++n)
      for (int k = 1; k <= n; ++k)
        CHECK(radial_fk(n, ConeIndex(k), fd::profile_half_r2(), 0.3) == doctest::Approx(cone::binomial(n, k)));
    CHECK(radial_fk(3, ConeIndex(3), fd::profile_power(1.0), 0.4) == 0.0);
    CHECK_THROWS_AS(radial_fk(3, ConeIndex(2), fd::profile_half_r2(), 0.0), DomainError);
  }

  TEST_CASE("inf bound") {
    CHECK(green_inf_bound(3, 2, 2.0) == doctest::Approx(-2.0 * std::sqrt(2.0) / std::sqrt(kFourPi)).epsilon(1e-14));
    CHECK(green_inf_bound(3, 2, 2.0) == doctest::Approx(-0.79788).epsilon(1e-5));
    for (double R : {0.5, 1.0, 2.0}) {
      const auto s = GreenBallSpec::make(3, 2, R);
      CHECK(green_at_center(s) == doctest::Approx(-std::sqrt(R) * 2.0 / std::sqrt(kFourPi)));
      CHECK(green_at_center(s) >= green_inf_bound(3, 2, 2 * R));
      CHECK(green_at_center(s) / green_inf_bound(3, 2, 2 * R) == doctest::Approx(std::sqrt(0.5)));
    }
    for (int n = 1; n <= 6; ++n)
      CHECK(green_inf_bound(n, n, 1.7) == doctest::Approx(-1.7 / std::pow(cone::unit_ball_volume(n), 1.0 / n)));
    CHECK_THROWS_AS(green_inf_bound(4, 2, 1.0), UnsupportedError);
  }

  TEST_CASE("ABP and best constants") {
    CHECK(abp_constant(3, 2, 1.0) == doctest::Approx((2.0 / 3.0) / std::sqrt(kFourPi / 3.0)).epsilon(1e-14));
    CHECK(abp_constant(3, 2, 1.0) == doctest::Approx(0.32573).epsilon(1e-5));
    CHECK(abp_constant(3, 3, 2.0) == doctest::Approx(2.0 / (3.0 * std::cbrt(kFourPi / 3.0))).epsilon(1e-14));
    CHECK(abp_constant(3, 3, 2.0) == doctest::Approx(0.41370).epsilon(5e-4));
    CHECK(best_constant_ball(3, 2, 1.0) == doctest::Approx(abp_constant(3, 2, 2.0) * std::sqrt(0.5)).epsilon(1e-14));
    CHECK(best_constant_ball(3, 2, 1.0) == doctest::Approx(0.325734).epsilon(1e-5));
    CHECK_THROWS_AS(abp_constant(2, 1, 1.0), UnsupportedError);
    CHECK_THROWS_AS(best_constant_ball(4, 2, 1.0), UnsupportedError);

    conelab::testing::Gen gen(304);
    for (int t = 0; t < 300; ++t) {
      const int n = gen.integer(1, 7);
      const int k = gen.integer(n / 2 + 1, n);
      const double d = gen.uniform(0.1, 5.0), lam = gen.uniform(0.1, 4.0);
      const double e = 2.0 - static_cast<double>(n) / k;
      CHECK(abp_constant(n, k, lam * d) == doctest::Approx(std::pow(lam, e) * abp_constant(n, k, d)).epsilon(1e-12));
      CHECK(abp_constant(n, k, d * 1.01) > abp_constant(n, k, d));
      const double R = d / 2;
      const double best = best_constant_ball(n, k, R);
      CHECK(best <= abp_constant(n, k, 2 * R) * (1 + 1e-14));
      CHECK(best == doctest::Approx(abp_constant(n, k, 2 * R) / std::pow(2.0, e)).epsilon(1e-12));
    }
  }

  TEST_CASE("precise bound check") {
    const auto s = GreenBallSpec::make(3, 2, 1.0);
    const auto zero = precise_bound_check(0.0, s, 2.0);
    CHECK(zero.precise.holds());
    CHECK(zero.crude.holds());
    CHECK(zero.crude.rhs >= zero.precise.rhs);
    const auto bad = precise_bound_check(-0.1, s, 0.0);
    CHECK_FALSE(bad.precise.holds());
    CHECK_FALSE(bad.crude.holds());
    CHECK_THROWS_AS(precise_bound_check(0.0, s, -1.0), DomainError);

    // k-convex bubble |x|^2 - 1 for k = n: F_n = 2^n, u(0) = -1.
    for (int n = 2; n <= 5; ++n) {
      const auto sn = GreenBallSpec::make(n, n, 1.0);
      const double psi_int = std::pow(2.0, n) * cone::unit_ball_volume(n);
      const auto c = precise_bound_check(-1.0, sn, psi_int);
      CHECK(c.precise.rhs == doctest::Approx(2.0));
      CHECK(c.precise.margin == doctest::Approx(1.0));
      CHECK(c.crude.margin == doctest::Approx(3.0));
    }
  }
}

TEST_SUITE("contact masks") {
  TEST_CASE("examples") {
    const auto g = fd::build_grid(fd::Domain::unit_ball(3), 0.125);
    const auto bubble = fd::ScalarField::from_function(g, [](const Point& x) { return 1.0 - r2(x, 3); });
    const auto half = fd::ScalarField::from_function(g, [](const Point& x) { return 0.5 * r2(x, 3); });
    for (int k = 1; k <= 3; ++k) {
      CHECK(contact_mask(bubble, ConeIndex(k), ContactKind::Upper).count() == g->interior().size());
      CHECK(contact_mask(half, ConeIndex(k), ContactKind::Upper).count() == 0);
      CHECK(contact_mask(half, ConeIndex(k), ContactKind::Lower).count() == g->interior().size());
    }
    const auto g2 = fd::build_grid(fd::Domain::unit_box(2), 0.125);
    const auto saddle = fd::ScalarField::from_function(g2, [](const Point& x) { return 0.5 * (x[0] * x[0] - x[1] * x[1]); });
    CHECK(contact_mask(saddle, ConeIndex(2), ContactKind::Upper).count() == 0);
    CHECK(contact_mask(saddle, ConeIndex(1), ContactKind::Upper).count() == g2->interior().size());
  }

  TEST_CASE("upper mask of u is the lower mask of -u") {
    conelab::testing::Gen gen(305);
    const auto g = fd::build_grid(fd::Domain::unit_ball(3), 0.1, {true});
    for (int t = 0; t < 6; ++t) {
      const auto a = gen.gaussian_vector(6);
      const auto u = fd::ScalarField::from_function(g, [&](const Point& x) {
        return a[0] * x[0] * x[0] + a[1] * x[1] * x[1] + a[2] * x[2] * x[2] + a[3] * std::sin(3 * x[0] * x[1]) +
               a[4] * std::cos(2 * x[2]) + a[5] * x[0] * x[1] * x[2];
      });
      fd::ScalarField neg(u.grid_ptr());
      for (std::size_t p = 0; p < g->size(); ++p) neg[p] = -u[p];
      for (int k = 1; k <= 3; ++k) {
        const auto up = contact_mask(u, ConeIndex(k), ContactKind::Upper);
        const auto lo = contact_mask(neg, ConeIndex(k), ContactKind::Lower);
        CHECK(up.nodes == lo.nodes);
        if (k > 1) {
          // Gamma_k shrinks with k
          const auto prev = contact_mask(u, ConeIndex(k - 1), ContactKind::Upper);
          CHECK(fd::mask_count(fd::mask_and(up.nodes, prev.nodes)) == up.count());
        }
      }
    }
  }
}

TEST_SUITE("theorem rhs") {
  TEST_CASE("Poisson bubble, k = n = q = 3") {
    const int n = 3;
    const auto g = fd::build_grid(fd::Domain::unit_ball(n), 1.0 / 32);
    const fd::CoeffField lap(g, fd::coeff_identity(n));
    const auto u = fd::ScalarField::from_function(g, [](const Point& x) { return 1.0 - r2(x, 3); });
    const auto f = fd::ScalarField::from_function(g, [](const Point&) { return 6.0; });
    const auto mask = contact_mask(u, ConeIndex(3), ContactKind::Upper);
    const double c = abp_constant(3, 3, 2.0);
    const auto rep = theorem_rhs(u, f, lap, ConeIndex(3), 3.0, mask.nodes, c);
    CHECK(rep.lhs == doctest::Approx(1.0));
    CHECK(rep.norm == doctest::Approx(6.0 * std::cbrt(kFourPi / 3.0)).epsilon(0.02));
    CHECK(rep.rhs == doctest::Approx(4.0).epsilon(0.02));
    CHECK(rep.margin == doctest::Approx(3.0).epsilon(0.03));
    CHECK(rep.mask_size == g->interior().size());
  }

  TEST_CASE("identity coefficients and mask monotonicity") {
    const auto g = fd::build_grid(fd::Domain::unit_ball(2), 0.05);
    const fd::CoeffField lap(g, fd::coeff_identity(2));
    const auto rho = rho_star_field(lap, ConeIndex(2));
    for (std::size_t p : g->interior()) CHECK(rho[p] == doctest::Approx(1.0).epsilon(1e-12));
    const auto u = fd::ScalarField::from_function(g, [](const Point& x) { return std::sin(3 * x[0]) * x[1]; });
    const auto f = fd::ScalarField::from_function(g, [](const Point& x) { return 1.0 + x[0] * x[0]; });
    const auto full = theorem_rhs(u, f, lap, ConeIndex(2), 2.0, g->interior_mask(), 0.5);
    CHECK(full.rhs == doctest::Approx(0.5 * fd::lq_norm(f, 2.0, g->interior_mask())));
    const auto sur = contact_mask(u, ConeIndex(2), ContactKind::Upper);
    const auto part = theorem_rhs(u, f, lap, ConeIndex(2), 2.0, sur.nodes, 0.5);
    CHECK(part.rhs <= full.rhs);
    CHECK(part.mask_size < full.mask_size);
  }

  TEST_CASE("Gilbarg-Serrin rho* field and failures") {
    const auto g = fd::build_grid(fd::Domain::unit_ball(3), 0.125, {true});
    const fd::CoeffField gs(g, fd::coeff_gilbarg_serrin(3, 0.25));
    const auto rho = rho_star_field(gs, ConeIndex(2));
    const double want = cone::rho_star(cone::gs_spectrum(3, 0.25), ConeIndex(2)).value;
    for (std::size_t p : g->interior()) CHECK(rho[p] == doctest::Approx(want).epsilon(1e-9));
    // alpha = 0.75 > 2 - n/k leaves Gamma*_2
    const fd::CoeffField out(g, fd::coeff_gilbarg_serrin(3, 0.75));
    CHECK_THROWS_AS(rho_star_field(out, ConeIndex(2)), DomainError);
    try {
      rho_star_field(out, ConeIndex(2));
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("node") != std::string::npos);
    }
  }
}

TEST_SUITE("reports") {
  TEST_CASE("JSON round trip") {
    const auto r = BoundReport::make(0.75, 0.4137, 9.67, 1234);
    const auto j = to_json(r);
    const auto back = bound_report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.margin == r.margin);
    CHECK(back.rhs == r.rhs);
    CHECK(back.mask_size == 1234);
    auto broken = j;
    broken["margin"] = 0.0;
    CHECK_THROWS_AS(bound_report_from_json(broken), IoError);
    CHECK_THROWS_AS(bound_report_from_json(nlohmann::json::object()), IoError);
  }

  TEST_CASE("mask CSV") {
    const auto g = fd::build_grid(fd::Domain::unit_box(2), 0.25);
    const auto u = fd::ScalarField::from_function(g, [](const Point& x) { return -x[0] * x[0]; });
    const auto m = contact_mask(u, ConeIndex(1), ContactKind::Upper);
    const auto path = (std::filesystem::temp_directory_path() / "conelab_test_mask.csv").string();
    write_mask_csv(m, *g, path);
    std::ifstream is(path);
    std::string line;
    std::size_t rows = 0;
    std::getline(is, line);
    CHECK(line == "x1,x2");
    while (std::getline(is, line)) ++rows;
    CHECK(rows == m.count());
    CHECK(rows == 9);
    std::filesystem::remove(path);
  }
}
