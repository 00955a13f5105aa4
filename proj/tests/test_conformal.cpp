#include "toda/conformal.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "doctest.h"

using namespace toda;
using C = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Contour sampled_ellipse(double a, double b, int N) {
  Contour c;
  c.kind = Contour::Kind::samples;
  for (int j = 0; j < N; ++j) {
    const double th = kTwoPi * j / N;
    c.points.emplace_back(a * std::cos(th), b * std::sin(th));
  }
  return c;
}

Contour trig_circle(double rho, C center) {
  Contour c;
  c.kind = Contour::Kind::trig;
  c.coeffs[0] = center;
  c.coeffs[1] = rho;
  return c;
}

// Independent oracle for the harmonic moments: polar quadrature of the area
// integrals over D+ and over the annulus r_b(phi) < r < R, the radial
// integral done in closed form, midpoint rule in the angle.  No contour
// integral or Green identity is involved.
MomentVector polar_moment_oracle(const std::function<double(double)>& rb, int n,
                                 double R, int M) {
  MomentVector t;
  double area2 = 0.0;
  for (int s = 0; s < M; ++s) {
    const double phi = kTwoPi * (s + 0.5) / M;
    area2 += rb(phi) * rb(phi);
  }
  t.t0 = area2 / M;
  for (int k = 1; k <= n; ++k) {
    C acc = 0.0;
    for (int s = 0; s < M; ++s) {
      const double phi = kTwoPi * (s + 0.5) / M;
      const double r = rb(phi);
      const double radial =
          k == 2 ? std::log(R / r)
                 : (std::pow(R, 2 - k) - std::pow(r, 2 - k)) / (2 - k);
      acc += std::exp(C(0.0, -k * phi)) * radial;
    }
    t.t[k] = -acc * (2.0 / static_cast<double>(k)) / static_cast<double>(M);
  }
  return t;
}

double ellipse_radius(double a, double b, double phi) {
  const double cx = b * std::cos(phi), sy = a * std::sin(phi);
  return a * b / std::sqrt(cx * cx + sy * sy);
}

// Laurent coefficients of the inverse of z = rho (w + u/w), by Newton
// iteration at points of a large circle and trapezoid coefficient extraction.
struct JoukowskiOracle {
  double lead;
  std::vector<C> tail;
};

JoukowskiOracle joukowski_inverse(double rho, double u, int J, double L = 4.0,
                                  int M = 1024) {
  auto solve_w = [&](C z) {
    C w = z / rho;
    for (int it = 0; it < 60; ++it) {
      const C fw = rho * (w + u / w) - z;
      const C dfw = rho * (1.0 - u / (w * w));
      const C step = fw / dfw;
      w -= step;
      if (std::abs(step) < 1e-15) break;
    }
    return w;
  };
  JoukowskiOracle o;
  std::vector<C> w(M);
  for (int s = 0; s < M; ++s)
    w[s] = solve_w(L * std::exp(C(0.0, kTwoPi * s / M)));
  auto coef = [&](int j) {  // coefficient of z^{-j} in w(z)
    C acc = 0.0;
    for (int s = 0; s < M; ++s) {
      const C z = L * std::exp(C(0.0, kTwoPi * s / M));
      acc += w[s] * std::pow(z, j);
    }
    return acc / static_cast<double>(M);
  };
  o.lead = coef(-1).real();
  for (int j = 0; j < J; ++j) o.tail.push_back(coef(j));
  return o;
}

}  // namespace

TEST_CASE("moments: centered circle") {
  for (double rho : {0.7, 1.3}) {
    const MomentVector t = moments_from_contour(trig_circle(rho, 0.0), 4, 64);
    CHECK(t.t0 == doctest::Approx(rho * rho).epsilon(1e-13));
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(t.at(k)) <= 1e-13);
  }
}

TEST_CASE("moments: parameter validation") {
  const Contour c = trig_circle(1.0, 0.0);
  CHECK_THROWS_AS(moments_from_contour(c, 4, 15), std::invalid_argument);  // odd
  CHECK_THROWS_AS(moments_from_contour(c, 4, 8), std::invalid_argument);   // < 4n
}

TEST_CASE("moments: ellipse against the polar area-integral oracle") {
  const double a = 1.1, b = 0.9;
  const MomentVector quad = moments_from_contour(sampled_ellipse(a, b, 256), 4, 512);
  const MomentVector oracle = polar_moment_oracle(
      [&](double phi) { return ellipse_radius(a, b, phi); }, 4, 3.0, 8192);

  CHECK(std::abs(quad.t0 - oracle.t0) <= 1e-10);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(quad.at(k) - oracle.at(k)) <= 1e-10);

  // known closed values: t0 = ab, t1 = 0, t2 = (a-b)/(2(a+b)), t3 = t4 = 0
  CHECK(quad.t0 == doctest::Approx(a * b).epsilon(1e-12));
  CHECK(std::abs(quad.at(1)) <= 1e-12);
  CHECK(quad.at(2).real() == doctest::Approx((a - b) / (2 * (a + b))).epsilon(1e-12));
  CHECK(std::abs(quad.at(3)) <= 1e-12);
  CHECK(std::abs(quad.at(4)) <= 1e-12);
}

TEST_CASE("moments: off-center circle against the polar oracle") {
  const double rho = 1.0;
  const C center(0.21, 0.13);
  const MomentVector quad = moments_from_contour(trig_circle(rho, center), 3, 256);
  const MomentVector oracle = polar_moment_oracle(
      [&](double phi) {
        const C e = std::exp(C(0.0, phi));
        const double q = (std::conj(center) * e).real();
        const double p = (std::conj(center) * e).imag();
        return q + std::sqrt(rho * rho - p * p);
      },
      3, 3.0, 8192);
  CHECK(std::abs(quad.t0 - oracle.t0) <= 1e-10);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(quad.at(k) - oracle.at(k)) <= 1e-10);
}

TEST_CASE("moments: spectral convergence in the node count") {
  const double a = 1.2, b = 0.8;
  const double t2_true = (a - b) / (2 * (a + b));
  double previous_error = 1.0;
  for (int Q : {16, 32, 64}) {
    const MomentVector t = moments_from_contour(sampled_ellipse(a, b, Q), 2, Q);
    const double err = std::abs(t.at(2) - C(t2_true, 0.0));
    if (previous_error > 1e-13)  // until roundoff
      CHECK(err * 4.0 <= previous_error);
    previous_error = err;
  }
}

TEST_CASE("phi coefficients on the t0 line") {
  const TruncatedF f = build_f(2, 6);
  MomentVector t;
  t.t0 = 0.49;
  const auto a = phi_coefficients(f, t, 4);
  CHECK(a[0].real() == doctest::Approx(-0.5 * std::log(0.49)).epsilon(1e-14));
  CHECK(std::abs(a[0].imag()) <= 1e-15);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(a[k]) <= 1e-15);

  // degenerate J = 0 returns a0 only
  CHECK(phi_coefficients(f, t, 0).size() == 1);

  // reality of a0 off the line
  MomentVector q;
  q.t0 = 0.5;
  q.t[1] = {0.01, 0.02};
  q.t[2] = {-0.005, 0.001};
  CHECK(std::abs(phi_coefficients(f, q, 2)[0].imag()) <= 1e-14);

  // guard rails
  MomentVector high;
  high.t0 = 0.5;
  high.t[3] = {0.001, 0.0};
  CHECK_THROWS_AS(phi_coefficients(f, high, 2), std::domain_error);
  CHECK_THROWS_AS(phi_coefficients(f, t, 2 * 6 + 1), std::domain_error);
}

TEST_CASE("disk map: pure scaling") {
  const TruncatedF f = build_f(2, 8);
  MomentVector t;
  t.t0 = 0.49;
  const LaurentMap map = exterior_map(f, t, 6);
  CHECK(map.lead == doctest::Approx(1.0 / 0.7).epsilon(1e-13));
  for (const auto& p : map.tail) CHECK(std::abs(p) <= 1e-12);

  const auto images = boundary_image(map, trig_circle(0.7, 0.0), 32);
  REQUIRE(images.size() == 32);
  for (const auto& w : images) CHECK(std::abs(std::abs(w) - 1.0) <= 1e-12);
  CHECK(boundary_image(map, trig_circle(0.7, 0.0), 0).empty());
}

TEST_CASE("ellipse map: Joukowski inverse oracle at adequate truncation") {
  const double a = 1.1, b = 0.9;
  const double rho = (a + b) / 2, u = (a - b) / (a + b);
  const MomentVector t = moments_from_contour(sampled_ellipse(a, b, 256), 2, 512);
  const JoukowskiOracle oracle = joukowski_inverse(rho, u, 6);

  // the n = 2 truncation already reproduces lead, p0, p1, p2; the K = 8 cut
  // of the geometric series in 4|t2|^2 leaves a relative (4 u^2/4)^4 ~ 1e-8
  const TruncatedF f2 = build_f(2, 8);
  const LaurentMap m2 = exterior_map(f2, t, 6);
  CHECK(std::abs(m2.lead - oracle.lead) <= 1e-8);
  CHECK(std::abs(m2.tail[0] - oracle.tail[0]) <= 1e-10);
  CHECK(std::abs(m2.tail[1] - oracle.tail[1]) <= 1e-8);
  CHECK(std::abs(m2.tail[2] - oracle.tail[2]) <= 1e-10);
  CHECK(m2.tail[1].real() == doctest::Approx(-rho * u).epsilon(1e-8));

  // p3 and p5 need the cross-moment derivatives that only enter at n >= 6
  const TruncatedF f6 = build_f(6, 8);
  const LaurentMap m6 = exterior_map(f6, t, 6);
  CHECK(std::abs(m6.lead - oracle.lead) <= 1e-10);
  for (int j = 0; j < 6; ++j) CHECK(std::abs(m6.tail[j] - oracle.tail[j]) <= 1e-3);

  const auto images = boundary_image(m6, sampled_ellipse(a, b, 128), 128);
  for (const auto& w : images) CHECK(std::abs(std::abs(w) - 1.0) <= 2e-3);
}

TEST_CASE("shifted disk: translation enters only through p0") {
  // circle of radius rho around c has moments t0 = rho^2, t1 = conj(c) and
  // nothing else; the exact exterior map is w = (z - c)/rho, so every tail
  // coefficient beyond p0 = -c/rho comes from cancellations a_k = -t1bar^k/k
  const double rho = 0.8;
  const C center(0.15, -0.1);
  const MomentVector t = moments_from_contour(trig_circle(rho, center), 4, 64);
  CHECK(t.t0 == doctest::Approx(rho * rho).epsilon(1e-12));
  CHECK(std::abs(t.at(1) - std::conj(center)) <= 1e-12);
  for (int k = 2; k <= 4; ++k) CHECK(std::abs(t.at(k)) <= 1e-12);

  const TruncatedF f = build_f(6, 8);
  const auto a = phi_coefficients(f, t, 6);
  for (int k = 1; k <= 6; ++k) {
    const C expected = -std::pow(std::conj(t.at(1)), k) / static_cast<double>(k);
    CHECK(std::abs(a[k] - expected) <= 1e-12);
  }

  const LaurentMap map = exterior_map(f, t, 5);
  CHECK(map.lead == doctest::Approx(1.0 / rho).epsilon(1e-12));
  CHECK(std::abs(map.tail[0] - (-center / rho)) <= 1e-12);
  for (int j = 1; j < 5; ++j) CHECK(std::abs(map.tail[j]) <= 1e-11);

  const auto images = boundary_image(map, trig_circle(rho, center), 64);
  for (const auto& w : images) CHECK(std::abs(std::abs(w) - 1.0) <= 1e-10);
}

TEST_CASE("shifted ellipse: mixed t1/t2 moments against a Newton-inverse oracle") {
  // boundary z(w) = rho w + d + rho u / w; its exterior moments occupy
  // t0, t1, t2 only, and the exact inverse is available by Newton iteration
  const double rho = 1.0, u = 0.1;
  const C d(0.12, 0.05);
  Contour c;
  c.kind = Contour::Kind::trig;
  c.coeffs[1] = rho;
  c.coeffs[0] = d;
  c.coeffs[-1] = rho * u;

  const MomentVector probe = moments_from_contour(c, 6, 512);
  for (int k = 3; k <= 6; ++k) CHECK(std::abs(probe.at(k)) <= 1e-12);

  auto solve_w = [&](C z) {
    C w = (z - d) / rho;
    for (int it = 0; it < 80; ++it) {
      const C step =
          (rho * w + d + rho * u / w - z) / (rho - rho * u / (w * w));
      w -= step;
      if (std::abs(step) < 1e-15) break;
    }
    return w;
  };
  const double L = 4.0;
  const int M = 2048;
  std::vector<C> wv(M);
  for (int s = 0; s < M; ++s)
    wv[s] = solve_w(L * std::exp(C(0.0, kTwoPi * s / M)));
  auto oracle_coef = [&](int j) {
    C acc = 0.0;
    for (int s = 0; s < M; ++s)
      acc += wv[s] * std::pow(L * std::exp(C(0.0, kTwoPi * s / M)), j);
    return acc / static_cast<double>(M);
  };

  double previous = 1.0;
  for (int n : {2, 4, 6}) {
    const MomentVector t = moments_from_contour(c, n, 512);
    const LaurentMap map = exterior_map(build_f(n, 8), t, 6);
    double worst = std::abs(map.lead - oracle_coef(-1).real());
    for (int j = 0; j < 6; ++j)
      worst = std::max(worst, std::abs(map.tail[j] - oracle_coef(j)));
    CHECK(worst < previous);  // refining the index bound only helps
    previous = worst;
    if (n == 6) {
      CHECK(worst <= 1e-4);
      double wmod = 0.0;
      for (const auto& img : boundary_image(map, c, 128))
        wmod = std::max(wmod, std::abs(std::abs(img) - 1.0));
      CHECK(wmod <= 1e-2);  // limited by the J = 6 tail cut
    }
  }
}

TEST_CASE("rotation covariance of the map coefficients") {
  const double a = 1.1, b = 0.9;
  const MomentVector t = moments_from_contour(sampled_ellipse(a, b, 256), 2, 512);
  const TruncatedF f = build_f(2, 8);
  const LaurentMap base = exterior_map(f, t, 6);

  const double alpha = std::numbers::pi / 4;
  MomentVector rotated = t;
  for (auto& [k, v] : rotated.t) v *= std::exp(C(0.0, k * alpha));
  const LaurentMap rot = exterior_map(f, rotated, 6);

  CHECK(rot.lead == doctest::Approx(base.lead).epsilon(1e-12));
  for (int j = 0; j < 6; ++j) {
    const C expected = base.tail[j] * std::exp(C(0.0, -(j + 1) * alpha));
    CHECK(std::abs(rot.tail[j] - expected) <= 1e-10);
  }
}

TEST_CASE("map coefficients stabilize in the degree bound") {
  MomentVector t;
  t.t0 = 0.25;
  t.t[1] = {1e-3, 0.0};
  t.t[2] = {1e-3, 0.0};
  LaurentMap prev;
  for (int K = 4; K <= 10; K += 2) {
    const LaurentMap cur = exterior_map(build_f(2, K), t, 4);
    if (K > 4) {
      const double tail_scale = std::ldexp(1.0, -(K - 2));  // 2^{-K_prev}
      CHECK(std::abs(cur.lead - prev.lead) <= tail_scale);
      for (int j = 0; j < 4; ++j)
        CHECK(std::abs(cur.tail[j] - prev.tail[j]) <= tail_scale);
    }
    prev = cur;
  }
}

TEST_CASE("contour JSON round trips") {
  const Contour e = sampled_ellipse(1.1, 0.9, 16);
  const Contour back = contour_from_json(to_json(e));
  REQUIRE(back.kind == Contour::Kind::samples);
  CHECK(back.points == e.points);

  const Contour c = trig_circle(0.7, C(0.1, 0.0));
  const Contour cback = contour_from_json(to_json(c));
  REQUIRE(cback.kind == Contour::Kind::trig);
  CHECK(cback.coeffs == c.coeffs);

  CHECK_THROWS_AS(contour_from_json(nlohmann::json{{"kind", "nope"}}),
                  std::invalid_argument);

  const LaurentMap m{2.0, {C(0.5, 0.0), C(0.0, -1.0)}};
  const nlohmann::json j = to_json(m);
  CHECK(j["lead"] == 2.0);
  CHECK(j["p"].size() == 2);
}
