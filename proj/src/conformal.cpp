#include "toda/conformal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toda {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const std::complex<double> kI(0.0, 1.0);

}  // namespace

std::map<int, std::complex<double>> Contour::fourier() const {
  if (kind == Kind::trig) return coeffs;
  const int N = static_cast<int>(points.size());
  if (N < 2) throw std::invalid_argument("contour: need at least two samples");
  std::map<int, std::complex<double>> out;
  // direct DFT; contours here are small enough that O(N^2) is immaterial
  for (int f = -N / 2; f < (N + 1) / 2; ++f) {
    std::complex<double> c = 0.0;
    for (int j = 0; j < N; ++j)
      c += points[j] * std::exp(-kI * (kTwoPi * f * j / N));
    c /= static_cast<double>(N);
    if (std::abs(c) > 1e-15) out[f] = c;
  }
  return out;
}

std::complex<double> Contour::value(double theta) const {
  if (kind == Kind::trig) {
    std::complex<double> z = 0.0;
    for (const auto& [f, c] : coeffs) z += c * std::exp(kI * (f * theta));
    return z;
  }
  // exact at sample nodes, trigonometric interpolation elsewhere
  const int N = static_cast<int>(points.size());
  const double step = kTwoPi / N;
  const double idx = theta / step;
  const int j = static_cast<int>(std::llround(idx));
  if (std::abs(idx - j) < 1e-12 && j >= 0 && j < N) return points[j];
  std::complex<double> z = 0.0;
  for (const auto& [f, c] : fourier()) z += c * std::exp(kI * (f * theta));
  return z;
}

std::complex<double> Contour::derivative(double theta) const {
  std::complex<double> z = 0.0;
  for (const auto& [f, c] : fourier())
    z += c * (kI * static_cast<double>(f)) * std::exp(kI * (f * theta));
  return z;
}

MomentVector moments_from_contour(const Contour& c, int n, int quad_points) {
  if (n < 0) throw std::invalid_argument("moments_from_contour: n must be >= 0");
  if (quad_points < std::max(4 * n, 4) || quad_points % 2 != 0)
    throw std::invalid_argument("moments_from_contour: quad_points must be even and >= 4n");

  const auto coeffs = c.fourier();
  const int Q = quad_points;
  std::vector<std::complex<double>> z(Q), dz(Q);
  for (int j = 0; j < Q; ++j) {
    const double theta = kTwoPi * j / Q;
    std::complex<double> v = 0.0, d = 0.0;
    for (const auto& [f, cf] : coeffs) {
      const std::complex<double> e = std::exp(kI * (f * theta));
      v += cf * e;
      d += cf * (kI * static_cast<double>(f)) * e;
    }
    z[j] = v;
    dz[j] = d;
  }

  MomentVector t;
  std::complex<double> area_int = 0.0;
  for (int j = 0; j < Q; ++j) area_int += std::conj(z[j]) * dz[j];
  // (1/2pi i) * (2pi/Q) sum = sum / (i Q)
  t.t0 = (area_int / (kI * static_cast<double>(Q))).real();

  for (int k = 1; k <= n; ++k) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < Q; ++j) acc += std::conj(z[j]) * std::pow(z[j], -k) * dz[j];
    t.t[k] = acc / (kI * static_cast<double>(k) * static_cast<double>(Q));
  }
  return t;
}

std::vector<std::complex<double>> phi_coefficients(const TruncatedF& f,
                                                   const MomentVector& t, int J) {
  if (J < 0) throw std::invalid_argument("phi_coefficients: J must be >= 0");
  if (t.max_index() > f.index_bound)
    throw std::domain_error("phi_coefficients: moments carry indices beyond the truncation");
  if (J > f.index_bound * f.degree_bound)
    throw std::domain_error("phi_coefficients: J exceeds n*K supported by the truncation");

  const FormalSeries F = as_formal(f);
  const FormalSeries d0 = differentiate(F, Variable::t0());
  std::vector<std::complex<double>> a(J + 1);
  a[0] = -0.5 * evaluate(differentiate(d0, Variable::t0()), t);
  for (int k = 1; k <= J; ++k) {
    if (k > f.index_bound) {
      a[k] = 0.0;  // no series monomial carries t_k at this truncation
      continue;
    }
    a[k] = -evaluate(differentiate(d0, Variable::hol(k)), t) / static_cast<double>(k);
  }
  return a;
}

LaurentMap exterior_map(const TruncatedF& f, const MomentVector& t, int J) {
  const auto a = phi_coefficients(f, t, J);
  if (std::abs(a[0].imag()) > 1e-9)
    throw std::domain_error("exterior_map: a0 is not real; moments are inconsistent");

  // exp of sum_{k>=1} a_k x^k via E' = A'E, one coefficient at a time
  std::vector<std::complex<double>> c(J + 1);
  c[0] = 1.0;
  for (int j = 1; j <= J; ++j) {
    std::complex<double> acc = 0.0;
    for (int k = 1; k <= j; ++k) acc += static_cast<double>(k) * a[k] * c[j - k];
    c[j] = acc / static_cast<double>(j);
  }

  LaurentMap map;
  map.lead = std::exp(a[0].real());
  map.tail.resize(J);
  for (int j = 0; j < J; ++j) map.tail[j] = map.lead * c[j + 1];
  return map;
}

std::complex<double> eval_map(const LaurentMap& map, std::complex<double> z) {
  std::complex<double> w = map.lead * z;
  std::complex<double> zinv = 1.0, step = 1.0 / z;
  for (const auto& p : map.tail) {
    w += p * zinv;
    zinv *= step;
  }
  return w;
}

std::vector<std::complex<double>> boundary_image(const LaurentMap& map,
                                                 const Contour& c, int samples) {
  std::vector<std::complex<double>> out;
  if (samples < 1) return out;
  out.reserve(samples);
  const auto coeffs = c.fourier();  // one interpolant for all samples
  for (int s = 0; s < samples; ++s) {
    const double theta = kTwoPi * s / samples;
    std::complex<double> z = 0.0;
    for (const auto& [f, cf] : coeffs) z += cf * std::exp(kI * (f * theta));
    out.push_back(eval_map(map, z));
  }
  return out;
}

nlohmann::json to_json(const LaurentMap& m) {
  nlohmann::json tail = nlohmann::json::array();
  for (const auto& p : m.tail) tail.push_back({p.real(), p.imag()});
  return {{"lead", m.lead}, {"p", tail}};
}

nlohmann::json to_json(const Contour& c) {
  if (c.kind == Contour::Kind::samples) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& z : c.points) pts.push_back({z.real(), z.imag()});
    return {{"kind", "samples"}, {"points", pts}};
  }
  nlohmann::json cf = nlohmann::json::object();
  for (const auto& [f, v] : c.coeffs) cf[std::to_string(f)] = {v.real(), v.imag()};
  return {{"kind", "trig"}, {"coeffs", cf}};
}

Contour contour_from_json(const nlohmann::json& j) {
  Contour c;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "samples") {
    c.kind = Contour::Kind::samples;
    for (const auto& p : j.at("points"))
      c.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (c.points.size() < 2)
      throw std::invalid_argument("contour: need at least two samples");
  } else if (kind == "trig") {
    c.kind = Contour::Kind::trig;
    for (const auto& [f, v] : j.at("coeffs").items())
      c.coeffs[std::stoi(f)] = {v.at(0).get<double>(), v.at(1).get<double>()};
    if (c.coeffs.empty()) throw std::invalid_argument("contour: empty coefficient set");
  } else {
    throw std::invalid_argument("contour: unknown kind \"" + kind + "\"");
  }
  return c;
}

}  // namespace toda
