#pragma once

#include "toda/series.hpp"

#include <complex>
#include <vector>

namespace toda {

// Closed analytic contour around 0, positively oriented: either uniform
// samples of z(theta) on [0, 2pi) or a finite trigonometric polynomial
// z(theta) = sum_f c_f e^{i f theta}.
struct Contour {
  enum class Kind { samples, trig };
  Kind kind = Kind::samples;
  std::vector<std::complex<double>> points;       // samples kind
  std::map<int, std::complex<double>> coeffs;     // trig kind

  // trigonometric interpolant coefficients (DFT of the samples)
  std::map<int, std::complex<double>> fourier() const;
  std::complex<double> value(double theta) const;
  std::complex<double> derivative(double theta) const;
};

// Laurent data of the exterior map w(z) = lead*z + sum_{j>=0} p_j z^{-j}.
struct LaurentMap {
  double lead = 0.0;  // 1/r > 0
  std::vector<std::complex<double>> tail;
};

// Harmonic moments by trapezoid quadrature of the contour integrals
// t0 = (1/2pi i) oint zbar dz,  t_k = (1/2pi i k) oint zbar z^{-k} dz,
// spectrally accurate for analytic contours.  quad_points must be even and
// >= 4n.
MomentVector moments_from_contour(const Contour& c, int n, int quad_points);

// a_0 = -(1/2) d0^2 F(t), a_k = -(1/k) d0 dk F(t) so that
// phi(z) = a_0 + sum a_k z^{-k}.
std::vector<std::complex<double>> phi_coefficients(const TruncatedF& f,
                                                   const MomentVector& t, int J);

// w(z) = e^phi z expanded to lead = e^{a_0} and tail p_0..p_{J-1} by formal
// exponentiation of the z^{-k} series.
LaurentMap exterior_map(const TruncatedF& f, const MomentVector& t, int J);

std::complex<double> eval_map(const LaurentMap& map, std::complex<double> z);

// Images of `samples` uniform boundary points under the map; their moduli
// measure how close the image is to the unit circle.
std::vector<std::complex<double>> boundary_image(const LaurentMap& map,
                                                 const Contour& c, int samples);

nlohmann::json to_json(const LaurentMap& m);
nlohmann::json to_json(const Contour& c);
Contour contour_from_json(const nlohmann::json& j);

}  // namespace toda
