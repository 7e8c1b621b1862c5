#pragma once

// Poincare half-plane model of the hyperbolic plane H2 = SL2(R)/SO2.

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypkde {

//! A point z = x + iy of the upper half-plane (y > 0).
class HPoint
{
public:
  HPoint(double x, double y)
    : x_(x)
    , y_(y)
  {
    if (!std::isfinite(x) || !std::isfinite(y))
      throw std::invalid_argument("HPoint: coordinates must be finite");
    if (!(y > 0.0))
      throw std::invalid_argument("HPoint: y must be > 0, got " +
                                  std::to_string(y));
  }

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  friend bool operator==(const HPoint&, const HPoint&) = default;

private:
  double x_;
  double y_;
};

//! Real 2x2 matrix of determinant one, acting by Moebius transformation.
class SL2Matrix
{
public:
  static constexpr double det_tolerance = 1e-9;

  SL2Matrix(double a, double b, double c, double d)
    : a_(a)
    , b_(b)
    , c_(c)
    , d_(d)
  {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
        !std::isfinite(d))
      throw std::invalid_argument("SL2Matrix: entries must be finite");
    const double det = a * d - b * c;
    if (std::abs(det - 1.0) > det_tolerance)
      throw std::invalid_argument("SL2Matrix: determinant " +
                                  std::to_string(det) + " is not 1");
  }

  static SL2Matrix identity() { return { 1.0, 0.0, 0.0, 1.0 }; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }

  SL2Matrix inverse() const { return { d_, -b_, -c_, a_ }; }

  friend SL2Matrix operator*(const SL2Matrix& l, const SL2Matrix& r)
  {
    return { l.a_ * r.a_ + l.b_ * r.c_,
             l.a_ * r.b_ + l.b_ * r.d_,
             l.c_ * r.a_ + l.d_ * r.c_,
             l.c_ * r.b_ + l.d_ * r.d_ };
  }

private:
  double a_, b_, c_, d_;
};

//! Iwasawa coordinates of z: z = n_z a_z (i), with (n_z)_12 = Re z and
//! (a_z)_11 = sqrt(Im z).
struct IwasawaCoords
{
  double n12;
  double a11;
};

//! (az + b) / (cz + d).
inline HPoint
mobius_apply(const SL2Matrix& m, const HPoint& z)
{
  // cz + d = (c x + d) + i c y
  const double re = m.c() * z.x() + m.d();
  const double im = m.c() * z.y();
  const double denom = re * re + im * im;
  // (az + b)(conj(cz + d)), with Im = det * y = y.
  const double num_re =
    (m.a() * z.x() + m.b()) * re + m.a() * z.y() * im;
  const double num_im = m.a() * z.y() * re - (m.a() * z.x() + m.b()) * im;
  return { num_re / denom, num_im / denom };
}

//! k_theta = ((cos, -sin), (sin, cos)).
inline SL2Matrix
rotation(double theta)
{
  if (!std::isfinite(theta))
    throw std::invalid_argument("rotation: angle must be finite");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return { c, -s, s, c };
}

inline IwasawaCoords
iwasawa(const HPoint& z)
{
  return { z.x(), std::sqrt(z.y()) };
}

//! The isometry n_z a_z, which maps i = (0, 1) to z.
inline SL2Matrix
isometry_from_origin(const HPoint& z)
{
  const auto [n12, a11] = iwasawa(z);
  return { a11, n12 / a11, 0.0, 1.0 / a11 };
}

//! Im(k_theta(z)) = y / ((x sin + cos)^2 + (y sin)^2), always > 0.
inline double
rotated_height(double cos_theta, double sin_theta, const HPoint& z)
{
  const double u = z.x() * sin_theta + cos_theta;
  const double v = z.y() * sin_theta;
  return z.y() / (u * u + v * v);
}

inline double
geodesic_dist(const HPoint& z1, const HPoint& z2)
{
  const double dx = z1.x() - z2.x();
  const double dy = z1.y() - z2.y();
  // arcosh(1 + q) written as log1p(q + sqrt(q (q + 2))) to keep precision for
  // nearby points.
  const double q = (dx * dx + dy * dy) / (2.0 * z1.y() * z2.y());
  return std::log1p(q + std::sqrt(q * (q + 2.0)));
}

//! Density of the hyperbolic area element dx dy / y^2.
inline double
volume_weight(const HPoint& z)
{
  return 1.0 / (z.y() * z.y());
}

} // namespace hypkde
