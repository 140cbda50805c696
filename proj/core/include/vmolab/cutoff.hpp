#pragma once

namespace vmolab::cutoff {

/// Second-order forward-mode jet: value, first and second derivative.
struct Jet2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static Jet2 constant(double c) { return {c, 0.0, 0.0}; }
  static Jet2 variable(double x) { return {x, 1.0, 0.0}; }
};

Jet2 operator+(Jet2 a, Jet2 b);
Jet2 operator-(Jet2 a, Jet2 b);
Jet2 operator*(Jet2 a, Jet2 b);
Jet2 operator/(Jet2 a, Jet2 b);
Jet2 operator*(double c, Jet2 a);
Jet2 exp(Jet2 a);
Jet2 cos(Jet2 a);
Jet2 sin(Jet2 a);

/// Smooth compactly supported cutoff on the line.
///   kBump:    exp(-1 / (1 - t^2)) with t = (y - center) / half_width, normalized to 1 at the center.
///   kPlateau: 1 on |y - center| <= plateau, 0 beyond half_width, joined by the
///             smooth step s -> e^{-1/s} / (e^{-1/s} + e^{-1/(1-s)}).
class ZetaCutoff {
 public:
  enum class Kind { kBump, kPlateau };

  static ZetaCutoff bump(double center, double half_width);
  static ZetaCutoff plateau(double center, double plateau, double half_width);

  Jet2 jet(double y) const;
  double operator()(double y) const { return jet(y).v; }

  Kind kind() const noexcept { return kind_; }
  double center() const noexcept { return center_; }
  double half_width() const noexcept { return half_width_; }
  double plateau_half_width() const noexcept { return plateau_; }
  double support_lo() const noexcept { return center_ - half_width_; }
  double support_hi() const noexcept { return center_ + half_width_; }

 private:
  ZetaCutoff(Kind kind, double center, double plateau, double half_width)
      : kind_(kind), center_(center), plateau_(plateau), half_width_(half_width) {}

  Kind kind_;
  double center_;
  double plateau_;
  double half_width_;
};

}  // namespace vmolab::cutoff
