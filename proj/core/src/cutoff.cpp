#include "vmolab/cutoff.hpp"

#include <cmath>

#include "vmolab/error.hpp"

namespace vmolab::cutoff {

Jet2 operator+(Jet2 a, Jet2 b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
Jet2 operator*(Jet2 a, Jet2 b) { return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2}; }
Jet2 operator*(double c, Jet2 a) { return {c * a.v, c * a.d1, c * a.d2}; }

Jet2 operator/(Jet2 a, Jet2 b) {
  // q = a / b, q' = (a' - q b') / b, q'' = (a'' - 2 q' b' - q b'') / b.
  const double q = a.v / b.v;
  const double q1 = (a.d1 - q * b.d1) / b.v;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
  return {q, q1, q2};
}

namespace {
// Chain rule with outer derivatives f, f', f''.
Jet2 compose(Jet2 a, double f, double f1, double f2) { return {f, f1 * a.d1, f2 * a.d1 * a.d1 + f1 * a.d2}; }
}  // namespace

Jet2 exp(Jet2 a) {
  const double e = std::exp(a.v);
  return compose(a, e, e, e);
}
Jet2 cos(Jet2 a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
Jet2 sin(Jet2 a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }

ZetaCutoff ZetaCutoff::bump(double center, double half_width) {
  if (!(half_width > 0.0)) throw InvalidArgument("cutoff half width must be positive");
  return ZetaCutoff(Kind::kBump, center, 0.0, half_width);
}

ZetaCutoff ZetaCutoff::plateau(double center, double plateau, double half_width) {
  if (!(plateau > 0.0 && half_width > plateau)) throw InvalidArgument("cutoff needs 0 < plateau < half width");
  return ZetaCutoff(Kind::kPlateau, center, plateau, half_width);
}

namespace {
// e^{-1/s} for s > 0, else 0.
Jet2 edge(Jet2 s) {
  if (s.v <= 0.0) return Jet2::constant(0.0);
  return exp(Jet2::constant(-1.0) / s);
}
}  // namespace

Jet2 ZetaCutoff::jet(double y) const {
  const Jet2 u = Jet2::variable(y) - Jet2::constant(center_);
  if (kind_ == Kind::kBump) {
    const Jet2 t = (1.0 / half_width_) * u;
    if (std::abs(t.v) >= 1.0) return Jet2::constant(0.0);
    // exp(1 - 1/(1 - t^2)) equals 1 at t = 0.
    return exp(Jet2::constant(1.0) - Jet2::constant(1.0) / (Jet2::constant(1.0) - t * t));
  }
  const double r = std::abs(u.v);
  if (r <= plateau_) return Jet2::constant(1.0);
  if (r >= half_width_) return Jet2::constant(0.0);
  const Jet2 dist = u.v > 0.0 ? u : -1.0 * u;
  const Jet2 s = (1.0 / (half_width_ - plateau_)) * (Jet2::constant(half_width_) - dist);
  const Jet2 a = edge(s);
  const Jet2 b = edge(Jet2::constant(1.0) - s);
  return a / (a + b);
}

}  // namespace vmolab::cutoff
