#include "fskel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fskel/error.hpp"

namespace fskel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod can hand back 2pi itself after the shift for tiny negative inputs
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

double angle_gap(double a, double b) {
    double d = std::fabs(normalize_angle(a) - normalize_angle(b));
    return std::min(d, kTwoPi - d);
}

}  // namespace

double Point::norm() const { return std::hypot(x, y); }

double distance(Point a, Point b) { return (a - b).norm(); }

Similitude::Similitude(double scale, double angle, bool reflect, Point translation)
    : scale_(scale),
      angle_(normalize_angle(angle)),
      reflect_(reflect),
      translation_(translation),
      multiplier_(std::polar(scale, angle_)) {}

Similitude Similitude::from_complex(std::complex<double> lambda, std::complex<double> t) {
    return Similitude(std::abs(lambda), std::arg(lambda), false, Point::from_complex(t));
}

std::array<double, 4> Similitude::linear_matrix() const {
    const double a = multiplier_.real();
    const double b = multiplier_.imag();
    if (reflect_) return {a, b, b, -a};
    return {a, -b, b, a};
}

Point Similitude::apply_linear(Point p) const {
    std::complex<double> z = p.as_complex();
    if (reflect_) z = std::conj(z);
    return Point::from_complex(multiplier_ * z);
}

Similitude compose(const Similitude& f, const Similitude& g) {
    const double angle = f.reflect() ? f.angle() - g.angle() : f.angle() + g.angle();
    return Similitude(f.scale() * g.scale(), angle, f.reflect() != g.reflect(),
                      f.apply(g.translation()));
}

Similitude inverse(const Similitude& f) {
    const double angle = f.reflect() ? f.angle() : -f.angle();
    Similitude linear(1.0 / f.scale(), angle, f.reflect(), {});
    return Similitude(linear.scale(), linear.angle(), linear.reflect(),
                      -linear.apply_linear(f.translation()));
}

Point fixed_point(const Similitude& f) {
    if (std::fabs(f.scale() - 1.0) <= 64.0 * std::numeric_limits<double>::epsilon())
        throw ScaleOneError();
    // (I - L) p = t
    const auto m = f.linear_matrix();
    const double a = 1.0 - m[0], b = -m[1], c = -m[2], d = 1.0 - m[3];
    const double det = a * d - b * c;
    const Point t = f.translation();
    return {(d * t.x - b * t.y) / det, (a * t.y - c * t.x) / det};
}

bool approx_eq(const Similitude& f, const Similitude& g, double eps) {
    return f.reflect() == g.reflect() && std::fabs(f.scale() - g.scale()) <= eps &&
           angle_gap(f.angle(), g.angle()) <= eps &&
           distance(f.translation(), g.translation()) <= eps;
}

MapKey canonical_key(const Similitude& f, double quantum, double linear_quantum) {
    auto cell = [](double v, double q) { return static_cast<std::int64_t>(std::llround(v / q)); };
    MapKey key;
    key.cells = {cell(f.multiplier().real(), linear_quantum),
                 cell(f.multiplier().imag(), linear_quantum),
                 cell(f.translation().x, quantum), cell(f.translation().y, quantum)};
    key.reflect = f.reflect();
    return key;
}

std::size_t MapKeyHash::operator()(const MapKey& k) const noexcept {
    std::size_t h = k.reflect ? 0x9e3779b97f4a7c15ULL : 0;
    for (auto c : k.cells)
        h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace fskel
