#pragma once

// Planar similitudes z -> scale * R(angle) * F^reflect * z + translation,
// where F is the reflection across the x-axis.

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace fskel {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator-(Point a) { return {-a.x, -a.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;

    double norm() const;
    std::complex<double> as_complex() const { return {x, y}; }
    static Point from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }
};

double distance(Point a, Point b);

class Similitude {
public:
    // Identity map.
    Similitude() = default;

    // `scale` must be positive; `angle` is in radians and is normalized to [0, 2pi).
    Similitude(double scale, double angle, bool reflect, Point translation);

    // z -> lambda * z + t (orientation preserving).
    static Similitude from_complex(std::complex<double> lambda, std::complex<double> t);
    static Similitude identity() { return {}; }

    double scale() const { return scale_; }
    double angle() const { return angle_; }
    bool reflect() const { return reflect_; }
    Point translation() const { return translation_; }

    // Complex multiplier scale * e^{i angle} of the linear part.
    std::complex<double> multiplier() const { return multiplier_; }

    // Row-major 2x2 matrix of the linear part.
    std::array<double, 4> linear_matrix() const;

    Point apply(Point p) const { return apply_linear(p) + translation_; }
    Point operator()(Point p) const { return apply(p); }
    Point apply_linear(Point p) const;

private:
    double scale_ = 1.0;
    double angle_ = 0.0;
    bool reflect_ = false;
    Point translation_{};
    std::complex<double> multiplier_{1.0, 0.0};
};

// f o g
Similitude compose(const Similitude& f, const Similitude& g);
Similitude inverse(const Similitude& f);

// Unique p with f(p) = p. Throws ScaleOneError when |scale - 1| is within
// machine tolerance.
Point fixed_point(const Similitude& f);

// Component-wise closeness: scale, angle (on the circle), translation, and
// equal orientation.
bool approx_eq(const Similitude& f, const Similitude& g, double eps);

// Rounded grid coordinates of a similitude. The linear part is keyed through
// its complex multiplier on a `linear_quantum` grid, the translation on a
// `quantum` grid.
struct MapKey {
    std::array<std::int64_t, 4> cells{};
    bool reflect = false;

    friend auto operator<=>(const MapKey&, const MapKey&) = default;
    friend bool operator==(const MapKey&, const MapKey&) = default;
};

inline constexpr double kDefaultLinearQuantum = 1e-9;

MapKey canonical_key(const Similitude& f, double quantum,
                     double linear_quantum = kDefaultLinearQuantum);

struct MapKeyHash {
    std::size_t operator()(const MapKey& k) const noexcept;
};

}  // namespace fskel
