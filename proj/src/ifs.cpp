#include "fskel/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fskel/error.hpp"

namespace fskel {

Ifs::Ifs(std::vector<Similitude> maps, std::string name)
    : maps_(std::move(maps)), name_(std::move(name)) {
    if (maps_.size() < 2) throw ValidationError("maps", "an IFS needs at least two maps");
    for (std::size_t k = 0; k < maps_.size(); ++k) {
        const double s = maps_[k].scale();
        if (!(s > 0.0) || s > kMaxContraction || !std::isfinite(s))
            throw ValidationError("maps[" + std::to_string(k) + "].scale",
                                  "contraction ratio must lie in (0, 1 - 1e-9], got " +
                                      std::to_string(s));
        const Point t = maps_[k].translation();
        if (!std::isfinite(t.x) || !std::isfinite(t.y) || !std::isfinite(maps_[k].angle()))
            throw ValidationError("maps[" + std::to_string(k) + "]", "non-finite parameter");
    }
    inverses_.reserve(maps_.size());
    for (const auto& m : maps_) inverses_.push_back(inverse(m));
    auto [lo, hi] = std::minmax_element(maps_.begin(), maps_.end(),
                                        [](const auto& a, const auto& b) { return a.scale() < b.scale(); });
    min_ratio_ = lo->scale();
    max_ratio_ = hi->scale();
}

BoundingBall bounding_ball(const Ifs& ifs) {
    const Point c = fixed_point(ifs.maps().front());
    double spread = 0.0;
    for (const auto& m : ifs.maps()) spread = std::max(spread, distance(m(c), c));
    double radius = spread / (1.0 - ifs.max_ratio());
    // All maps share the fixed point c, so K = {c}; any radius is invariant.
    if (radius <= 0.0) radius = 1.0;
    return {c, radius};
}

Ifs iterate_ifs(const Ifs& ifs, int n, std::size_t cap) {
    if (n < 1) throw ValidationError("n", "iteration count must be positive");
    double count = std::pow(static_cast<double>(ifs.size()), n);
    if (count > static_cast<double>(cap))
        throw CapExceededError("iterate_ifs: " + std::to_string(ifs.size()) + "^" +
                               std::to_string(n) + " maps exceeds cap " + std::to_string(cap));
    std::vector<Similitude> level = ifs.maps();
    for (int k = 1; k < n; ++k) {
        std::vector<Similitude> next;
        next.reserve(level.size() * ifs.size());
        for (const auto& head : level)
            for (const auto& m : ifs.maps()) next.push_back(compose(head, m));
        level = std::move(next);
    }
    std::string name = ifs.name().empty() ? std::string{} : ifs.name() + "^" + std::to_string(n);
    return Ifs(std::move(level), std::move(name));
}

std::vector<Point> sample_attractor(const Ifs& ifs, int depth, std::size_t cap) {
    if (depth < 0) throw ValidationError("depth", "must be non-negative");
    if (std::pow(static_cast<double>(ifs.size()), depth) > static_cast<double>(cap))
        throw CapExceededError("sample_attractor: " + std::to_string(ifs.size()) + "^" +
                               std::to_string(depth) + " points exceeds cap " + std::to_string(cap));
    std::vector<Point> pts{bounding_ball(ifs).center};
    for (int k = 0; k < depth; ++k) {
        std::vector<Point> next;
        next.reserve(pts.size() * ifs.size());
        // word iJ sorts by its first letter, then by J
        for (const auto& m : ifs.maps())
            for (const auto& p : pts) next.push_back(m(p));
        pts = std::move(next);
    }
    return pts;
}

bool is_uniform_ratio(const Ifs& ifs, double eps) {
    return ifs.max_ratio() - ifs.min_ratio() <= eps;
}

std::optional<SingleMatrixForm> detect_single_matrix(const Ifs& ifs, double eps) {
    const auto& first = ifs.maps().front();
    for (const auto& m : ifs.maps()) {
        if (m.reflect() != first.reflect() || std::abs(m.multiplier() - first.multiplier()) > eps)
            return std::nullopt;
    }
    SingleMatrixForm form{Similitude(first.scale(), first.angle(), first.reflect(), {}), {}};
    const Similitude lin_inv = inverse(form.linear);
    for (const auto& m : ifs.maps()) form.digits.push_back(lin_inv(m.translation()));
    return form;
}

}  // namespace fskel
