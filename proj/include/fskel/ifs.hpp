#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fskel/geometry.hpp"

namespace fskel {

// Letters of the coding alphabet are 1-based: letter k names maps()[k - 1].
using Letter = int;

// Largest admissible contraction ratio.
inline constexpr double kMaxContraction = 1.0 - 1e-9;

inline constexpr std::size_t kDefaultIterateCap = 10'000;
inline constexpr std::size_t kDefaultSampleCap = 400'000;

// An ordered family of at least two strict contractions. Map order is
// significant and never changed.
class Ifs {
public:
    // Throws ValidationError when there are fewer than two maps or a map is not
    // a strict contraction.
    explicit Ifs(std::vector<Similitude> maps, std::string name = {});

    std::size_t size() const { return maps_.size(); }
    const std::vector<Similitude>& maps() const { return maps_; }
    const Similitude& at_letter(Letter k) const { return maps_.at(static_cast<std::size_t>(k - 1)); }
    const Similitude& inverse_at_letter(Letter k) const {
        return inverses_.at(static_cast<std::size_t>(k - 1));
    }
    const std::string& name() const { return name_; }

    double min_ratio() const { return min_ratio_; }
    double max_ratio() const { return max_ratio_; }

private:
    std::vector<Similitude> maps_;
    std::vector<Similitude> inverses_;
    std::string name_;
    double min_ratio_ = 0.0;
    double max_ratio_ = 0.0;
};

struct BoundingBall {
    Point center;
    double radius = 0.0;

    bool contains(Point p, double slack = 0.0) const { return distance(p, center) <= radius + slack; }
};

// Center is the fixed point of the first map, radius max_j |S_j(c) - c| / (1 - r^*),
// so every S_j maps the ball into itself.
BoundingBall bounding_ball(const Ifs& ifs);

// All n-fold compositions S_{i_1} o ... o S_{i_n}, in lexicographic order of the word.
Ifs iterate_ifs(const Ifs& ifs, int n, std::size_t cap = kDefaultIterateCap);

// S_I(center) for every word |I| = depth, lexicographic word order.
std::vector<Point> sample_attractor(const Ifs& ifs, int depth, std::size_t cap = kDefaultSampleCap);

struct SingleMatrixForm {
    Similitude linear;          // the shared linear part rM (zero translation)
    std::vector<Point> digits;  // S_i(z) = rM (z + d_i)
};

bool is_uniform_ratio(const Ifs& ifs, double eps = 1e-9);

// Present iff all maps share one linear part within eps.
std::optional<SingleMatrixForm> detect_single_matrix(const Ifs& ifs, double eps = 1e-9);

}  // namespace fskel
