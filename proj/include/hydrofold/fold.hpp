#ifndef HYDROFOLD_FOLD_HPP
#define HYDROFOLD_FOLD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace hydrofold {

// A unit step on the square lattice, stored as a Gaussian integer.
// The four legal values are 1, i, -1, -i; multiplying by i rotates a step
// a quarter turn counterclockwise and multiplying by -1 reverses it, which
// is all the algebra fold generation needs.
struct Step {
    int re = 1;
    int im = 0;

    friend constexpr Step operator*(Step a, Step b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    constexpr Step& operator*=(Step b) { return *this = *this * b; }
    friend constexpr bool operator==(Step a, Step b) { return a.re == b.re && a.im == b.im; }
};

inline constexpr Step step_right{1, 0};  //  1: +x
inline constexpr Step step_up{0, 1};     //  i: +y
inline constexpr Step step_left{-1, 0};  // -1: -x
inline constexpr Step step_down{0, -1};  // -i: -y

inline constexpr Step quarter_turn{0, 1}; // multiply to rotate 90 deg ccw
inline constexpr Step reversal{-1, 0};    // multiply to flip a step

using StepVector = std::vector<Step>;

// A lattice point after embedding; 64-bit so long chains cannot overflow.
struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

enum class OriginPolicy { prepend_origin, no_prepend };

// How a family of conformations is produced from the straight chain:
//   from_k1                multiplier passes k = 1..n_steps    (n_steps members)
//   straight_plus_from_k2  the straight chain, then k = 2..n_steps (n_steps members)
//   from_k2                multiplier passes k = 2..n_steps    (n_steps - 1 members)
// Pass k multiplies steps 1..k by i and steps k+1..n_steps by -1, applied
// cumulatively to the running conformation; one member is recorded per pass.
enum class GenerationMode { from_k1, straight_plus_from_k2, from_k2 };

struct FoldFamily {
    std::vector<StepVector> members; // members[j] is fold_index j+1
    GenerationMode generation_mode = GenerationMode::from_k1;
};

inline StepVector straight_steps(std::size_t n_steps) {
    if (n_steps == 0) throw input_error("a conformation needs at least one step");
    return StepVector(n_steps, step_right);
}

namespace detail {

// One multiplier pass, in place: steps[0..k-1] *= i, steps[k..] *= -1 (k is 1-based).
inline void apply_pass(StepVector& conf, std::size_t k) {
    for (std::size_t idx = 0; idx < conf.size(); ++idx)
        conf[idx] *= (idx < k) ? quarter_turn : reversal;
}

} // namespace detail

inline FoldFamily family_generate(std::size_t n_steps, GenerationMode mode) {
    if (n_steps == 0) throw input_error("a fold family needs at least one step");
    FoldFamily family;
    family.generation_mode = mode;
    StepVector conf = straight_steps(n_steps);
    if (mode == GenerationMode::straight_plus_from_k2) family.members.push_back(conf);
    const std::size_t first_k = (mode == GenerationMode::from_k1) ? 1 : 2;
    for (std::size_t k = first_k; k <= n_steps; ++k) {
        detail::apply_pass(conf, k);
        family.members.push_back(conf);
    }
    return family;
}

// Cumulative sum of steps. With prepend_origin the origin is point 0 and the
// embedding has n_steps + 1 points; with no_prepend the first point is the
// first partial sum and the embedding has n_steps points.
struct LatticeEmbedding {
    std::vector<Point> points;
    OriginPolicy origin_policy = OriginPolicy::prepend_origin;

    std::size_t size() const { return points.size(); }
};

inline LatticeEmbedding embed(const StepVector& steps, OriginPolicy policy) {
    if (steps.empty()) throw input_error("cannot embed an empty conformation");
    LatticeEmbedding emb;
    emb.origin_policy = policy;
    emb.points.reserve(steps.size() + 1);
    Point p{0, 0};
    if (policy == OriginPolicy::prepend_origin) emb.points.push_back(p);
    for (Step s : steps) {
        p.x += s.re;
        p.y += s.im;
        emb.points.push_back(p);
    }
    return emb;
}

struct SelfIntersectionReport {
    bool self_avoiding = true;
    std::size_t collision_count = 0;      // points - distinct points
    std::size_t first_collision_index = 0; // 1-based index of the first repeat, 0 if none
};

namespace detail {

inline std::uint64_t pack_point(Point p) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.y));
}

} // namespace detail

inline SelfIntersectionReport detect_self_intersections(const LatticeEmbedding& emb) {
    SelfIntersectionReport report;
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(emb.points.size() * 2);
    for (std::size_t i = 0; i < emb.points.size(); ++i) {
        if (!seen.insert(detail::pack_point(emb.points[i])).second) {
            ++report.collision_count;
            if (report.first_collision_index == 0) report.first_collision_index = i + 1;
        }
    }
    report.self_avoiding = report.collision_count == 0;
    return report;
}

// Direction letters: R = +x, U = +y, L = -x, D = -y.
inline char direction_char(Step s) {
    if (s == step_right) return 'R';
    if (s == step_up) return 'U';
    if (s == step_left) return 'L';
    if (s == step_down) return 'D';
    throw input_error("step is not a unit lattice step");
}

inline std::string to_direction_string(const StepVector& steps) {
    std::string out;
    out.reserve(steps.size());
    for (Step s : steps) out.push_back(direction_char(s));
    return out;
}

inline StepVector parse_direction_string(std::string_view text) {
    if (text.empty()) throw input_error("direction string is empty");
    StepVector steps;
    steps.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'R': steps.push_back(step_right); break;
            case 'U': steps.push_back(step_up); break;
            case 'L': steps.push_back(step_left); break;
            case 'D': steps.push_back(step_down); break;
            default:
                throw input_error("direction string contains '" + std::string(1, c) +
                                  "' (expected R, U, L or D)");
        }
    }
    return steps;
}

} // namespace hydrofold

#endif
