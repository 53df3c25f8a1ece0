#ifndef HYDROFOLD_SEARCH_HPP
#define HYDROFOLD_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "energy.hpp"
#include "errors.hpp"
#include "fold.hpp"
#include "seq.hpp"

namespace hydrofold {

struct RankedFold {
    std::size_t fold_index = 0;
    double energy = 0.0;
};

// The k lowest-energy folds, ascending; equal energies keep fold order.
struct Ranking {
    std::vector<RankedFold> entries;
};

inline Ranking rank_folds(const EnergyReport& report, std::size_t k) {
    if (report.per_fold.empty()) throw input_error("cannot rank an empty report");
    if (k == 0) throw input_error("k must be at least 1");
    if (k > report.per_fold.size())
        throw input_error("k (" + std::to_string(k) + ") exceeds the family size (" +
                          std::to_string(report.per_fold.size()) + ")");
    Ranking ranking;
    ranking.entries.reserve(report.per_fold.size());
    for (const FoldEnergy& f : report.per_fold) ranking.entries.push_back({f.fold_index, f.energy});
    std::sort(ranking.entries.begin(), ranking.entries.end(),
              [](const RankedFold& a, const RankedFold& b) {
                  if (a.energy != b.energy) return a.energy < b.energy;
                  return a.fold_index < b.fold_index;
              });
    ranking.entries.resize(k);
    return ranking;
}

enum class SearchMethod { exhaustive, anneal };

struct SearchResult {
    StepVector best_steps;
    double best_energy = 0.0;
    std::uint64_t visited = 0; // conformations whose energy was evaluated
    SearchMethod method = SearchMethod::exhaustive;
    std::optional<std::uint64_t> seed; // empty for exhaustive runs
};

// Search operations score a conformation by embedding it with a prepended
// origin and pairing bits to points one-to-one (profile length n gives n-1
// steps and n points), the one alignment that needs no convention choice.

namespace detail {

// Shared depth-first completion of a partial walk. Symmetry reduction is
// baked into the *prefix* construction; from a given prefix all four
// directions are legal until the first turn has happened, after which they
// stay legal (occupancy aside).
struct SawEnumerator {
    const std::uint8_t* bits = nullptr;
    EnergyVariant variant = EnergyVariant::hp_contact;
    std::size_t n_steps = 0;

    std::vector<Point> points; // current partial embedding, origin first
    std::unordered_set<std::uint64_t> occupied;
    std::string directions;

    std::uint64_t visited = 0;
    double best_energy = 0.0;
    std::string best_directions;
    bool have_best = false;

    void reset(std::size_t steps_total) {
        n_steps = steps_total;
        points.clear();
        points.push_back({0, 0});
        occupied.clear();
        occupied.insert(pack_point({0, 0}));
        directions.clear();
        visited = 0;
        have_best = false;
    }

    bool push(Step s) {
        Point next{points.back().x + s.re, points.back().y + s.im};
        if (!occupied.insert(pack_point(next)).second) return false;
        points.push_back(next);
        directions.push_back(direction_char(s));
        return true;
    }

    void pop() {
        occupied.erase(pack_point(points.back()));
        points.pop_back();
        directions.pop_back();
    }

    void leaf() {
        ++visited;
        const double energy = energy_over_points(points, bits, variant);
        if (!have_best || energy < best_energy ||
            (energy == best_energy && directions < best_directions)) {
            best_energy = energy;
            best_directions = directions;
            have_best = true;
        }
    }

    // turned: whether a non-+x step has already been taken. Until then the
    // only legal continuations are +x (stay straight) and +y (make the
    // first turn), which is the symmetry reduction.
    void complete(bool turned) {
        if (directions.size() == n_steps) {
            leaf();
            return;
        }
        static constexpr Step all_steps[4] = {step_right, step_up, step_left, step_down};
        if (!turned) {
            if (push(step_right)) {
                complete(false);
                pop();
            }
            if (push(step_up)) {
                complete(true);
                pop();
            }
            return;
        }
        for (Step s : all_steps) {
            if (!push(s)) continue;
            complete(true);
            pop();
        }
    }
};

struct SawPrefix {
    StepVector steps;
    bool turned = false;
};

// All symmetry-reduced self-avoiding prefixes of the given depth (>= 1):
// the first step is forced to +x, later steps follow the first-turn-is-+y
// rule. When depth equals the full walk length these are complete walks.
inline std::vector<SawPrefix> reduced_prefixes(std::size_t depth) {
    std::vector<SawPrefix> frontier{{StepVector{step_right}, false}};
    for (std::size_t d = 1; d < depth; ++d) {
        std::vector<SawPrefix> next;
        for (const SawPrefix& p : frontier) {
            auto extend = [&](Step s, bool turned) {
                SawPrefix q = p;
                q.steps.push_back(s);
                q.turned = turned;
                // Prefix self-avoidance: rebuild the embedding and check.
                const LatticeEmbedding emb = embed(q.steps, OriginPolicy::prepend_origin);
                if (detect_self_intersections(emb).self_avoiding) next.push_back(std::move(q));
            };
            if (!p.turned) {
                extend(step_right, false);
                extend(step_up, true);
            } else {
                extend(step_right, true);
                extend(step_up, true);
                extend(step_left, true);
                extend(step_down, true);
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

// Best/visited accumulator for one slice of the prefix list.
struct SawPartial {
    std::uint64_t visited = 0;
    bool have_best = false;
    double best_energy = 0.0;
    std::string best_directions;

    void absorb(std::uint64_t count, bool ok, double energy, const std::string& directions) {
        visited += count;
        if (!ok) return;
        if (!have_best || energy < best_energy ||
            (energy == best_energy && directions < best_directions)) {
            best_energy = energy;
            best_directions = directions;
            have_best = true;
        }
    }
};

} // namespace detail

// Exhaustive minimum-energy search over self-avoiding walks with symmetry
// reduction: the first step is fixed to +x and the first turning step, if
// any, to +y (every walk is equivalent to exactly one such walk under
// lattice rotations and reflections). Ties are broken toward the
// lexicographically smallest direction string. The search tree may be split
// across n_workers; the result is identical for any worker count.
inline SearchResult enumerate_saw(const BinaryProfile& profile, EnergyVariant variant,
                                  std::size_t max_steps_guard = 16, unsigned n_workers = 1) {
    if (profile.size() < 2) throw input_error("search needs a profile of at least two residues");
    const std::size_t n_steps = profile.size() - 1;
    if (n_steps > max_steps_guard)
        throw guard_error("exhaustive enumeration over " + std::to_string(n_steps) +
                          " steps exceeds the guard of " + std::to_string(max_steps_guard) +
                          " (raise the guard to proceed)");

    const std::size_t prefix_depth = std::min<std::size_t>(n_steps, 4);
    const std::vector<detail::SawPrefix> prefixes = detail::reduced_prefixes(prefix_depth);

    // One slice of the prefix list, explored depth-first. Each prefix's
    // subtree is enumerated identically no matter which worker owns it, and
    // the merge below is order-independent because (energy, direction) has
    // a unique minimum over distinct walks — hence worker-count invariance.
    auto run_slice = [&](std::size_t first, std::size_t stride) {
        detail::SawEnumerator dfs;
        dfs.bits = profile.bits.data();
        dfs.variant = variant;
        detail::SawPartial acc;
        for (std::size_t i = first; i < prefixes.size(); i += stride) {
            dfs.reset(n_steps);
            for (Step s : prefixes[i].steps) dfs.push(s); // prefixes are self-avoiding
            dfs.complete(prefixes[i].turned);
            acc.absorb(dfs.visited, dfs.have_best, dfs.best_energy, dfs.best_directions);
        }
        return acc;
    };

    const unsigned workers = static_cast<unsigned>(
        std::max<std::size_t>(1, std::min<std::size_t>(n_workers, prefixes.size())));
    std::vector<detail::SawPartial> parts(workers);
    if (workers == 1) {
        parts[0] = run_slice(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] { parts[w] = run_slice(w, workers); });
        for (auto& t : pool) t.join();
    }

    detail::SawPartial merged;
    for (const auto& p : parts)
        merged.absorb(p.visited, p.have_best, p.best_energy, p.best_directions);
    if (!merged.have_best) throw error("enumeration found no walks"); // unreachable

    SearchResult out;
    out.method = SearchMethod::exhaustive;
    out.visited = merged.visited;
    out.best_energy = merged.best_energy;
    out.best_steps = parse_direction_string(merged.best_directions);
    return out;
}

struct AnnealSchedule {
    double initial_temp = 2.0;
    double cooling_factor = 0.995;
    std::uint64_t steps = 20000;
};

// Called once per evaluated conformation; lets tests audit the bookkeeping.
using AnnealObserver = std::function<void(const StepVector&, double)>;

// Simulated annealing over self-avoiding walks with suffix-rotation moves:
// pick a pivot, multiply every step from the pivot on by i, -1, or -i.
// Self-intersecting proposals are rejected without evaluation; Metropolis
// acceptance otherwise. All randomness comes from one seeded mt19937_64
// with explicit modulo/ldexp draws, so a (seed, profile, schedule) triple
// fully determines the result on every platform.
inline SearchResult anneal(const BinaryProfile& profile, EnergyVariant variant,
                           const AnnealSchedule& schedule, std::uint64_t seed,
                           const AnnealObserver& observer = {}) {
    if (profile.size() < 2) throw input_error("search needs a profile of at least two residues");
    if (!(schedule.initial_temp > 0.0) || !std::isfinite(schedule.initial_temp))
        throw input_error("initial_temp must be positive and finite");
    if (!(schedule.cooling_factor > 0.0) || !(schedule.cooling_factor < 1.0))
        throw input_error("cooling_factor must lie in (0, 1)");
    if (schedule.steps == 0) throw input_error("schedule needs at least one step");

    const std::size_t n_steps = profile.size() - 1;
    const std::uint8_t* bits = profile.bits.data();

    auto embedding_of = [](const StepVector& steps) {
        return embed(steps, OriginPolicy::prepend_origin);
    };
    auto energy_of = [&](const LatticeEmbedding& emb) {
        return detail::energy_over_points(emb.points, bits, variant);
    };

    StepVector current = straight_steps(n_steps);
    LatticeEmbedding current_emb = embedding_of(current);
    double current_energy = energy_of(current_emb);

    SearchResult out;
    out.method = SearchMethod::anneal;
    out.seed = seed;
    out.best_steps = current;
    out.best_energy = current_energy;
    out.visited = 1;
    if (observer) observer(current, current_energy);

    std::mt19937_64 rng(seed);
    static constexpr Step rotations[3] = {quarter_turn, reversal, Step{0, -1}};

    double temperature = schedule.initial_temp;
    StepVector proposal;
    for (std::uint64_t t = 0; t < schedule.steps; ++t) {
        const std::size_t pivot = static_cast<std::size_t>(rng() % n_steps);
        const Step rotation = rotations[static_cast<std::size_t>(rng() % 3)];

        proposal = current;
        for (std::size_t i = pivot; i < n_steps; ++i) proposal[i] *= rotation;

        const LatticeEmbedding emb = embedding_of(proposal);
        if (detect_self_intersections(emb).self_avoiding) {
            const double energy = energy_of(emb);
            ++out.visited;
            if (observer) observer(proposal, energy);

            bool accept = energy <= current_energy;
            if (!accept) {
                const double u = std::ldexp(static_cast<double>(rng() >> 11), -53);
                accept = u < std::exp(-(energy - current_energy) / temperature);
            }
            if (accept) {
                current.swap(proposal);
                current_energy = energy;
                if (current_energy < out.best_energy) {
                    out.best_steps = current;
                    out.best_energy = current_energy;
                }
            }
        }
        temperature *= schedule.cooling_factor;
    }
    return out;
}

} // namespace hydrofold

#endif
