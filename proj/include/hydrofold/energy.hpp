#ifndef HYDROFOLD_ENERGY_HPP
#define HYDROFOLD_ENERGY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string_view>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "fold.hpp"
#include "seq.hpp"

namespace hydrofold {

// The four readings of "distance between the hydrophobic residues":
//
//   consecutive_h    sum of Euclidean distances between successive
//                    hydrophobic points, in chain order
//   all_pairs_h      sum of Euclidean distances over every unordered pair
//                    of hydrophobic points
//   masked_adjacent  zero out hydrophilic points, then sum |a[x] - a[x+1]|
//                    over the full masked list (origin-dependent on purpose:
//                    a zeroed entry is the literal point (0,0))
//   hp_contact       minus the number of unordered hydrophobic pairs that
//                    are non-adjacent in the chain yet sit on lattice-
//                    adjacent sites; requires a self-avoiding embedding
//
// The three distance variants are alternative readings of the same scoring
// rule; hp_contact is the standard lattice contact objective, included so
// the search module has a physically meaningful target.
enum class EnergyVariant { consecutive_h, all_pairs_h, masked_adjacent, hp_contact };

// Reconciling an N-bit profile with an embedding that may have N or N+1
// points (or N-1 when the origin is not prepended).
enum class MaskAlignment { align_drop_first_bit, align_drop_last_bit, align_equal };

// Candidate hydrophobic residue classifications. These are fixed membership
// sets, not thresholds, because two of them cannot be expressed as any
// hydropathy cutoff.
enum class HydrophobicSet {
    kd_positive,       // {A,C,F,I,L,M,V}: Kyte-Doolittle value > 0
    kd_including_G,    // kd_positive plus glycine
    nonpolar_eleven,   // {A,C,F,G,I,L,M,P,V,W,Y}: the eleven nonpolar side chains
    aliphatic_plus_ft, // {A,F,G,I,L,M,P,T,V}: aliphatic group plus F and T
};

// Whether the unfolded reference energy is computed from the straight
// chain's raw step values (each step read as a lattice point) or from its
// embedded positions.
enum class UnfoldedInput { raw_steps, embedded_positions };

// Every degree of freedom the scoring pipeline leaves open, bundled so a
// result can state exactly how it was produced.
struct ConventionSet {
    EnergyVariant variant = EnergyVariant::all_pairs_h;
    OriginPolicy origin_policy = OriginPolicy::prepend_origin;
    MaskAlignment mask_alignment = MaskAlignment::align_equal;
    HydrophobicSet hydrophobic_set = HydrophobicSet::kd_positive;
    UnfoldedInput unfolded_input = UnfoldedInput::embedded_positions;
    GenerationMode generation_mode = GenerationMode::from_k1;

    friend bool operator==(const ConventionSet&, const ConventionSet&) = default;
};

struct FoldEnergy {
    std::size_t fold_index = 0; // 1-based position within the family
    double energy = 0.0;
    bool self_avoiding = false;
};

struct EnergyReport {
    std::vector<FoldEnergy> per_fold;
    double unfolded_energy = 0.0;
    ConventionSet conventions;
};

inline std::string_view hydrophobic_residues(HydrophobicSet set) {
    switch (set) {
        case HydrophobicSet::kd_positive: return "ACFILMV";
        case HydrophobicSet::kd_including_G: return "ACFGILMV";
        case HydrophobicSet::nonpolar_eleven: return "ACFGILMPVWY";
        case HydrophobicSet::aliphatic_plus_ft: return "AFGILMPTV";
    }
    throw input_error("unknown hydrophobic set");
}

inline std::string_view hydrophobic_set_name(HydrophobicSet set) {
    switch (set) {
        case HydrophobicSet::kd_positive: return "kd_positive";
        case HydrophobicSet::kd_including_G: return "kd_including_G";
        case HydrophobicSet::nonpolar_eleven: return "nonpolar_eleven";
        case HydrophobicSet::aliphatic_plus_ft: return "aliphatic_plus_ft";
    }
    throw input_error("unknown hydrophobic set");
}

// Membership-based encoding used by the convention grid (unknown residues,
// X included, are hydrophilic by construction).
inline BinaryProfile profile_for(const Sequence& seq, HydrophobicSet set) {
    const std::string_view members = hydrophobic_residues(set);
    BinaryProfile profile;
    profile.scale_name = std::string(hydrophobic_set_name(set));
    profile.bits.reserve(seq.size());
    for (char c : seq.residues)
        profile.bits.push_back(members.find(c) != std::string_view::npos ? 1 : 0);
    return profile;
}

namespace detail {

inline double point_distance(Point a, Point b) {
    const double dx = static_cast<double>(a.x - b.x);
    const double dy = static_cast<double>(a.y - b.y);
    return std::sqrt(dx * dx + dy * dy);
}

// View of the profile bits after alignment against n_points points.
inline const std::uint8_t* aligned_bits(const BinaryProfile& profile, std::size_t n_points,
                                        MaskAlignment mask) {
    const std::size_t n_bits = profile.size();
    switch (mask) {
        case MaskAlignment::align_equal:
            if (n_bits != n_points)
                throw input_error("align_equal needs as many bits as points (" +
                                  std::to_string(n_bits) + " bits vs " +
                                  std::to_string(n_points) + " points)");
            return profile.bits.data();
        case MaskAlignment::align_drop_first_bit:
            if (n_bits != n_points + 1)
                throw input_error("align_drop_first_bit needs exactly one bit more than points (" +
                                  std::to_string(n_bits) + " bits vs " +
                                  std::to_string(n_points) + " points)");
            return profile.bits.data() + 1;
        case MaskAlignment::align_drop_last_bit:
            if (n_bits != n_points + 1)
                throw input_error("align_drop_last_bit needs exactly one bit more than points (" +
                                  std::to_string(n_bits) + " bits vs " +
                                  std::to_string(n_points) + " points)");
            return profile.bits.data();
    }
    throw input_error("unknown mask alignment");
}

inline bool has_duplicate_points(const std::vector<Point>& pts) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(pts.size() * 2);
    for (Point p : pts)
        if (!seen.insert(pack_point(p)).second) return true;
    return false;
}

// Core scoring rule over already-aligned points/bits. Summation order is
// fixed (ascending indices, inner loop last) so results are bitwise
// reproducible no matter how callers parallelize around this.
inline double energy_over_points(const std::vector<Point>& pts, const std::uint8_t* bits,
                                 EnergyVariant variant) {
    const std::size_t n = pts.size();
    switch (variant) {
        case EnergyVariant::consecutive_h: {
            double total = 0.0;
            bool have_prev = false;
            Point prev{};
            for (std::size_t i = 0; i < n; ++i) {
                if (!bits[i]) continue;
                if (have_prev) total += point_distance(prev, pts[i]);
                prev = pts[i];
                have_prev = true;
            }
            return total;
        }
        case EnergyVariant::all_pairs_h: {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!bits[i]) continue;
                for (std::size_t j = i + 1; j < n; ++j)
                    if (bits[j]) total += point_distance(pts[i], pts[j]);
            }
            return total;
        }
        case EnergyVariant::masked_adjacent: {
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const Point a = bits[i] ? pts[i] : Point{0, 0};
                const Point b = bits[i + 1] ? pts[i + 1] : Point{0, 0};
                total += point_distance(a, b);
            }
            return total;
        }
        case EnergyVariant::hp_contact: {
            std::int64_t contacts = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!bits[i]) continue;
                for (std::size_t j = i + 2; j < n; ++j) {
                    if (!bits[j]) continue;
                    const std::int64_t dx = pts[i].x - pts[j].x;
                    const std::int64_t dy = pts[i].y - pts[j].y;
                    if (std::abs(dx) + std::abs(dy) == 1) ++contacts;
                }
            }
            return -static_cast<double>(contacts);
        }
    }
    throw input_error("unknown energy variant");
}

inline double evaluate_points(const std::vector<Point>& pts, const BinaryProfile& profile,
                              EnergyVariant variant, MaskAlignment mask) {
    const std::uint8_t* bits = aligned_bits(profile, pts.size(), mask);
    if (variant == EnergyVariant::hp_contact && has_duplicate_points(pts))
        throw input_error("hp_contact requires a self-avoiding embedding");
    return energy_over_points(pts, bits, variant);
}

// Raw step values reinterpreted as lattice points (the literal reading of
// scoring an un-embedded conformation).
inline std::vector<Point> steps_as_points(const StepVector& steps) {
    std::vector<Point> pts;
    pts.reserve(steps.size());
    for (Step s : steps) pts.push_back({s.re, s.im});
    return pts;
}

} // namespace detail

inline double free_energy(const LatticeEmbedding& emb, const BinaryProfile& profile,
                          EnergyVariant variant, MaskAlignment mask) {
    return detail::evaluate_points(emb.points, profile, variant, mask);
}

// folded - unfolded; negative means the fold is the more stable state.
inline double delta_g(double folded, double unfolded) { return folded - unfolded; }

// Score every family member plus the straight-chain reference. Members are
// independent, so they may be split across n_workers threads; per_fold order
// and values are identical for any worker count.
inline EnergyReport family_energies(const FoldFamily& family, const BinaryProfile& profile,
                                    const ConventionSet& conventions, unsigned n_workers = 1) {
    if (family.members.empty()) throw input_error("fold family has no members");
    EnergyReport report;
    report.conventions = conventions;
    report.per_fold.resize(family.members.size());

    auto eval_member = [&](std::size_t idx) {
        const LatticeEmbedding emb = embed(family.members[idx], conventions.origin_policy);
        const double energy =
            free_energy(emb, profile, conventions.variant, conventions.mask_alignment);
        const bool self_avoiding = detect_self_intersections(emb).self_avoiding;
        report.per_fold[idx] = {idx + 1, energy, self_avoiding};
    };

    const std::size_t count = family.members.size();
    if (n_workers <= 1 || count < 2) {
        for (std::size_t idx = 0; idx < count; ++idx) eval_member(idx);
    } else {
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, count));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::exception_ptr first_failure;
        std::mutex failure_mutex;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t idx = w; idx < count; idx += workers) eval_member(idx);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!first_failure) first_failure = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (first_failure) std::rethrow_exception(first_failure);
    }

    const StepVector straight = straight_steps(family.members.front().size());
    if (conventions.unfolded_input == UnfoldedInput::raw_steps) {
        report.unfolded_energy =
            detail::evaluate_points(detail::steps_as_points(straight), profile,
                                    conventions.variant, conventions.mask_alignment);
    } else {
        report.unfolded_energy = free_energy(embed(straight, conventions.origin_policy), profile,
                                             conventions.variant, conventions.mask_alignment);
    }
    return report;
}

} // namespace hydrofold

#endif
