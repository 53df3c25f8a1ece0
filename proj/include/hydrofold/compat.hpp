#ifndef HYDROFOLD_COMPAT_HPP
#define HYDROFOLD_COMPAT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "energy.hpp"
#include "errors.hpp"
#include "fold.hpp"
#include "seq.hpp"

namespace hydrofold {

// The canonical demonstration input: tuna heme protein 5CYT, 104 residues
// (a leading nonstandard residue recorded as X, then the 103-residue
// chain). Bundled so the compat command works out of the box.
inline Sequence bundled_5cyt() {
    Sequence seq;
    seq.id = "5cyt";
    seq.residues =
        "XGDVAKGKKTFVQKCAQCHTVENGGKHKVGPNLWGLFGRKTGQAEGYSYTDANKSKGIVW"
        "NNDTLMEYLENPKKYIPGTKMIFAGIKKKGERQDLVAYLKSATS";
    return seq;
}

// The three reference energies the disambiguation search targets: the
// unfolded score e and the first two family fold scores E1, E2 reported for
// the 5CYT fixture.
struct CompatTargets {
    double e = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
};

inline CompatTargets compat_reference_targets() {
    return {45194.0, 45145.4743569044, 45048.4522433886};
}

struct CompatResiduals {
    double delta_e = 0.0;
    double delta_e1 = 0.0;
    double delta_e2 = 0.0;

    double l1() const { return std::abs(delta_e) + std::abs(delta_e1) + std::abs(delta_e2); }
};

struct CompatCandidate {
    ConventionSet conventions;
    CompatResiduals residuals;
};

struct CompatResult {
    ConventionSet best;
    CompatResiduals residuals; // residuals of best
    bool exact_match = false;
    std::vector<CompatCandidate> all_candidates; // feasible, ranked by residual
    std::vector<ConventionSet> infeasible;       // skipped length-incompatible combos
};

// The convention set the reference targets uniquely select: all-pairs
// distances over embedded positions, origin prepended with an equal-length
// mask, hydrophobic set {A,F,G,I,L,M,P,T,V}, and the k=2..n_steps fold
// family (102 members for the fixture, whose first member is the k=2 fold).
// compat_search over the full grid reproduces all three targets exactly
// under this set — and under no other — so it is pinned as the CLI's
// --paper-compat mode. Locked by a regression test.
inline ConventionSet compat_pinned_conventions() {
    return {EnergyVariant::all_pairs_h,        OriginPolicy::prepend_origin,
            MaskAlignment::align_equal,        HydrophobicSet::aliphatic_plus_ft,
            UnfoldedInput::embedded_positions, GenerationMode::from_k2};
}

// Exhaustive disambiguation over the full convention grid: the three
// distance variants x 2 origin policies x 3 mask alignments x 4 hydrophobic
// sets x 2 unfolded inputs x 3 generation modes (432 combinations, of which
// 180 are length-feasible). hp_contact is excluded: it is a labeled
// extension, not a reading of the scoring rule being disambiguated.
//
// Residual norm is L1 over (e, E1, E2); exact_match requires |delta_e| <=
// 0.5 (e is printed as an integer) and relative error <= 1e-6 on E1 and E2
// (printed to 10 decimal places). Candidates are ranked by residual with
// ties kept in grid-enumeration order, which makes the winner deterministic.
inline CompatResult compat_search(const Sequence& seq, const CompatTargets& targets) {
    if (seq.size() < 2) throw input_error("compat search needs at least two residues");
    const std::size_t n_steps = seq.size() - 1;

    static constexpr std::array<EnergyVariant, 3> variants = {
        EnergyVariant::consecutive_h, EnergyVariant::all_pairs_h, EnergyVariant::masked_adjacent};
    static constexpr std::array<OriginPolicy, 2> origins = {OriginPolicy::prepend_origin,
                                                            OriginPolicy::no_prepend};
    static constexpr std::array<MaskAlignment, 3> masks = {MaskAlignment::align_drop_first_bit,
                                                           MaskAlignment::align_drop_last_bit,
                                                           MaskAlignment::align_equal};
    static constexpr std::array<HydrophobicSet, 4> hsets = {
        HydrophobicSet::kd_positive, HydrophobicSet::kd_including_G,
        HydrophobicSet::nonpolar_eleven, HydrophobicSet::aliphatic_plus_ft};
    static constexpr std::array<UnfoldedInput, 2> unfoldeds = {UnfoldedInput::raw_steps,
                                                               UnfoldedInput::embedded_positions};
    static constexpr std::array<GenerationMode, 3> modes = {GenerationMode::from_k1,
                                                            GenerationMode::straight_plus_from_k2,
                                                            GenerationMode::from_k2};

    std::array<BinaryProfile, hsets.size()> profiles;
    for (std::size_t i = 0; i < hsets.size(); ++i) profiles[i] = profile_for(seq, hsets[i]);

    std::array<FoldFamily, modes.size()> families;
    for (std::size_t i = 0; i < modes.size(); ++i) families[i] = family_generate(n_steps, modes[i]);

    const StepVector straight = straight_steps(n_steps);

    CompatResult result;
    for (EnergyVariant variant : variants)
        for (OriginPolicy origin : origins)
            for (MaskAlignment mask : masks)
                for (std::size_t h = 0; h < hsets.size(); ++h)
                    for (UnfoldedInput unfolded : unfoldeds)
                        for (std::size_t m = 0; m < modes.size(); ++m) {
                            const ConventionSet conv{variant, origin,   mask,
                                                     hsets[h], unfolded, modes[m]};
                            const BinaryProfile& profile = profiles[h];
                            const FoldFamily& family = families[m];
                            try {
                                if (family.members.size() < 2)
                                    throw input_error("family has fewer than two members");
                                const double e1 = free_energy(embed(family.members[0], origin),
                                                              profile, variant, mask);
                                const double e2 = free_energy(embed(family.members[1], origin),
                                                              profile, variant, mask);
                                const double e =
                                    (unfolded == UnfoldedInput::raw_steps)
                                        ? detail::evaluate_points(detail::steps_as_points(straight),
                                                                  profile, variant, mask)
                                        : free_energy(embed(straight, origin), profile, variant,
                                                      mask);
                                result.all_candidates.push_back(
                                    {conv, {e - targets.e, e1 - targets.e1, e2 - targets.e2}});
                            } catch (const input_error&) {
                                result.infeasible.push_back(conv);
                            }
                        }

    if (result.all_candidates.empty())
        throw input_error("no feasible convention candidates for this sequence");

    std::stable_sort(result.all_candidates.begin(), result.all_candidates.end(),
                     [](const CompatCandidate& a, const CompatCandidate& b) {
                         return a.residuals.l1() < b.residuals.l1();
                     });

    const CompatCandidate& winner = result.all_candidates.front();
    result.best = winner.conventions;
    result.residuals = winner.residuals;

    auto rel_ok = [](double delta, double target) {
        const double scale = std::abs(target);
        return scale > 0.0 ? std::abs(delta) <= 1e-6 * scale : std::abs(delta) <= 1e-6;
    };
    result.exact_match = std::abs(winner.residuals.delta_e) <= 0.5 &&
                         rel_ok(winner.residuals.delta_e1, targets.e1) &&
                         rel_ok(winner.residuals.delta_e2, targets.e2);
    return result;
}

} // namespace hydrofold

#endif
