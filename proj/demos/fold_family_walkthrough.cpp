// A tour of the library on the bundled cytochrome sequence: encode it,
// generate the deterministic fold family, score every member, and print the
// most stable conformations next to the unfolded baseline.
#include <cstdio>
#include <string>

#include <hydrofold/hydrofold.hpp>

int main() {
    using namespace hydrofold;

    const Sequence seq = bundled_5cyt();
    std::printf("sequence %s: %zu residues\n", seq.id.c_str(), seq.size());

    const ConventionSet conv = compat_pinned_conventions();
    const BinaryProfile profile = profile_for(seq, conv.hydrophobic_set);
    const std::string set_name(hydrophobic_set_name(conv.hydrophobic_set));
    std::printf("hydrophobic set %s marks %zu residues\n", set_name.c_str(),
                profile.hydrophobic_count());

    const FoldFamily family = family_generate(seq.size() - 1, conv.generation_mode);
    std::printf("fold family: %zu members\n", family.members.size());

    const EnergyReport report = family_energies(family, profile, conv, 4);
    std::printf("unfolded baseline energy: %.4f\n\n", report.unfolded_energy);

    std::printf("five most stable folds:\n");
    for (const RankedFold& f : rank_folds(report, 5).entries)
        std::printf("  fold %3zu  energy %12.4f  delta_G %10.4f\n", f.fold_index, f.energy,
                    delta_g(f.energy, report.unfolded_energy));

    std::printf("\nfirst two members against the reference targets:\n");
    const CompatTargets targets = compat_reference_targets();
    std::printf("  fold 1: %.10f (target %.10f)\n", report.per_fold[0].energy, targets.e1);
    std::printf("  fold 2: %.10f (target %.10f)\n", report.per_fold[1].energy, targets.e2);
    return 0;
}
