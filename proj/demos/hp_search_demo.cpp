// Small search demonstration: exhaustively fold a short H/P profile for
// hydrophobic-contact energy, then show annealing landing on the same score.
#include <cstdio>

#include <hydrofold/hydrofold.hpp>

int main() {
    using namespace hydrofold;

    const BinaryProfile profile = parse_hp_profile("HPHPPHHPHPPHPHH");
    std::printf("profile of %zu residues, %zu hydrophobic\n", profile.size(),
                profile.hydrophobic_count());

    const SearchResult exact = enumerate_saw(profile, EnergyVariant::hp_contact);
    std::printf("exhaustive: energy %.0f via %s (%llu conformations)\n", exact.best_energy,
                to_direction_string(exact.best_steps).c_str(),
                static_cast<unsigned long long>(exact.visited));

    const SearchResult annealed =
        anneal(profile, EnergyVariant::hp_contact, AnnealSchedule{}, 7);
    std::printf("annealed:   energy %.0f via %s (%llu evaluations, seed 7)\n",
                annealed.best_energy, to_direction_string(annealed.best_steps).c_str(),
                static_cast<unsigned long long>(annealed.visited));
    return 0;
}
