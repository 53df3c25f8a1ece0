#include <doctest.h>

#include <cmath>
#include <random>

#include <hydrofold/compat.hpp>
#include <hydrofold/energy.hpp>

#include "oracles.hpp"

using namespace hydrofold;

namespace {

BinaryProfile profile_of(std::initializer_list<int> bits) {
    BinaryProfile p;
    p.scale_name = "literal";
    for (int b : bits) p.bits.push_back(static_cast<std::uint8_t>(b));
    return p;
}

// Random self-avoiding walk grown by rejection with restart.
StepVector random_saw(std::mt19937& rng, std::size_t n_steps) {
    static constexpr Step choices[4] = {step_right, step_up, step_left, step_down};
    for (;;) {
        StepVector steps;
        std::vector<Point> pts{{0, 0}};
        bool stuck = false;
        while (steps.size() < n_steps) {
            bool extended = false;
            for (int attempt = 0; attempt < 8 && !extended; ++attempt) {
                const Step s = choices[rng() % 4];
                const Point next{pts.back().x + s.re, pts.back().y + s.im};
                if (std::find(pts.begin(), pts.end(), next) == pts.end()) {
                    pts.push_back(next);
                    steps.push_back(s);
                    extended = true;
                }
            }
            if (!extended) {
                stuck = true;
                break;
            }
        }
        if (!stuck) return steps;
    }
}

BinaryProfile random_bits(std::mt19937& rng, std::size_t n) {
    BinaryProfile p;
    p.scale_name = "random";
    for (std::size_t i = 0; i < n; ++i) p.bits.push_back(static_cast<std::uint8_t>(rng() % 2));
    return p;
}

} // namespace

TEST_CASE("the four variants on the worked four-residue examples") {
    const BinaryProfile profile = profile_of({1, 0, 1, 1});
    const LatticeEmbedding straight = embed(straight_steps(3), OriginPolicy::prepend_origin);

    CHECK(free_energy(straight, profile, EnergyVariant::consecutive_h, MaskAlignment::align_equal) ==
          doctest::Approx(3.0));
    CHECK(free_energy(straight, profile, EnergyVariant::all_pairs_h, MaskAlignment::align_equal) ==
          doctest::Approx(6.0));
    // masked list is (0,0),(0,0),(2,0),(3,0): gaps 0 + 2 + 1
    CHECK(free_energy(straight, profile, EnergyVariant::masked_adjacent,
                      MaskAlignment::align_equal) == doctest::Approx(3.0));

    const LatticeEmbedding square =
        embed(parse_direction_string("RUL"), OriginPolicy::prepend_origin);
    CHECK(free_energy(square, profile_of({1, 0, 0, 1}), EnergyVariant::hp_contact,
                      MaskAlignment::align_equal) == doctest::Approx(-1.0));
}

TEST_CASE("all-zero bits score zero under every variant") {
    const BinaryProfile zeros = profile_of({0, 0, 0, 0});
    const LatticeEmbedding straight = embed(straight_steps(3), OriginPolicy::prepend_origin);
    for (auto variant : {EnergyVariant::consecutive_h, EnergyVariant::all_pairs_h,
                         EnergyVariant::masked_adjacent, EnergyVariant::hp_contact})
        CHECK(free_energy(straight, zeros, variant, MaskAlignment::align_equal) == 0.0);
}

TEST_CASE("mask alignment selects which bits pair with which points") {
    const BinaryProfile profile = profile_of({1, 0, 1, 1});
    const LatticeEmbedding partial = embed(straight_steps(3), OriginPolicy::no_prepend);
    // points (1,0),(2,0),(3,0); drop-first pairs bits [0,1,1], drop-last [1,0,1]
    CHECK(free_energy(partial, profile, EnergyVariant::consecutive_h,
                      MaskAlignment::align_drop_first_bit) == doctest::Approx(1.0));
    CHECK(free_energy(partial, profile, EnergyVariant::consecutive_h,
                      MaskAlignment::align_drop_last_bit) == doctest::Approx(2.0));

    CHECK_THROWS_AS(free_energy(partial, profile, EnergyVariant::consecutive_h,
                                MaskAlignment::align_equal),
                    input_error);
    const LatticeEmbedding full = embed(straight_steps(3), OriginPolicy::prepend_origin);
    CHECK_THROWS_AS(free_energy(full, profile, EnergyVariant::consecutive_h,
                                MaskAlignment::align_drop_first_bit),
                    input_error);
}

TEST_CASE("hp_contact refuses self-intersecting embeddings") {
    const LatticeEmbedding overlapping =
        embed(StepVector{step_up, step_down}, OriginPolicy::prepend_origin);
    CHECK_THROWS_WITH_AS(free_energy(overlapping, profile_of({1, 1, 1}), EnergyVariant::hp_contact,
                                     MaskAlignment::align_equal),
                         doctest::Contains("self-avoiding"), input_error);
}

TEST_CASE("delta_g is the folded-minus-unfolded difference") {
    CHECK(delta_g(45145.4743569044, 45194.0) == doctest::Approx(-48.5256430956).epsilon(1e-12));
    CHECK(delta_g(7.25, 7.25) == 0.0);
    CHECK(delta_g(5.0, 3.0) == 2.0);

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> pick(-1e4, 1e4);
    for (int round = 0; round < 100; ++round) {
        const double a = pick(rng), b = pick(rng);
        CHECK(delta_g(a, b) == -delta_g(b, a));
    }
}

TEST_CASE("family energies at fixture scale under reference-style conventions") {
    const Sequence fixture = bundled_5cyt();

    SUBCASE("pinned conventions reproduce the frozen leading energies") {
        const ConventionSet conv = compat_pinned_conventions();
        const BinaryProfile profile = profile_for(fixture, conv.hydrophobic_set);
        CHECK(profile.hydrophobic_count() == 51);
        const FoldFamily family = family_generate(fixture.size() - 1, conv.generation_mode);
        const EnergyReport report = family_energies(family, profile, conv);
        REQUIRE(report.per_fold.size() == 102);
        CHECK(report.unfolded_energy == doctest::Approx(45194.0).epsilon(1e-12));
        CHECK(report.per_fold[0].energy == doctest::Approx(45145.474356904415).epsilon(1e-12));
        CHECK(report.per_fold[1].energy == doctest::Approx(45048.452243388540).epsilon(1e-12));
        CHECK(report.per_fold[2].energy == doctest::Approx(44952.452243388540).epsilon(1e-12));
        CHECK(report.conventions == conv);
    }

    SUBCASE("default conventions: leading members stay collinear through the first hydrophobic") {
        // With kd_positive the first hydrophobic residue sits at position 4,
        // so the first three multiplier passes keep every hydrophobic point
        // on one line and the all-pairs energy equals the unfolded value.
        ConventionSet conv; // library defaults: all_pairs_h, prepend, equal, kd_positive, from_k1
        const BinaryProfile profile = profile_for(fixture, conv.hydrophobic_set);
        CHECK(profile.hydrophobic_count() == 30);
        const FoldFamily family = family_generate(fixture.size() - 1, conv.generation_mode);
        const EnergyReport report = family_energies(family, profile, conv);
        REQUIRE(report.per_fold.size() == 103);
        CHECK(report.unfolded_energy == doctest::Approx(16475.0).epsilon(1e-12));
        CHECK(report.per_fold[0].energy == doctest::Approx(16475.0).epsilon(1e-12));
        CHECK(report.per_fold[1].energy == doctest::Approx(16475.0).epsilon(1e-12));
        CHECK(report.per_fold[2].energy == doctest::Approx(16475.0).epsilon(1e-12));
    }

    SUBCASE("hydrophobic counts per candidate set") {
        CHECK(profile_for(fixture, HydrophobicSet::kd_positive).hydrophobic_count() == 30);
        CHECK(profile_for(fixture, HydrophobicSet::kd_including_G).hydrophobic_count() == 43);
        CHECK(profile_for(fixture, HydrophobicSet::nonpolar_eleven).hydrophobic_count() == 53);
        CHECK(profile_for(fixture, HydrophobicSet::aliphatic_plus_ft).hydrophobic_count() == 51);
    }

    SUBCASE("kd_positive membership equals thresholding the builtin scale") {
        const BinaryProfile by_set = profile_for(fixture, HydrophobicSet::kd_positive);
        const BinaryProfile by_scale = encode_binary(fixture, builtin_kd_scale());
        CHECK(by_set.bits == by_scale.bits);
    }
}

TEST_CASE("a single straight fold with all-hydrophobic bits scores n-1 consecutively") {
    const std::size_t n = 9;
    FoldFamily family;
    family.generation_mode = GenerationMode::straight_plus_from_k2;
    family.members.push_back(straight_steps(n - 1));
    BinaryProfile ones;
    ones.scale_name = "ones";
    ones.bits.assign(n, 1);
    ConventionSet conv;
    conv.variant = EnergyVariant::consecutive_h;
    const EnergyReport report = family_energies(family, ones, conv);
    CHECK(report.per_fold.at(0).energy == doctest::Approx(double(n - 1)));
}

TEST_CASE("unfolded_input switches the reference between raw steps and embedded positions") {
    const Sequence toy = parse_sequence("VVKV", SequenceFormat::raw);
    const BinaryProfile profile = profile_for(toy, HydrophobicSet::kd_positive);
    const FoldFamily family = family_generate(3, GenerationMode::from_k1);

    ConventionSet conv;
    conv.variant = EnergyVariant::all_pairs_h;
    conv.origin_policy = OriginPolicy::no_prepend;
    conv.mask_alignment = MaskAlignment::align_drop_first_bit;

    conv.unfolded_input = UnfoldedInput::embedded_positions;
    const double embedded = family_energies(family, profile, conv).unfolded_energy;
    conv.unfolded_input = UnfoldedInput::raw_steps;
    const double raw = family_energies(family, profile, conv).unfolded_energy;

    // Straight raw steps are all the same point, so every pair distance is 0.
    CHECK(raw == 0.0);
    CHECK(embedded > 0.0);
}

TEST_CASE("energies match the naive oracles on random folds and profiles") {
    std::mt19937 rng(101);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n_steps = 1 + rng() % 12;
        const StepVector steps = random_saw(rng, n_steps);
        const BinaryProfile profile = random_bits(rng, n_steps + 1);
        const LatticeEmbedding emb = embed(steps, OriginPolicy::prepend_origin);
        for (auto variant : {EnergyVariant::consecutive_h, EnergyVariant::all_pairs_h,
                             EnergyVariant::masked_adjacent, EnergyVariant::hp_contact}) {
            const double got = free_energy(emb, profile, variant, MaskAlignment::align_equal);
            const double want = oracles::energy(emb.points, profile.bits, variant);
            CHECK(std::abs(got - want) <= 1e-12);
        }
    }
}

TEST_CASE("translation and rotation invariance (and the masked variant's deliberate lack of it)") {
    std::mt19937 rng(307);
    bool masked_moved = false;
    for (int round = 0; round < 200; ++round) {
        const std::size_t n_steps = 2 + rng() % 14;
        const StepVector steps = random_saw(rng, n_steps);
        const BinaryProfile profile = random_bits(rng, n_steps + 1);
        const LatticeEmbedding emb = embed(steps, OriginPolicy::prepend_origin);

        const std::int64_t dx = static_cast<std::int64_t>(rng() % 2001) - 1000;
        const std::int64_t dy = static_cast<std::int64_t>(rng() % 2001) - 1000;
        LatticeEmbedding shifted = emb;
        for (Point& p : shifted.points) p = {p.x + dx, p.y + dy};
        LatticeEmbedding rotated = emb;
        for (Point& p : rotated.points) p = {-p.y, p.x};

        for (auto variant : {EnergyVariant::consecutive_h, EnergyVariant::all_pairs_h,
                             EnergyVariant::hp_contact}) {
            const double base = free_energy(emb, profile, variant, MaskAlignment::align_equal);
            CHECK(std::abs(base - free_energy(shifted, profile, variant,
                                              MaskAlignment::align_equal)) <= 1e-9);
            CHECK(std::abs(base - free_energy(rotated, profile, variant,
                                              MaskAlignment::align_equal)) <= 1e-9);
        }

        const double masked_base =
            free_energy(emb, profile, EnergyVariant::masked_adjacent, MaskAlignment::align_equal);
        const double masked_shifted = free_energy(shifted, profile, EnergyVariant::masked_adjacent,
                                                  MaskAlignment::align_equal);
        if (std::abs(masked_base - masked_shifted) > 1e-9) masked_moved = true;

        CHECK(free_energy(emb, profile, EnergyVariant::consecutive_h, MaskAlignment::align_equal) <=
              free_energy(emb, profile, EnergyVariant::all_pairs_h, MaskAlignment::align_equal) +
                  1e-9);
    }
    CHECK(masked_moved); // origin-dependence is part of the contract
}

TEST_CASE("consecutive energy of a straight embedding telescopes to the hydrophobic span") {
    std::mt19937 rng(409);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 2 + rng() % 40;
        const BinaryProfile profile = random_bits(rng, n);
        const auto idx = oracles::hydrophobic_indices(profile.bits);
        const LatticeEmbedding straight = embed(straight_steps(n - 1), OriginPolicy::prepend_origin);
        const double energy =
            free_energy(straight, profile, EnergyVariant::consecutive_h, MaskAlignment::align_equal);
        const double span = idx.size() < 2 ? 0.0 : double(idx.back() - idx.front());
        CHECK(energy == doctest::Approx(span));
    }
}

TEST_CASE("hp_contact is integral and bounded by twice the hydrophobic count") {
    std::mt19937 rng(509);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n_steps = 2 + rng() % 14;
        const StepVector steps = random_saw(rng, n_steps);
        const BinaryProfile profile = random_bits(rng, n_steps + 1);
        const double e = free_energy(embed(steps, OriginPolicy::prepend_origin), profile,
                                     EnergyVariant::hp_contact, MaskAlignment::align_equal);
        CHECK(e == std::floor(e));
        CHECK(e <= 0.0);
        CHECK(e >= -2.0 * double(profile.hydrophobic_count()));
    }
}

TEST_CASE("worker count does not change family_energies results") {
    const Sequence fixture = bundled_5cyt();
    const ConventionSet conv = compat_pinned_conventions();
    const BinaryProfile profile = profile_for(fixture, conv.hydrophobic_set);
    const FoldFamily family = family_generate(fixture.size() - 1, conv.generation_mode);

    const EnergyReport sequential = family_energies(family, profile, conv, 1);
    const EnergyReport parallel = family_energies(family, profile, conv, 4);
    REQUIRE(sequential.per_fold.size() == parallel.per_fold.size());
    CHECK(sequential.unfolded_energy == parallel.unfolded_energy);
    for (std::size_t i = 0; i < sequential.per_fold.size(); ++i) {
        CHECK(sequential.per_fold[i].fold_index == parallel.per_fold[i].fold_index);
        CHECK(sequential.per_fold[i].energy == parallel.per_fold[i].energy);
        CHECK(sequential.per_fold[i].self_avoiding == parallel.per_fold[i].self_avoiding);
    }
}
