#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hydrofold/hydrofold.hpp>

namespace {

using namespace hydrofold;

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot open output file: " + path);
    out << content;
    if (!out) throw input_error("failed writing output file: " + path);
}

// Shared --seq/--input/--format trio. --seq takes residues directly and is
// always raw; --input reads a file in the chosen format.
struct SequenceArgs {
    std::string inline_seq;
    std::string path;
    std::string format = "raw";

    void attach(CLI::App* cmd, bool required) {
        auto* seq_opt = cmd->add_option("--seq", inline_seq, "Residues given inline (raw)");
        auto* input_opt = cmd->add_option("--input", path, "Sequence file to read");
        cmd->add_option("--format", format, "Input file format")
            ->check(CLI::IsMember({"raw", "fasta"}))
            ->needs(input_opt);
        seq_opt->excludes(input_opt);
        if (required) {
            // CLI11 can't express "exactly one of"; resolved in resolve().
        }
        required_ = required;
    }

    bool given() const { return !inline_seq.empty() || !path.empty(); }

    Sequence resolve() const {
        if (!inline_seq.empty()) return parse_sequence(inline_seq, SequenceFormat::raw);
        if (!path.empty())
            return load_sequence(path, format == "fasta" ? SequenceFormat::fasta
                                                         : SequenceFormat::raw);
        if (required_) throw input_error("no sequence given: use --seq or --input");
        return bundled_5cyt();
    }

private:
    bool required_ = true;
};

// The six convention flags, defaulting to the library defaults.
struct ConventionArgs {
    std::string variant = std::string(to_token(ConventionSet{}.variant));
    std::string origin = std::string(to_token(ConventionSet{}.origin_policy));
    std::string mask = std::string(to_token(ConventionSet{}.mask_alignment));
    std::string hset = std::string(to_token(ConventionSet{}.hydrophobic_set));
    std::string unfolded = std::string(to_token(ConventionSet{}.unfolded_input));
    std::string genmode = std::string(to_token(ConventionSet{}.generation_mode));
    bool paper_compat = false;

    void attach(CLI::App* cmd) {
        auto* v = cmd->add_option("--variant", variant, "Energy variant")
                      ->check(CLI::IsMember({"consecutive_h", "all_pairs_h", "masked_adjacent",
                                             "hp_contact"}));
        auto* o = cmd->add_option("--origin", origin, "Origin policy")
                      ->check(CLI::IsMember({"prepend_origin", "no_prepend"}));
        auto* m = cmd->add_option("--mask", mask, "Profile/points alignment")
                      ->check(CLI::IsMember({"align_drop_first_bit", "align_drop_last_bit",
                                             "align_equal"}));
        auto* h = cmd->add_option("--hset", hset, "Hydrophobic residue set")
                      ->check(CLI::IsMember({"kd_positive", "kd_including_G", "nonpolar_eleven",
                                             "aliphatic_plus_ft"}));
        auto* u = cmd->add_option("--unfolded", unfolded, "Unfolded reference input")
                      ->check(CLI::IsMember({"raw_steps", "embedded_positions"}));
        auto* g = cmd->add_option("--genmode", genmode, "Fold family generation mode")
                      ->check(CLI::IsMember({"from_k1", "straight_plus_from_k2", "from_k2"}));
        cmd->add_flag("--paper-compat", paper_compat,
                      "Use the pinned convention set recovered from the bundled reference targets")
            ->excludes(v)
            ->excludes(o)
            ->excludes(m)
            ->excludes(h)
            ->excludes(u)
            ->excludes(g);
    }

    ConventionSet resolve() const {
        if (paper_compat) return compat_pinned_conventions();
        return {parse_variant(variant),          parse_origin(origin),
                parse_mask(mask),                parse_hydrophobic_set(hset),
                parse_unfolded(unfolded),        parse_generation_mode(genmode)};
    }
};

struct EncodeCmd {
    SequenceArgs seq;
    std::string scale_file;
    double threshold = 0.0;
    std::string unknown_policy = "hydrophilic";
    std::string output = "-";

    void attach(CLI::App* cmd) {
        seq.attach(cmd, true);
        cmd->add_option("--scale-file", scale_file,
                        "Hydropathy scale file (default: $HYDROFOLD_SCALE_PATH, then builtin)");
        cmd->add_option("--threshold", threshold, "Hydrophobicity threshold (default 0)");
        cmd->add_option("--unknown-policy", unknown_policy, "Residues absent from the scale")
            ->check(CLI::IsMember({"hydrophilic", "reject"}));
        cmd->add_option("--output,-o", output, "Output path, - for stdout");
    }

    void run() const {
        std::string path = scale_file;
        if (path.empty())
            if (const char* env = std::getenv("HYDROFOLD_SCALE_PATH")) path = env;
        HydropathyScale scale = path.empty() ? builtin_kd_scale() : load_scale(path, threshold);
        scale.threshold = threshold;
        scale.unknown_policy = unknown_policy == "reject" ? UnknownPolicy::reject
                                                          : UnknownPolicy::treat_as_hydrophilic;

        const BinaryProfile profile = encode_binary(seq.resolve(), scale);
        std::string text;
        text.reserve(profile.size() + 32);
        for (auto b : profile.bits) text.push_back(b ? '1' : '0');
        text += "\nhydrophobic_count=" + std::to_string(profile.hydrophobic_count()) + "\n";
        write_output(output, text);
    }
};

struct FamilyEnergyCmd {
    SequenceArgs seq;
    ConventionArgs conv;
    unsigned workers = 1;
    std::string out_format = "csv";
    std::vector<std::size_t> folds;
    std::string output = "-";

    void attach(CLI::App* cmd) {
        seq.attach(cmd, true);
        conv.attach(cmd);
        cmd->add_option("--workers", workers, "Worker threads for fold evaluation")
            ->check(CLI::Range(1u, 256u));
        cmd->add_option("--out-format", out_format, "Report format")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
        cmd->add_option("--folds", folds, "1-based fold indices to render (svg only)")
            ->delimiter(',');
        cmd->add_option("--output,-o", output, "Output path, - for stdout");
    }

    void run() const {
        const Sequence sequence = seq.resolve();
        if (sequence.size() < 2) throw input_error("need at least two residues to fold");
        const ConventionSet conventions = conv.resolve();
        const BinaryProfile profile = profile_for(sequence, conventions.hydrophobic_set);
        const FoldFamily family =
            family_generate(sequence.size() - 1, conventions.generation_mode);

        if (out_format == "svg") {
            write_output(output, to_svg(family, profile, conventions.origin_policy,
                                        conventions.mask_alignment, folds));
            return;
        }
        if (!folds.empty()) throw input_error("--folds applies to --out-format svg only");
        const EnergyReport report = family_energies(family, profile, conventions, workers);
        write_output(output, out_format == "json" ? to_json(report) : to_csv(report));
    }
};

struct CompatCmd {
    SequenceArgs seq;
    ConventionArgs conv; // used only to generate self-consistency targets
    std::vector<double> targets;
    bool self_consistency = false;
    std::string output = "-";

    void attach(CLI::App* cmd) {
        seq.attach(cmd, false); // defaults to the bundled 5CYT fixture
        conv.attach(cmd);
        cmd->add_option("--targets", targets,
                        "Target energies e E1 E2 (default: the bundled reference values, "
                        "fixture only)")
            ->expected(3);
        cmd->add_flag("--self-consistency", self_consistency,
                      "Take targets from this implementation under the convention flags");
        cmd->add_option("--output,-o", output, "Output path for the JSON result, - for stdout");
    }

    void run() const {
        const Sequence sequence = seq.resolve();
        CompatTargets resolved;
        if (self_consistency) {
            if (!targets.empty())
                throw input_error("--self-consistency and --targets are mutually exclusive");
            const ConventionSet conventions = conv.resolve();
            const EnergyReport report = family_energies(
                family_generate(sequence.size() - 1, conventions.generation_mode),
                profile_for(sequence, conventions.hydrophobic_set), conventions);
            if (report.per_fold.size() < 2)
                throw input_error("sequence too short for self-consistency targets");
            resolved = {report.unfolded_energy, report.per_fold[0].energy,
                        report.per_fold[1].energy};
        } else if (!targets.empty()) {
            resolved = {targets[0], targets[1], targets[2]};
        } else if (sequence.residues == bundled_5cyt().residues) {
            resolved = compat_reference_targets();
        } else {
            throw input_error(
                "a non-fixture sequence needs explicit --targets (or --self-consistency)");
        }

        const CompatResult result = compat_search(sequence, resolved);
        write_output(output, to_json(result));

        auto describe = [](const ConventionSet& c) {
            std::string s;
            s += std::string(to_token(c.variant)) + ", " + std::string(to_token(c.origin_policy)) +
                 ", " + std::string(to_token(c.mask_alignment)) + ", " +
                 std::string(to_token(c.hydrophobic_set)) + ", " +
                 std::string(to_token(c.unfolded_input)) + ", " +
                 std::string(to_token(c.generation_mode));
            return s;
        };
        std::cerr << "best conventions: " << describe(result.best) << "\n"
                  << "exact match: " << (result.exact_match ? "yes" : "no")
                  << "  (residuals: de=" << result.residuals.delta_e
                  << ", dE1=" << result.residuals.delta_e1
                  << ", dE2=" << result.residuals.delta_e2 << ")\n"
                  << "candidates ranked: " << result.all_candidates.size() << " feasible, "
                  << result.infeasible.size() << " infeasible skipped\n";
    }
};

struct SearchCmd {
    SequenceArgs seq;
    std::string hp;
    std::string hset = std::string(to_token(HydrophobicSet::kd_positive));
    std::string variant = "hp_contact";
    std::string method = "exhaustive";
    std::size_t guard = 16;
    unsigned workers = 1;
    std::uint64_t seed = 0;
    AnnealSchedule schedule;
    std::string output = "-";

    void attach(CLI::App* cmd) {
        seq.attach(cmd, true);
        cmd->add_option("--hp", hp, "H/P profile given directly (overrides --seq/--input)");
        cmd->add_option("--hset", hset, "Hydrophobic set for sequence input")
            ->check(CLI::IsMember({"kd_positive", "kd_including_G", "nonpolar_eleven",
                                   "aliphatic_plus_ft"}));
        cmd->add_option("--variant", variant, "Energy objective")
            ->check(CLI::IsMember({"consecutive_h", "all_pairs_h", "masked_adjacent",
                                   "hp_contact"}));
        cmd->add_option("--method", method, "Search method")
            ->check(CLI::IsMember({"exhaustive", "anneal"}));
        cmd->add_option("--guard", guard, "Maximum steps for exhaustive enumeration");
        cmd->add_option("--workers", workers, "Worker threads for exhaustive enumeration")
            ->check(CLI::Range(1u, 256u));
        cmd->add_option("--seed", seed, "Random seed for annealing");
        cmd->add_option("--initial-temp", schedule.initial_temp, "Annealing start temperature");
        cmd->add_option("--cooling", schedule.cooling_factor, "Geometric cooling factor");
        cmd->add_option("--steps", schedule.steps, "Annealing proposal count");
        cmd->add_option("--output,-o", output, "Output path for the JSON result, - for stdout");
    }

    void run() const {
        BinaryProfile profile;
        if (!hp.empty()) {
            profile = parse_hp_profile(hp);
        } else {
            profile = profile_for(seq.resolve(), parse_hydrophobic_set(hset));
        }
        const EnergyVariant objective = parse_variant(variant);
        const SearchResult result =
            method == "anneal" ? anneal(profile, objective, schedule, seed)
                               : enumerate_saw(profile, objective, guard, workers);
        write_output(output, to_json(result));
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hydrofold: hydrophobicity-driven lattice fold scoring and search"};
    app.require_subcommand(1);

    EncodeCmd encode_cmd;
    encode_cmd.attach(app.add_subcommand("encode", "Binary hydrophobicity profile of a sequence"));
    FamilyEnergyCmd family_cmd;
    family_cmd.attach(
        app.add_subcommand("family-energy", "Score the deterministic fold family of a sequence"));
    CompatCmd compat_cmd;
    compat_cmd.attach(app.add_subcommand(
        "compat", "Rank convention sets against reference target energies"));
    SearchCmd search_cmd;
    search_cmd.attach(
        app.add_subcommand("search", "Minimum-energy self-avoiding conformation search"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are input errors
    }

    try {
        if (app.got_subcommand("encode")) encode_cmd.run();
        if (app.got_subcommand("family-energy")) family_cmd.run();
        if (app.got_subcommand("compat")) compat_cmd.run();
        if (app.got_subcommand("search")) search_cmd.run();
        return 0;
    } catch (const guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
