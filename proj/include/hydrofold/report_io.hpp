#ifndef HYDROFOLD_REPORT_IO_HPP
#define HYDROFOLD_REPORT_IO_HPP

#include <algorithm>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "compat.hpp"
#include "energy.hpp"
#include "errors.hpp"
#include "fold.hpp"
#include "search.hpp"
#include "seq.hpp"

namespace hydrofold {

// ---- enum <-> token maps (shared by JSON, CLI flags, summaries) ----

inline std::string_view to_token(EnergyVariant v) {
    switch (v) {
        case EnergyVariant::consecutive_h: return "consecutive_h";
        case EnergyVariant::all_pairs_h: return "all_pairs_h";
        case EnergyVariant::masked_adjacent: return "masked_adjacent";
        case EnergyVariant::hp_contact: return "hp_contact";
    }
    throw input_error("unknown energy variant");
}

inline std::string_view to_token(OriginPolicy p) {
    return p == OriginPolicy::prepend_origin ? "prepend_origin" : "no_prepend";
}

inline std::string_view to_token(MaskAlignment m) {
    switch (m) {
        case MaskAlignment::align_drop_first_bit: return "align_drop_first_bit";
        case MaskAlignment::align_drop_last_bit: return "align_drop_last_bit";
        case MaskAlignment::align_equal: return "align_equal";
    }
    throw input_error("unknown mask alignment");
}

inline std::string_view to_token(HydrophobicSet s) { return hydrophobic_set_name(s); }

inline std::string_view to_token(UnfoldedInput u) {
    return u == UnfoldedInput::raw_steps ? "raw_steps" : "embedded_positions";
}

inline std::string_view to_token(GenerationMode m) {
    switch (m) {
        case GenerationMode::from_k1: return "from_k1";
        case GenerationMode::straight_plus_from_k2: return "straight_plus_from_k2";
        case GenerationMode::from_k2: return "from_k2";
    }
    throw input_error("unknown generation mode");
}

inline std::string_view to_token(SearchMethod m) {
    return m == SearchMethod::exhaustive ? "exhaustive" : "anneal";
}

namespace detail {

template <typename Enum, std::size_t N>
Enum parse_token(std::string_view text, const std::array<Enum, N>& values, std::string_view what) {
    for (Enum v : values)
        if (to_token(v) == text) return v;
    throw input_error("unknown " + std::string(what) + " '" + std::string(text) + "'");
}

} // namespace detail

inline EnergyVariant parse_variant(std::string_view text) {
    return detail::parse_token(text,
                               std::array{EnergyVariant::consecutive_h, EnergyVariant::all_pairs_h,
                                          EnergyVariant::masked_adjacent, EnergyVariant::hp_contact},
                               "energy variant");
}

inline OriginPolicy parse_origin(std::string_view text) {
    return detail::parse_token(
        text, std::array{OriginPolicy::prepend_origin, OriginPolicy::no_prepend}, "origin policy");
}

inline MaskAlignment parse_mask(std::string_view text) {
    return detail::parse_token(text,
                               std::array{MaskAlignment::align_drop_first_bit,
                                          MaskAlignment::align_drop_last_bit,
                                          MaskAlignment::align_equal},
                               "mask alignment");
}

inline HydrophobicSet parse_hydrophobic_set(std::string_view text) {
    return detail::parse_token(
        text,
        std::array{HydrophobicSet::kd_positive, HydrophobicSet::kd_including_G,
                   HydrophobicSet::nonpolar_eleven, HydrophobicSet::aliphatic_plus_ft},
        "hydrophobic set");
}

inline UnfoldedInput parse_unfolded(std::string_view text) {
    return detail::parse_token(
        text, std::array{UnfoldedInput::raw_steps, UnfoldedInput::embedded_positions},
        "unfolded input");
}

inline GenerationMode parse_generation_mode(std::string_view text) {
    return detail::parse_token(text,
                               std::array{GenerationMode::from_k1,
                                          GenerationMode::straight_plus_from_k2,
                                          GenerationMode::from_k2},
                               "generation mode");
}

// ---- CSV / JSON ----

namespace detail {

inline std::string format_energy(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10f", value);
    return buf;
}

} // namespace detail

// CSV rendering: a comment line carrying the unfolded reference, then one
// row per fold. Energies are printed with 10 decimal places.
inline std::string to_csv(const EnergyReport& report) {
    std::string out;
    out += "# unfolded_energy=" + detail::format_energy(report.unfolded_energy) + "\n";
    out += "fold_index,energy,self_avoiding\n";
    for (const FoldEnergy& f : report.per_fold) {
        out += std::to_string(f.fold_index);
        out += ',';
        out += detail::format_energy(f.energy);
        out += ',';
        out += f.self_avoiding ? "true" : "false";
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json conventions_to_json(const ConventionSet& c) {
    return {{"variant", to_token(c.variant)},
            {"origin_policy", to_token(c.origin_policy)},
            {"mask_alignment", to_token(c.mask_alignment)},
            {"hydrophobic_set", to_token(c.hydrophobic_set)},
            {"unfolded_input", to_token(c.unfolded_input)},
            {"generation_mode", to_token(c.generation_mode)}};
}

inline ConventionSet conventions_from_json(const nlohmann::json& j) {
    ConventionSet c;
    c.variant = parse_variant(j.at("variant").get<std::string>());
    c.origin_policy = parse_origin(j.at("origin_policy").get<std::string>());
    c.mask_alignment = parse_mask(j.at("mask_alignment").get<std::string>());
    c.hydrophobic_set = parse_hydrophobic_set(j.at("hydrophobic_set").get<std::string>());
    c.unfolded_input = parse_unfolded(j.at("unfolded_input").get<std::string>());
    c.generation_mode = parse_generation_mode(j.at("generation_mode").get<std::string>());
    return c;
}

inline std::string to_json(const EnergyReport& report) {
    nlohmann::ordered_json j;
    j["conventions"] = conventions_to_json(report.conventions);
    j["unfolded_energy"] = report.unfolded_energy;
    auto& folds = j["folds"] = nlohmann::ordered_json::array();
    for (const FoldEnergy& f : report.per_fold)
        folds.push_back({{"fold_index", f.fold_index},
                         {"energy", f.energy},
                         {"self_avoiding", f.self_avoiding}});
    return j.dump(2) + "\n";
}

inline std::string to_json(const CompatResult& result) {
    auto residuals_json = [](const CompatResiduals& r) {
        return nlohmann::ordered_json{
            {"delta_e", r.delta_e}, {"delta_e1", r.delta_e1}, {"delta_e2", r.delta_e2}};
    };
    nlohmann::ordered_json j;
    j["best"] = conventions_to_json(result.best);
    j["residuals"] = residuals_json(result.residuals);
    j["exact_match"] = result.exact_match;
    auto& candidates = j["all_candidates"] = nlohmann::ordered_json::array();
    for (const CompatCandidate& c : result.all_candidates)
        candidates.push_back({{"conventions", conventions_to_json(c.conventions)},
                              {"residuals", residuals_json(c.residuals)}});
    j["infeasible_count"] = result.infeasible.size();
    auto& infeasible = j["infeasible"] = nlohmann::ordered_json::array();
    for (const ConventionSet& c : result.infeasible) infeasible.push_back(conventions_to_json(c));
    return j.dump(2) + "\n";
}

inline std::string to_json(const SearchResult& result) {
    nlohmann::ordered_json j;
    j["direction"] = to_direction_string(result.best_steps);
    j["energy"] = result.best_energy;
    j["visited"] = result.visited;
    j["method"] = to_token(result.method);
    if (result.seed)
        j["seed"] = *result.seed;
    else
        j["seed"] = nullptr;
    return j.dump(2) + "\n";
}

// ---- SVG ----

// One polyline per rendered fold, a circle on every hydrophobic vertex,
// viewBox fitted to the union bounding box. fold_indices selects 1-based
// members; empty means all. Pure function of its inputs, so output bytes
// are stable.
inline std::string to_svg(const FoldFamily& family, const BinaryProfile& profile,
                          OriginPolicy origin_policy, MaskAlignment mask,
                          const std::vector<std::size_t>& fold_indices = {}) {
    if (family.members.empty()) throw input_error("fold family has no members");
    std::vector<std::size_t> selected = fold_indices;
    if (selected.empty())
        for (std::size_t i = 1; i <= family.members.size(); ++i) selected.push_back(i);
    for (std::size_t idx : selected)
        if (idx == 0 || idx > family.members.size())
            throw input_error("fold index " + std::to_string(idx) + " is out of range (family has " +
                              std::to_string(family.members.size()) + " members)");

    struct Rendered {
        LatticeEmbedding emb;
        const std::uint8_t* bits;
    };
    std::vector<Rendered> rendered;
    rendered.reserve(selected.size());
    std::int64_t min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    for (std::size_t idx : selected) {
        Rendered r{embed(family.members[idx - 1], origin_policy), nullptr};
        r.bits = detail::aligned_bits(profile, r.emb.points.size(), mask);
        for (Point p : r.emb.points) {
            if (first) {
                min_x = max_x = p.x;
                min_y = max_y = p.y;
                first = false;
            } else {
                min_x = std::min(min_x, p.x);
                max_x = std::max(max_x, p.x);
                min_y = std::min(min_y, p.y);
                max_y = std::max(max_y, p.y);
            }
        }
        rendered.push_back(std::move(r));
    }

    // Lattice-to-pixel mapping with the y axis flipped so +y points up.
    constexpr std::int64_t unit = 20;
    constexpr std::int64_t margin = 30;
    auto px = [&](std::int64_t x) { return margin + (x - min_x) * unit; };
    auto py = [&](std::int64_t y) { return margin + (max_y - y) * unit; };
    const std::int64_t width = px(max_x) + margin;
    const std::int64_t height = py(min_y) + margin;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t r = 0; r < rendered.size(); ++r) {
        const auto& [emb, bits] = rendered[r];
        const int hue = static_cast<int>((selected[r] * 47) % 360);
        svg += "  <g stroke=\"hsl(" + std::to_string(hue) + ",60%,40%)\" fill=\"none\">\n";
        svg += "    <polyline stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < emb.points.size(); ++i) {
            if (i) svg += ' ';
            svg += std::to_string(px(emb.points[i].x)) + "," + std::to_string(py(emb.points[i].y));
        }
        svg += "\"/>\n";
        for (std::size_t i = 0; i < emb.points.size(); ++i) {
            if (!bits[i]) continue;
            svg += "    <circle cx=\"" + std::to_string(px(emb.points[i].x)) + "\" cy=\"" +
                   std::to_string(py(emb.points[i].y)) +
                   "\" r=\"5\" fill=\"hsl(" + std::to_string(hue) + ",60%,40%)\"/>\n";
        }
        svg += "  </g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace hydrofold

#endif
