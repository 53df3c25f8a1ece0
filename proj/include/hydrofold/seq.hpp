#ifndef HYDROFOLD_SEQ_HPP
#define HYDROFOLD_SEQ_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace hydrofold {

// A protein chain as one-letter residue codes (always stored uppercase).
struct Sequence {
    std::string id;       // fasta header text, or empty for raw input
    std::string residues; // one uppercase letter per residue

    std::size_t size() const { return residues.size(); }
};

enum class SequenceFormat { raw, fasta };

// What to do with a residue code the active hydropathy scale does not list
// (the fixture's leading 'X' is the motivating case).
enum class UnknownPolicy { treat_as_hydrophilic, reject };

// Per-residue hydropathy values plus the threshold that splits
// hydrophobic (value > threshold) from hydrophilic. unknown_policy decides
// the fate of residues the table does not list.
struct HydropathyScale {
    std::string name;
    std::map<char, double> values;
    double threshold = 0.0;
    UnknownPolicy unknown_policy = UnknownPolicy::treat_as_hydrophilic;

    bool has(char code) const { return values.count(code) != 0; }
};

// The hydrophobicity encoding of a sequence: bits[i] == 1 means residue i is
// hydrophobic under the scale named in scale_name.
struct BinaryProfile {
    std::vector<std::uint8_t> bits;
    std::string scale_name;

    std::size_t size() const { return bits.size(); }
    std::size_t hydrophobic_count() const {
        std::size_t n = 0;
        for (auto b : bits) n += b;
        return n;
    }
};

namespace detail {

inline const std::array<std::pair<char, double>, 20>& kyte_doolittle_table() {
    // Standard Kyte-Doolittle hydropathy values for the 20 amino acids.
    static const std::array<std::pair<char, double>, 20> table = {{
        {'A', 1.8},  {'R', -4.5}, {'N', -3.5}, {'D', -3.5}, {'C', 2.5},
        {'Q', -3.5}, {'E', -3.5}, {'G', -0.4}, {'H', -3.2}, {'I', 4.5},
        {'L', 3.8},  {'K', -3.9}, {'M', 1.9},  {'F', 2.8},  {'P', -1.6},
        {'S', -0.8}, {'T', -0.7}, {'W', -0.9}, {'Y', -1.3}, {'V', 4.2},
    }};
    return table;
}

inline std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline void validate_residues(const std::string& residues) {
    for (std::size_t i = 0; i < residues.size(); ++i) {
        char c = residues[i];
        if (c < 'A' || c > 'Z')
            throw input_error("residue code '" + std::string(1, c) + "' at position " +
                              std::to_string(i + 1) + " is outside A-Z");
    }
}

} // namespace detail

// Built-in Kyte-Doolittle scale with the conventional zero threshold.
inline HydropathyScale builtin_kd_scale() {
    HydropathyScale scale;
    scale.name = "builtin-kd";
    scale.threshold = 0.0;
    for (auto [code, value] : detail::kyte_doolittle_table()) scale.values[code] = value;
    return scale;
}

// Parse residue text. Raw mode strips all whitespace and uppercases; fasta
// mode takes the text after '>' on the first line as the id and concatenates
// the remaining lines. Exactly one fasta record is accepted.
inline Sequence parse_sequence(std::string_view text, SequenceFormat format) {
    Sequence seq;
    if (format == SequenceFormat::raw) {
        seq.id = "seq";
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c)))
                seq.residues.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        bool saw_header = false;
        while (std::getline(in, line)) {
            std::string t = detail::trim(line);
            if (t.empty()) continue;
            if (t.front() == '>') {
                if (saw_header) throw input_error("fasta input contains more than one record");
                saw_header = true;
                seq.id = detail::trim(t.substr(1));
                continue;
            }
            if (!saw_header) throw input_error("fasta input does not start with a '>' header line");
            for (char c : t)
                if (!std::isspace(static_cast<unsigned char>(c)))
                    seq.residues.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
        if (!saw_header) throw input_error("fasta input contains no record");
    }
    if (seq.residues.empty()) throw input_error("sequence contains no residues");
    detail::validate_residues(seq.residues);
    return seq;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Sequence load_sequence(const std::string& path, SequenceFormat format) {
    return parse_sequence(read_text_file(path), format);
}

// Parse a scale file: one "CODE<tab>value" row per line, '#' comments and
// blank lines ignored. All 20 standard codes must appear exactly once; extra
// codes (e.g. X) are allowed and participate in classification.
inline HydropathyScale parse_scale(std::string_view text, std::string name, double threshold = 0.0) {
    HydropathyScale scale;
    scale.name = std::move(name);
    scale.threshold = threshold;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::istringstream row(t);
        std::string code_tok, value_tok, extra;
        row >> code_tok >> value_tok;
        if (code_tok.size() != 1 || value_tok.empty() || (row >> extra))
            throw input_error("scale line " + std::to_string(lineno) +
                              ": expected 'CODE<tab>value', got '" + t + "'");
        char code = static_cast<char>(std::toupper(static_cast<unsigned char>(code_tok[0])));
        if (code < 'A' || code > 'Z')
            throw input_error("scale line " + std::to_string(lineno) + ": residue code outside A-Z");
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(value_tok.data(), value_tok.data() + value_tok.size(), value);
        if (ec != std::errc{} || ptr != value_tok.data() + value_tok.size())
            throw input_error("scale line " + std::to_string(lineno) + ": unparsable value '" +
                              value_tok + "'");
        if (scale.values.count(code))
            throw input_error("scale line " + std::to_string(lineno) + ": duplicate residue '" +
                              std::string(1, code) + "'");
        scale.values[code] = value;
    }
    for (auto [code, _] : detail::kyte_doolittle_table())
        if (!scale.has(code))
            throw input_error("scale is missing residue '" + std::string(1, code) + "'");
    return scale;
}

inline HydropathyScale load_scale(const std::string& path, double threshold = 0.0) {
    return parse_scale(read_text_file(path), path, threshold);
}

// The hydrophobicity encoding: bit = (value > threshold), strictly greater.
inline BinaryProfile encode_binary(const Sequence& seq, const HydropathyScale& scale) {
    BinaryProfile profile;
    profile.scale_name = scale.name;
    profile.bits.reserve(seq.size());
    for (std::size_t i = 0; i < seq.residues.size(); ++i) {
        char c = seq.residues[i];
        auto it = scale.values.find(c);
        if (it == scale.values.end()) {
            if (scale.unknown_policy == UnknownPolicy::reject)
                throw input_error("unknown residue '" + std::string(1, c) + "' at position " +
                                  std::to_string(i + 1));
            profile.bits.push_back(0);
        } else {
            profile.bits.push_back(it->second > scale.threshold ? 1 : 0);
        }
    }
    return profile;
}

// Direct H/P notation ('H' or '1' hydrophobic, 'P' or '0' hydrophilic),
// handy for lattice-model inputs that never had a real sequence.
inline BinaryProfile parse_hp_profile(std::string_view text) {
    BinaryProfile profile;
    profile.scale_name = "hp";
    for (char raw : text) {
        if (std::isspace(static_cast<unsigned char>(raw))) continue;
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
        if (c == 'H' || c == '1') profile.bits.push_back(1);
        else if (c == 'P' || c == '0') profile.bits.push_back(0);
        else throw input_error("H/P profile contains '" + std::string(1, raw) + "'");
    }
    if (profile.bits.empty()) throw input_error("H/P profile is empty");
    return profile;
}

} // namespace hydrofold

#endif
