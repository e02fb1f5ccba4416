#include "hodyne/encoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace hodyne {

std::string_view feature_mode_name(FeatureMode mode) {
    return mode == FeatureMode::tripos_only ? "tripos" : "both";
}

FeatureMode parse_feature_mode(std::string_view text) {
    if (text == "tripos") return FeatureMode::tripos_only;
    if (text == "both") return FeatureMode::bipos_tripos;
    throw std::invalid_argument("feature mode must be 'tripos' or 'both'");
}

TupleKey bipos_key(SymbolId a, SymbolId b) {
    return (std::uint64_t(2) << 60) | (std::uint64_t(a) << 16) | b;
}

TupleKey tripos_key(SymbolId a, SymbolId b, SymbolId c) {
    return (std::uint64_t(3) << 60) | (std::uint64_t(a) << 32) | (std::uint64_t(b) << 16) | c;
}

bool is_bipos(TupleKey key) { return (key >> 60) == 2; }

std::string tuple_to_text(TupleKey key, const Tagset& tagset) {
    auto name = [&](int shift) {
        return tagset.symbol_name(static_cast<SymbolId>((key >> shift) & 0xffff));
    };
    if (is_bipos(key)) return "b:" + name(16) + "," + name(0);
    return "t:" + name(32) + "," + name(16) + "," + name(0);
}

TupleKey tuple_from_text(const std::string& text, const Tagset& tagset) {
    if (text.size() < 2 || text[1] != ':' || (text[0] != 'b' && text[0] != 't'))
        throw std::invalid_argument("bad tuple spelling '" + text + "'");
    auto names = split_commas(text.substr(2));
    std::vector<SymbolId> ids;
    for (const std::string& n : names) {
        auto id = tagset.find_symbol(n);
        if (!id) throw std::invalid_argument("unknown symbol '" + n + "' in tuple '" + text + "'");
        ids.push_back(*id);
    }
    if (text[0] == 'b' && ids.size() == 2) return bipos_key(ids[0], ids[1]);
    if (text[0] == 't' && ids.size() == 3) return tripos_key(ids[0], ids[1], ids[2]);
    throw std::invalid_argument("bad tuple arity in '" + text + "'");
}

std::vector<SymbolId> truncate(const CandidateString& candidate, const TruncationPolicy& policy,
                               const Tagset& tagset) {
    const auto& symbols = candidate.symbols;
    auto close_it = std::find(symbols.begin(), symbols.end(), tagset.close_symbol());
    if (close_it == symbols.end())
        throw std::invalid_argument("truncate: candidate lacks a CLOSE symbol");
    std::vector<SymbolId> out(symbols.begin(), close_it + 1);
    int kept = 0;
    for (auto it = close_it + 1; it != symbols.end() && kept < policy.window; ++it) {
        out.push_back(*it);
        if (tagset.is_tag(*it)) ++kept;
    }
    return out;
}

FeatureSet encode(const CandidateString& candidate, const TruncationPolicy& policy,
                  FeatureMode mode, const Tagset& tagset) {
    auto seq = truncate(candidate, policy, tagset);
    if (seq.size() < 3)
        throw std::invalid_argument("encode: truncated candidate too short (" +
                                    std::to_string(seq.size()) + " symbols)");
    FeatureSet features;
    features.mode = mode;
    if (mode == FeatureMode::bipos_tripos) {
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            features.bipos.push_back(bipos_key(seq[i], seq[i + 1]));
        std::sort(features.bipos.begin(), features.bipos.end());
        features.bipos.erase(std::unique(features.bipos.begin(), features.bipos.end()),
                             features.bipos.end());
    }
    for (std::size_t i = 0; i + 2 < seq.size(); ++i)
        features.tripos.push_back(tripos_key(seq[i], seq[i + 1], seq[i + 2]));
    std::sort(features.tripos.begin(), features.tripos.end());
    features.tripos.erase(std::unique(features.tripos.begin(), features.tripos.end()),
                         features.tripos.end());
    return features;
}

std::size_t feature_space_bound(const Tagset& tagset, Stage stage) {
    std::size_t a = symbol_count(tagset, stage);
    return a * a * a + a * a;
}

}  // namespace hodyne
