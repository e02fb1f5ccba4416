#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hodyne/candgen.hpp"
#include "hodyne/tagset.hpp"

namespace hodyne {

enum class FeatureMode { tripos_only, bipos_tripos };

std::string_view feature_mode_name(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view text);

// Keep the string up to CLOSE plus `window` token symbols beyond it.
struct TruncationPolicy {
    int window = 2;
};

// Packed adjacent-symbol tuple; arity lives in the top bits so pairs and
// triples never collide.
using TupleKey = std::uint64_t;

TupleKey bipos_key(SymbolId a, SymbolId b);
TupleKey tripos_key(SymbolId a, SymbolId b, SymbolId c);
bool is_bipos(TupleKey key);

// Canonical spelling: "b:<s1>,<s2>" / "t:<s1>,<s2>,<s3>".
std::string tuple_to_text(TupleKey key, const Tagset& tagset);
TupleKey tuple_from_text(const std::string& text, const Tagset& tagset);

// Binary feature set of one candidate: tuples are present or absent, never
// counted.
struct FeatureSet {
    std::vector<TupleKey> bipos;   // sorted, unique
    std::vector<TupleKey> tripos;  // sorted, unique
    FeatureMode mode = FeatureMode::tripos_only;

    std::size_t size() const { return bipos.size() + tripos.size(); }
    bool empty() const { return bipos.empty() && tripos.empty(); }
};

// START through CLOSE plus the next window token symbols; boundary symbols do
// not count toward the window.
std::vector<SymbolId> truncate(const CandidateString& candidate, const TruncationPolicy& policy,
                               const Tagset& tagset);

// Adjacent pairs/triples of the truncated sequence. Throws when the truncated
// sequence is shorter than 3 symbols.
FeatureSet encode(const CandidateString& candidate, const TruncationPolicy& policy,
                  FeatureMode mode, const Tagset& tagset);

// A^3 + A^2 where A = symbol_count(tagset, stage).
std::size_t feature_space_bound(const Tagset& tagset, Stage stage);

}  // namespace hodyne
