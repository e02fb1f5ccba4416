#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "hodyne/tagger.hpp"
#include "hodyne/tagset.hpp"

namespace hodyne {

struct GenerationLimits {
    int max_pre_subject = 15;
    int max_subject = 12;
};

// Adjacent symbol tuples that abort candidate construction on sight.
class ProhibitionTable {
public:
    void add_pair(SymbolId a, SymbolId b);
    void add_triple(SymbolId a, SymbolId b, SymbolId c);

    bool pair_prohibited(SymbolId a, SymbolId b) const;
    bool triple_prohibited(SymbolId a, SymbolId b, SymbolId c) const;

    std::size_t pair_count() const { return pairs_.size(); }
    std::size_t triple_count() const { return triples_.size(); }

private:
    std::unordered_set<std::uint64_t> pairs_;
    std::unordered_set<std::uint64_t> triples_;
};

ProhibitionTable load_prohibitions(std::istream& in, const std::string& source_name,
                                   const Tagset& tagset);
ProhibitionTable load_prohibitions_file(const std::string& path, const Tagset& tagset);

// window holds the last 2 or 3 emitted symbols; pairs are consulted first.
bool tuple_allowed(const ProhibitionTable& table, std::span<const SymbolId> window);

enum class RuleKind {
    subject_contains_noun,
    relpron_requires_verb,
    length_limit,
    post_subject_word,
    custom_pattern,
};

enum class Region { pre_subject, subject, post_subject };

// One element of a custom-pattern rule; matches a single symbol.
// Items: a category name (noun/verb/relpron/other), "!" + category for its
// complement, "tag:NAME", or "any"; quantifiers ?/*/+ append to the item.
struct PatternItem {
    enum class What { category, not_category, tag, any } what = What::any;
    TagCategory cat = TagCategory::other;
    SymbolId tag = 0;
    enum class Quant { one, opt, star, plus } quant = Quant::one;
};

struct GrammarRule {
    std::string id;
    RuleKind kind = RuleKind::subject_contains_noun;
    // custom_pattern only:
    Region region = Region::subject;
    bool must_match = true;  // false: region must NOT match the pattern
    std::vector<PatternItem> pattern;
};

std::vector<GrammarRule> load_grammar(std::istream& in, const std::string& source_name,
                                      const Tagset& tagset);
std::vector<GrammarRule> load_grammar_file(const std::string& path, const Tagset& tagset);

struct CandidateString;  // candgen.hpp

// First violated rule in list order, or nullptr when all pass.
const GrammarRule* check_grammar(const CandidateString& candidate,
                                 const std::vector<GrammarRule>& rules,
                                 const GenerationLimits& limits, const Tagset& tagset);

// Built-in semi-local constraint: inside a bracketed constituent a relative
// pronoun must be followed by a verb-category tag. Returns the constraint id
// or nullptr when it holds.
const char* check_semilocal(const CandidateString& candidate, const Tagset& tagset);

enum class ExclusionReason { none, too_short, pre_subject_too_long };

// Conservative pre-check: flags sentences for which no placement can yield a
// grammar-passing candidate, before any strings are generated.
ExclusionReason exclusion_check(const TaggedSentence& sentence, const GenerationLimits& limits,
                                const Tagset& tagset);

std::string_view exclusion_reason_name(ExclusionReason reason);

}  // namespace hodyne
