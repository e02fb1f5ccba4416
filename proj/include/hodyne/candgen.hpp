#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hodyne/constraints.hpp"
#include "hodyne/tagger.hpp"
#include "hodyne/tagset.hpp"

namespace hodyne {

// Subject boundary placement. open_before is the number of pre-subject
// tokens (OPEN sits before token[open_before]); close_after is the index of
// the first token after CLOSE, so the subject covers
// tokens[open_before, close_after) and has length close_after - open_before.
struct Placement {
    int open_before = 0;
    int close_after = 0;

    int subject_length() const { return close_after - open_before; }
    bool operator==(const Placement&) const = default;
};

// One fully disambiguated tag string with boundary markers inserted.
// symbols = START, pre-subject tags, OPEN, subject tags, CLOSE, rest;
// the head stage additionally wraps one subject token in HOPEN/HCLOSE.
struct CandidateString {
    std::vector<SymbolId> symbols;
    Placement placement;
    std::vector<SymbolId> tag_choice;  // one tag per token, in token order
    int head_index = -1;               // head stage only; token index
    bool terminal_punct = false;       // copied from the source sentence
    std::string source;                // sentence id, for diagnostics
};

// All placements satisfying the invariants, ordered by
// (open_before asc, close_after asc). Pre-subject length runs 0..max_pre-1,
// subject length 1..max_subject, and at least one token that is not the
// sentence-final punctuation must remain after the subject.
std::vector<Placement> enumerate_placements(int n_tokens, bool terminal_punct,
                                            const GenerationLimits& limits);

struct ExpansionCount {
    std::uint64_t value = 0;
    bool saturated = false;
};

// (product of per-token tag-set sizes) x placement count, without
// materializing anything; saturates instead of overflowing.
ExpansionCount count_expansions(const TaggedSentence& sentence, const GenerationLimits& limits);

// Every placement x tag assignment, built left to right with immediate abort
// on prohibited trailing pairs/triples, then filtered through the grammar and
// the semi-local constraint. Output keeps enumeration order: placements as
// enumerated, tag choices as an odometer with the rightmost token fastest.
// Identical symbol sequences collapse to the first generation path.
std::vector<CandidateString> generate_candidates(const TaggedSentence& sentence,
                                                 const GenerationLimits& limits,
                                                 const ProhibitionTable& table,
                                                 const std::vector<GrammarRule>& rules,
                                                 const Tagset& tagset,
                                                 const std::string& source = {});

// Head-stage candidates for a fixed subject placement: every assignment of
// number-marked tags to the subject tokens x every position whose assigned
// tag is noun-category, HOPEN/HCLOSE around exactly that token. Tokens
// outside the subject take their first listed tag. No pruning of any kind.
std::vector<CandidateString> generate_head_candidates(
    const CandidateString& subject_pick, const std::vector<std::vector<SymbolId>>& mode2_tags,
    const Tagset& mode2);

// Debug form: symbols space-separated, e.g.
// "START ADV OPEN DET NOUN PREP DET NOUN CLOSE VMODAL VBASE VEN STOP".
std::string candidate_to_text(const CandidateString& candidate, const Tagset& tagset);

// Sentence forms with "[ ... ]" around the subject and, when head_index is
// set, "[ ... ]" around the head token.
std::string bracketed_sentence(const std::vector<Token>& tokens, const Placement& placement,
                               int head_index = -1);

}  // namespace hodyne
