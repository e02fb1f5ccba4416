#pragma once

#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hodyne/tagset.hpp"

namespace hodyne {

struct Token {
    std::string form;
    std::vector<SymbolId> tags;  // sorted, non-empty, tag symbols of the active tagset
    std::vector<std::string> joined_from;  // originals when this token is a multiword unit

    bool joined() const { return !joined_from.empty(); }
};

struct TaggedSentence {
    std::vector<Token> tokens;
    bool terminal_punct = false;
};

struct SuffixRule {
    std::string suffix;
    std::vector<SymbolId> tags;
};

// Joins (form, follower) pairs into one token tagged `target`. The follower
// matches when its tag set contains the named tag, or any tag of the named
// category when `follower` is one of noun/verb/relpron/other.
struct JoinRule {
    std::string form;      // lowercased literal of the left word
    std::string follower;  // tag name or category keyword
    SymbolId target = 0;
};

// Word list, suffix fallbacks and defaults for one mode.
struct LexiconTable {
    std::unordered_map<std::string, std::vector<SymbolId>> words;  // lowercased form
    std::vector<SuffixRule> suffixes;                              // longest suffix first
    std::vector<SymbolId> defaults;
    std::vector<JoinRule> joins;
};

struct Lexicon {
    LexiconTable mode1;
    LexiconTable mode2;

    const LexiconTable& table(int mode) const { return mode == 1 ? mode1 : mode2; }
};

Lexicon load_lexicon(std::istream& in, const std::string& source_name, const Tagset& mode1,
                     const Tagset& mode2);
Lexicon load_lexicon_file(const std::string& path, const Tagset& mode1, const Tagset& mode2);

// Whitespace split with leading/trailing punctuation detached as own tokens.
std::vector<std::string> tokenize(std::string_view text);

bool is_sentence_final_punct(std::string_view form);

// Lexicon hit, else longest matching suffix, else the default set.
std::vector<SymbolId> tag_token(const std::string& form, const Lexicon& lexicon,
                                const Tagset& tagset);

std::vector<Token> join_multiwords(std::vector<Token> tokens, const std::vector<JoinRule>& rules,
                                   const Tagset& tagset);

TaggedSentence tag_sentence(std::string_view text, const Lexicon& lexicon, const Tagset& tagset);

// Tag sets for every token in the requested mode (used when the head stage
// re-tags a sentence with the number-marked tagset).
std::vector<std::vector<SymbolId>> retag_tokens(const std::vector<Token>& tokens,
                                                const Lexicon& lexicon, const Tagset& tagset);

}  // namespace hodyne
