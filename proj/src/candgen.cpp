#include "hodyne/candgen.hpp"

#include <algorithm>
#include <set>

namespace hodyne {

std::vector<Placement> enumerate_placements(int n_tokens, bool terminal_punct,
                                            const GenerationLimits& limits) {
    std::vector<Placement> out;
    int last_usable = terminal_punct ? n_tokens - 2 : n_tokens - 1;
    for (int open = 0; open <= limits.max_pre_subject - 1; ++open) {
        if (open >= n_tokens) break;
        for (int len = 1; len <= limits.max_subject; ++len) {
            int close = open + len;
            if (close > last_usable) break;
            out.push_back({open, close});
        }
    }
    return out;
}

ExpansionCount count_expansions(const TaggedSentence& sentence, const GenerationLimits& limits) {
    ExpansionCount count;
    auto placements = enumerate_placements(static_cast<int>(sentence.tokens.size()),
                                           sentence.terminal_punct, limits);
    std::uint64_t total = placements.size();
    for (const Token& tok : sentence.tokens) {
        if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(tok.tags.size()), &total)) {
            count.value = UINT64_MAX;
            count.saturated = true;
            return count;
        }
    }
    count.value = total;
    return count;
}

namespace {

struct Emitter {
    const ProhibitionTable& table;
    std::vector<SymbolId> symbols;

    bool push(SymbolId s) {
        symbols.push_back(s);
        std::size_t n = symbols.size();
        if (n >= 2 && table.pair_prohibited(symbols[n - 2], symbols[n - 1])) return false;
        if (n >= 3 && table.triple_prohibited(symbols[n - 3], symbols[n - 2], symbols[n - 1]))
            return false;
        return true;
    }
    void pop(std::size_t to_size) { symbols.resize(to_size); }
};

}  // namespace

std::vector<CandidateString> generate_candidates(const TaggedSentence& sentence,
                                                 const GenerationLimits& limits,
                                                 const ProhibitionTable& table,
                                                 const std::vector<GrammarRule>& rules,
                                                 const Tagset& tagset,
                                                 const std::string& source) {
    std::vector<CandidateString> out;
    std::set<std::vector<SymbolId>> seen;
    int n = static_cast<int>(sentence.tokens.size());

    for (const Placement& placement :
         enumerate_placements(n, sentence.terminal_punct, limits)) {
        std::vector<SymbolId> choice(sentence.tokens.size());
        Emitter em{table, {}};
        em.symbols.reserve(sentence.tokens.size() + 3);
        em.push(tagset.start_symbol());

        // Depth-first over tokens; boundary symbols are emitted at their
        // slots so prohibition windows see them like any tag.
        auto rec = [&](auto&& self, int token) -> void {
            if (token == n) {
                CandidateString cand;
                cand.symbols = em.symbols;
                cand.placement = placement;
                cand.tag_choice = choice;
                cand.terminal_punct = sentence.terminal_punct;
                cand.source = source;
                if (check_grammar(cand, rules, limits, tagset) != nullptr) return;
                if (check_semilocal(cand, tagset) != nullptr) return;
                if (!seen.insert(cand.symbols).second) return;
                out.push_back(std::move(cand));
                return;
            }
            std::size_t mark = em.symbols.size();
            if (token == placement.open_before && !em.push(tagset.open_symbol())) {
                em.pop(mark);
                return;
            }
            std::size_t after_open = em.symbols.size();
            for (SymbolId tag : sentence.tokens[token].tags) {
                if (em.push(tag)) {
                    choice[token] = tag;
                    bool close_ok = true;
                    std::size_t after_tag = em.symbols.size();
                    if (token + 1 == placement.close_after)
                        close_ok = em.push(tagset.close_symbol());
                    if (close_ok) self(self, token + 1);
                    em.pop(after_tag);
                }
                em.pop(after_open);
            }
            em.pop(mark);
        };
        rec(rec, 0);
    }
    return out;
}

std::vector<CandidateString> generate_head_candidates(
    const CandidateString& subject_pick, const std::vector<std::vector<SymbolId>>& mode2_tags,
    const Tagset& mode2) {
    const Placement& p = subject_pick.placement;
    int n = static_cast<int>(mode2_tags.size());
    std::vector<CandidateString> out;
    std::set<std::vector<SymbolId>> seen;

    // Fixed context outside the subject: first listed tag.
    std::vector<SymbolId> choice(mode2_tags.size());
    for (int i = 0; i < n; ++i) {
        if (mode2_tags[i].empty())
            throw std::invalid_argument("generate_head_candidates: empty tag set");
        choice[i] = mode2_tags[i][0];
    }

    std::vector<int> positions;  // subject token indices, expanded via odometer
    for (int i = p.open_before; i < p.close_after; ++i) positions.push_back(i);

    auto emit = [&](int head) {
        CandidateString cand;
        cand.placement = p;
        cand.tag_choice = choice;
        cand.head_index = head;
        cand.terminal_punct = subject_pick.terminal_punct;
        cand.source = subject_pick.source;
        cand.symbols.reserve(mode2_tags.size() + 5);
        cand.symbols.push_back(mode2.start_symbol());
        for (int i = 0; i < n; ++i) {
            if (i == p.open_before) cand.symbols.push_back(mode2.open_symbol());
            if (i == head) cand.symbols.push_back(mode2.hopen_symbol());
            cand.symbols.push_back(choice[i]);
            if (i == head) cand.symbols.push_back(mode2.hclose_symbol());
            if (i + 1 == p.close_after) cand.symbols.push_back(mode2.close_symbol());
        }
        if (seen.insert(cand.symbols).second) out.push_back(std::move(cand));
    };

    auto rec = [&](auto&& self, std::size_t slot) -> void {
        if (slot == positions.size()) {
            for (int i : positions)
                if (mode2.category(choice[i]) == TagCategory::noun) emit(i);
            return;
        }
        int token = positions[slot];
        for (SymbolId tag : mode2_tags[token]) {
            choice[token] = tag;
            self(self, slot + 1);
        }
        choice[token] = mode2_tags[token][0];
    };
    rec(rec, 0);

    // Order by head position first, then assignment order.
    std::stable_sort(out.begin(), out.end(),
                     [](const CandidateString& a, const CandidateString& b) {
                         return a.head_index < b.head_index;
                     });
    return out;
}

std::string candidate_to_text(const CandidateString& candidate, const Tagset& tagset) {
    std::string out;
    for (SymbolId s : candidate.symbols) {
        if (!out.empty()) out += ' ';
        out += tagset.symbol_name(s);
    }
    return out;
}

std::string bracketed_sentence(const std::vector<Token>& tokens, const Placement& placement,
                               int head_index) {
    std::string out;
    auto append = [&out](std::string_view piece) {
        if (!out.empty()) out += ' ';
        out += piece;
    };
    for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
        if (i == placement.open_before) append("[");
        if (i == head_index) append("[");
        append(tokens[i].form);
        if (i == head_index) append("]");
        if (i + 1 == placement.close_after) append("]");
    }
    return out;
}

}  // namespace hodyne
