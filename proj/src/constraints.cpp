#include "hodyne/constraints.hpp"

#include <algorithm>
#include <fstream>

#include "hodyne/candgen.hpp"

namespace hodyne {

namespace {

std::uint64_t pair_key(SymbolId a, SymbolId b) {
    return (std::uint64_t(a) << 16) | b;
}

std::uint64_t triple_key(SymbolId a, SymbolId b, SymbolId c) {
    return (std::uint64_t(a) << 32) | (std::uint64_t(b) << 16) | c;
}

}  // namespace

void ProhibitionTable::add_pair(SymbolId a, SymbolId b) { pairs_.insert(pair_key(a, b)); }
void ProhibitionTable::add_triple(SymbolId a, SymbolId b, SymbolId c) {
    triples_.insert(triple_key(a, b, c));
}
bool ProhibitionTable::pair_prohibited(SymbolId a, SymbolId b) const {
    return pairs_.count(pair_key(a, b)) != 0;
}
bool ProhibitionTable::triple_prohibited(SymbolId a, SymbolId b, SymbolId c) const {
    return triples_.count(triple_key(a, b, c)) != 0;
}

bool tuple_allowed(const ProhibitionTable& table, std::span<const SymbolId> window) {
    if (window.size() == 2) return !table.pair_prohibited(window[0], window[1]);
    if (window.size() == 3) {
        if (table.pair_prohibited(window[1], window[2])) return false;
        return !table.triple_prohibited(window[0], window[1], window[2]);
    }
    throw std::invalid_argument("tuple_allowed: window must hold 2 or 3 symbols");
}

ProhibitionTable load_prohibitions(std::istream& in, const std::string& source_name,
                                   const Tagset& tagset) {
    ProhibitionTable table;
    std::string line;
    int lineno = 0;
    auto symbol = [&](const std::string& name) {
        auto id = tagset.find_symbol(name);
        if (!id) throw parse_error(source_name, lineno, "unknown symbol '" + name + "'");
        return *id;
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0] == "pair" && fields.size() == 3) {
            table.add_pair(symbol(fields[1]), symbol(fields[2]));
        } else if (fields[0] == "triple" && fields.size() == 4) {
            table.add_triple(symbol(fields[1]), symbol(fields[2]), symbol(fields[3]));
        } else {
            throw parse_error(source_name, lineno,
                              "expected 'pair A B' or 'triple A B C', got '" + line + "'");
        }
    }
    return table;
}

ProhibitionTable load_prohibitions_file(const std::string& path, const Tagset& tagset) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prohibition file: " + path);
    return load_prohibitions(in, path, tagset);
}

namespace {

RuleKind parse_rule_kind(const std::string& text, const std::string& source, int lineno) {
    if (text == "subject-contains-noun") return RuleKind::subject_contains_noun;
    if (text == "relpron-requires-verb") return RuleKind::relpron_requires_verb;
    if (text == "length-limit") return RuleKind::length_limit;
    if (text == "post-subject-word") return RuleKind::post_subject_word;
    if (text == "custom-pattern") return RuleKind::custom_pattern;
    throw parse_error(source, lineno, "unknown rule kind '" + text + "'");
}

Region parse_region(const std::string& text, const std::string& source, int lineno) {
    if (text == "pre-subject") return Region::pre_subject;
    if (text == "subject") return Region::subject;
    if (text == "post-subject") return Region::post_subject;
    throw parse_error(source, lineno, "unknown region '" + text + "'");
}

PatternItem parse_pattern_item(std::string text, const Tagset& tagset, const std::string& source,
                               int lineno) {
    PatternItem item;
    if (!text.empty()) {
        char last = text.back();
        if (last == '*') item.quant = PatternItem::Quant::star, text.pop_back();
        else if (last == '+') item.quant = PatternItem::Quant::plus, text.pop_back();
        else if (last == '?') item.quant = PatternItem::Quant::opt, text.pop_back();
    }
    if (text == "any") {
        item.what = PatternItem::What::any;
    } else if (text == "noun" || text == "verb" || text == "relpron" || text == "other") {
        item.what = PatternItem::What::category;
        item.cat = parse_category(text, source, lineno);
    } else if (text.size() > 1 && text[0] == '!') {
        item.what = PatternItem::What::not_category;
        item.cat = parse_category(text.substr(1), source, lineno);
    } else if (text.rfind("tag:", 0) == 0) {
        auto id = tagset.find_tag(text.substr(4));
        if (!id) throw parse_error(source, lineno, "unknown tag '" + text.substr(4) + "'");
        item.what = PatternItem::What::tag;
        item.tag = *id;
    } else {
        throw parse_error(source, lineno, "bad pattern item '" + text + "'");
    }
    return item;
}

// Backtracking full match of pattern against symbols.
bool pattern_matches(std::span<const PatternItem> pattern, std::span<const SymbolId> symbols,
                     const Tagset& tagset) {
    if (pattern.empty()) return symbols.empty();
    const PatternItem& item = pattern.front();
    auto single = [&](SymbolId s) {
        switch (item.what) {
            case PatternItem::What::any: return true;
            case PatternItem::What::category: return tagset.category(s) == item.cat;
            case PatternItem::What::not_category: return tagset.category(s) != item.cat;
            case PatternItem::What::tag: return s == item.tag;
        }
        return false;
    };
    switch (item.quant) {
        case PatternItem::Quant::one:
            return !symbols.empty() && single(symbols.front()) &&
                   pattern_matches(pattern.subspan(1), symbols.subspan(1), tagset);
        case PatternItem::Quant::opt:
            if (pattern_matches(pattern.subspan(1), symbols, tagset)) return true;
            return !symbols.empty() && single(symbols.front()) &&
                   pattern_matches(pattern.subspan(1), symbols.subspan(1), tagset);
        case PatternItem::Quant::plus:
            if (symbols.empty() || !single(symbols.front())) return false;
            symbols = symbols.subspan(1);
            [[fallthrough]];
        case PatternItem::Quant::star:
            for (std::size_t used = 0;; ++used) {
                if (pattern_matches(pattern.subspan(1), symbols.subspan(used), tagset)) return true;
                if (used == symbols.size() || !single(symbols[used])) return false;
            }
    }
    return false;
}

// Token tags of one region, boundary symbols excluded.
std::vector<SymbolId> region_symbols(const CandidateString& candidate, Region region) {
    std::vector<SymbolId> out;
    const auto& choice = candidate.tag_choice;
    int o = candidate.placement.open_before;
    int c = candidate.placement.close_after;
    int n = static_cast<int>(choice.size());
    int from = region == Region::pre_subject ? 0 : region == Region::subject ? o : c;
    int to = region == Region::pre_subject ? o : region == Region::subject ? c : n;
    for (int i = from; i < to; ++i) out.push_back(choice[i]);
    return out;
}

}  // namespace

std::vector<GrammarRule> load_grammar(std::istream& in, const std::string& source_name,
                                      const Tagset& tagset) {
    std::vector<GrammarRule> rules;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0] != "rule" || fields.size() < 3)
            throw parse_error(source_name, lineno, "expected 'rule <id> <kind> [params]'");
        GrammarRule rule;
        rule.id = fields[1];
        for (const GrammarRule& seen : rules)
            if (seen.id == rule.id)
                throw parse_error(source_name, lineno, "duplicate rule id '" + rule.id + "'");
        rule.kind = parse_rule_kind(fields[2], source_name, lineno);
        if (rule.kind == RuleKind::custom_pattern) {
            if (fields.size() < 6)
                throw parse_error(source_name, lineno,
                                  "expected 'rule <id> custom-pattern <region> "
                                  "must-match|must-not-match <item>...'");
            rule.region = parse_region(fields[3], source_name, lineno);
            if (fields[4] == "must-match") rule.must_match = true;
            else if (fields[4] == "must-not-match") rule.must_match = false;
            else
                throw parse_error(source_name, lineno,
                                  "expected must-match or must-not-match, got '" + fields[4] + "'");
            for (std::size_t i = 5; i < fields.size(); ++i)
                rule.pattern.push_back(parse_pattern_item(fields[i], tagset, source_name, lineno));
        } else if (fields.size() != 3) {
            throw parse_error(source_name, lineno, "rule kind takes no parameters");
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<GrammarRule> load_grammar_file(const std::string& path, const Tagset& tagset) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grammar file: " + path);
    return load_grammar(in, path, tagset);
}

const GrammarRule* check_grammar(const CandidateString& candidate,
                                 const std::vector<GrammarRule>& rules,
                                 const GenerationLimits& limits, const Tagset& tagset) {
    const Placement& p = candidate.placement;
    int n = static_cast<int>(candidate.tag_choice.size());
    for (const GrammarRule& rule : rules) {
        bool ok = true;
        switch (rule.kind) {
            case RuleKind::subject_contains_noun: {
                ok = false;
                for (int i = p.open_before; i < p.close_after; ++i)
                    if (tagset.category(candidate.tag_choice[i]) == TagCategory::noun) {
                        ok = true;
                        break;
                    }
                break;
            }
            case RuleKind::relpron_requires_verb:
                ok = check_semilocal(candidate, tagset) == nullptr;
                break;
            case RuleKind::length_limit:
                ok = p.open_before <= limits.max_pre_subject - 1 && p.subject_length() >= 1 &&
                     p.subject_length() <= limits.max_subject;
                break;
            case RuleKind::post_subject_word: {
                int last_usable = candidate.terminal_punct ? n - 2 : n - 1;
                ok = p.close_after <= last_usable;
                break;
            }
            case RuleKind::custom_pattern: {
                auto symbols = region_symbols(candidate, rule.region);
                bool matched = pattern_matches(rule.pattern, symbols, tagset);
                ok = rule.must_match ? matched : !matched;
                break;
            }
        }
        if (!ok) return &rule;
    }
    return nullptr;
}

const char* check_semilocal(const CandidateString& candidate, const Tagset& tagset) {
    // Collect bracketed spans over the symbol sequence, then scan each span.
    const auto& symbols = candidate.symbols;
    auto scan = [&](SymbolId open, SymbolId close) {
        bool inside = false;
        bool pending_relpron = false;
        for (SymbolId s : symbols) {
            if (s == open) {
                inside = true;
                pending_relpron = false;
                continue;
            }
            if (s == close) {
                if (pending_relpron) return false;
                inside = false;
                continue;
            }
            if (!inside || !tagset.is_tag(s)) continue;
            if (tagset.category(s) == TagCategory::relpron) pending_relpron = true;
            else if (tagset.category(s) == TagCategory::verb) pending_relpron = false;
        }
        return true;
    };
    if (!scan(tagset.open_symbol(), tagset.close_symbol()) ||
        !scan(tagset.hopen_symbol(), tagset.hclose_symbol()))
        return "relpron-requires-verb";
    return nullptr;
}

ExclusionReason exclusion_check(const TaggedSentence& sentence, const GenerationLimits& limits,
                                const Tagset& tagset) {
    int n = static_cast<int>(sentence.tokens.size());
    auto placements = enumerate_placements(n, sentence.terminal_punct, limits);
    if (placements.empty()) return ExclusionReason::too_short;

    std::vector<bool> noun_capable(sentence.tokens.size(), false);
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
        for (SymbolId t : sentence.tokens[i].tags)
            if (tagset.category(t) == TagCategory::noun) noun_capable[i] = true;

    for (const Placement& p : placements)
        for (int i = p.open_before; i < p.close_after; ++i)
            if (noun_capable[i]) return ExclusionReason::none;
    return ExclusionReason::pre_subject_too_long;
}

std::string_view exclusion_reason_name(ExclusionReason reason) {
    switch (reason) {
        case ExclusionReason::none: return "none";
        case ExclusionReason::too_short: return "too-short";
        case ExclusionReason::pre_subject_too_long: return "pre-subject-too-long";
    }
    return "none";
}

}  // namespace hodyne
