#include "hodyne/tagger.hpp"

#include <algorithm>
#include <fstream>

namespace hodyne {

namespace {

bool is_punct_char(char c) {
    switch (c) {
        case '.': case ',': case ';': case ':': case '!': case '?':
        case '(': case ')': case '[': case ']': case '"': case '\'':
            return true;
        default:
            return false;
    }
}

std::vector<SymbolId> parse_tag_list(const std::string& text, const Tagset& tagset,
                                     const std::string& source, int lineno) {
    std::vector<SymbolId> tags;
    for (const std::string& name : split_commas(text)) {
        auto id = tagset.find_tag(name);
        if (!id)
            throw parse_error(source, lineno,
                              "unknown mode-" + std::to_string(tagset.mode) + " tag '" + name + "'");
        tags.push_back(*id);
    }
    if (tags.empty()) throw parse_error(source, lineno, "empty tag list");
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    return tags;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> forms;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view chunk = text.substr(i, j - i);
        i = j;

        std::size_t begin = 0, end = chunk.size();
        std::vector<std::string> leading, trailing;
        while (begin < end && is_punct_char(chunk[begin]))
            leading.emplace_back(1, chunk[begin++]);
        while (end > begin && is_punct_char(chunk[end - 1]))
            trailing.emplace_back(1, chunk[end - 1]), --end;
        for (auto& p : leading) forms.push_back(std::move(p));
        if (end > begin) forms.emplace_back(chunk.substr(begin, end - begin));
        for (auto it = trailing.rbegin(); it != trailing.rend(); ++it)
            forms.push_back(std::move(*it));
    }
    if (forms.empty()) throw std::invalid_argument("tokenize: empty or whitespace-only text");
    return forms;
}

bool is_sentence_final_punct(std::string_view form) {
    return form == "." || form == "!" || form == "?";
}

std::vector<SymbolId> tag_token(const std::string& form, const Lexicon& lexicon,
                                const Tagset& tagset) {
    const LexiconTable& table = lexicon.table(tagset.mode);
    std::string key = to_lower(form);
    if (auto it = table.words.find(key); it != table.words.end()) return it->second;
    for (const SuffixRule& rule : table.suffixes) {
        if (key.size() > rule.suffix.size() &&
            key.compare(key.size() - rule.suffix.size(), rule.suffix.size(), rule.suffix) == 0)
            return rule.tags;
    }
    return table.defaults;
}

std::vector<Token> join_multiwords(std::vector<Token> tokens, const std::vector<JoinRule>& rules,
                                   const Tagset& tagset) {
    auto follower_matches = [&](const Token& tok, const std::string& follower) {
        if (follower == "noun" || follower == "verb" || follower == "relpron" ||
            follower == "other") {
            TagCategory want = parse_category(follower, "join rule", 0);
            return std::any_of(tok.tags.begin(), tok.tags.end(),
                               [&](SymbolId t) { return tagset.category(t) == want; });
        }
        auto id = tagset.find_tag(follower);
        return id && std::binary_search(tok.tags.begin(), tok.tags.end(), *id);
    };

    std::vector<Token> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        bool joined = false;
        if (i + 1 < tokens.size()) {
            std::string key = to_lower(tokens[i].form);
            for (const JoinRule& rule : rules) {
                if (key != rule.form || !follower_matches(tokens[i + 1], rule.follower)) continue;
                Token unit;
                unit.joined_from = {tokens[i].form, tokens[i + 1].form};
                unit.form = tokens[i].form + "_" + tokens[i + 1].form;
                unit.tags = {rule.target};
                out.push_back(std::move(unit));
                i += 2;
                joined = true;
                break;
            }
        }
        if (!joined) out.push_back(std::move(tokens[i])), ++i;
    }
    return out;
}

TaggedSentence tag_sentence(std::string_view text, const Lexicon& lexicon, const Tagset& tagset) {
    TaggedSentence sent;
    for (std::string& form : tokenize(text)) {
        Token tok;
        tok.tags = tag_token(form, lexicon, tagset);
        tok.form = std::move(form);
        sent.tokens.push_back(std::move(tok));
    }
    sent.tokens = join_multiwords(std::move(sent.tokens), lexicon.table(tagset.mode).joins, tagset);
    sent.terminal_punct = is_sentence_final_punct(sent.tokens.back().form);
    return sent;
}

std::vector<std::vector<SymbolId>> retag_tokens(const std::vector<Token>& tokens,
                                                const Lexicon& lexicon, const Tagset& tagset) {
    std::vector<std::vector<SymbolId>> out;
    out.reserve(tokens.size());
    for (const Token& tok : tokens) out.push_back(tag_token(tok.form, lexicon, tagset));
    return out;
}

Lexicon load_lexicon(std::istream& in, const std::string& source_name, const Tagset& mode1,
                     const Tagset& mode2) {
    Lexicon lex;
    int active_mode = 1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        const std::string& kind = fields[0];
        if (kind == "mode") {
            if (fields.size() != 2 || (fields[1] != "1" && fields[1] != "2"))
                throw parse_error(source_name, lineno, "expected 'mode 1' or 'mode 2'");
            active_mode = fields[1] == "1" ? 1 : 2;
            continue;
        }
        const Tagset& tagset = active_mode == 1 ? mode1 : mode2;
        LexiconTable& table = active_mode == 1 ? lex.mode1 : lex.mode2;
        if (kind == "word") {
            if (fields.size() != 3)
                throw parse_error(source_name, lineno, "expected 'word <form> <TAG>[,<TAG>...]'");
            table.words[to_lower(fields[1])] =
                parse_tag_list(fields[2], tagset, source_name, lineno);
        } else if (kind == "suffix") {
            if (fields.size() != 3)
                throw parse_error(source_name, lineno, "expected 'suffix <string> <TAG>[,...]'");
            table.suffixes.push_back(
                {to_lower(fields[1]), parse_tag_list(fields[2], tagset, source_name, lineno)});
        } else if (kind == "default") {
            if (fields.size() != 2)
                throw parse_error(source_name, lineno, "expected 'default <TAG>[,...]'");
            table.defaults = parse_tag_list(fields[1], tagset, source_name, lineno);
        } else if (kind == "join") {
            if (fields.size() != 5 || fields[3] != "->")
                throw parse_error(source_name, lineno,
                                  "expected 'join <form> <category> -> <TAG>'");
            JoinRule rule;
            rule.form = to_lower(fields[1]);
            rule.follower = fields[2];
            auto target = tagset.find_tag(fields[4]);
            if (!target)
                throw parse_error(source_name, lineno, "unknown tag '" + fields[4] + "'");
            rule.target = *target;
            table.joins.push_back(std::move(rule));
        } else {
            throw parse_error(source_name, lineno, "unknown directive '" + kind + "'");
        }
    }
    // Longest suffix wins; ties keep file order.
    for (LexiconTable* t : {&lex.mode1, &lex.mode2})
        std::stable_sort(t->suffixes.begin(), t->suffixes.end(),
                         [](const SuffixRule& a, const SuffixRule& b) {
                             return a.suffix.size() > b.suffix.size();
                         });
    if (lex.mode1.defaults.empty() || lex.mode2.defaults.empty())
        throw parse_error(source_name, lineno ? lineno : 1,
                          "lexicon must declare a default tag set for both modes");
    return lex;
}

Lexicon load_lexicon_file(const std::string& path, const Tagset& mode1, const Tagset& mode2) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
    return load_lexicon(in, path, mode1, mode2);
}

}  // namespace hodyne
