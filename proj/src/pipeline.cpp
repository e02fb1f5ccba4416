#include "hodyne/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hodyne {

std::vector<GoldEntry> load_gold_corpus(std::istream& in, const std::string& source_name) {
    std::vector<GoldEntry> corpus;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        GoldEntry entry;
        entry.id = source_name + ":" + std::to_string(lineno);
        int subject_open = -1, subject_close = -1, head_open = -1;
        for (const std::string& field : fields) {
            int pos = static_cast<int>(entry.tokens.size());
            if (field == "[S") {
                if (subject_open >= 0)
                    throw parse_error(source_name, lineno, "duplicate '[S'");
                subject_open = pos;
            } else if (field == "S]") {
                if (subject_open < 0 || subject_close >= 0)
                    throw parse_error(source_name, lineno, "unmatched 'S]'");
                subject_close = pos;
            } else if (field == "[H") {
                if (head_open >= 0 || entry.head_index >= 0)
                    throw parse_error(source_name, lineno, "duplicate '[H'");
                head_open = pos;
            } else if (field == "H]") {
                if (head_open < 0)
                    throw parse_error(source_name, lineno, "unmatched 'H]'");
                if (pos != head_open + 1)
                    throw parse_error(source_name, lineno, "head must span exactly one token");
                entry.head_index = head_open;
                head_open = -1;
            } else {
                GoldToken tok;
                auto first = field.find('/');
                if (first == std::string::npos || first == 0 || first + 1 >= field.size())
                    throw parse_error(source_name, lineno, "token needs 'form/TAG': " + field);
                tok.form = field.substr(0, first);
                auto second = field.find('/', first + 1);
                if (second == std::string::npos) {
                    tok.tag1 = field.substr(first + 1);
                } else {
                    tok.tag1 = field.substr(first + 1, second - first - 1);
                    tok.tag2 = field.substr(second + 1);
                    if (tok.tag1.empty() || tok.tag2.empty())
                        throw parse_error(source_name, lineno, "empty tag in: " + field);
                }
                entry.tokens.push_back(std::move(tok));
            }
        }
        if (subject_open < 0 || subject_close < 0)
            throw parse_error(source_name, lineno, "missing subject markup");
        if (head_open >= 0) throw parse_error(source_name, lineno, "unclosed '[H'");
        if (subject_close <= subject_open)
            throw parse_error(source_name, lineno, "empty subject");
        if (entry.tokens.size() < 2)
            throw parse_error(source_name, lineno, "sentence needs at least 2 tokens");
        entry.subject = {subject_open, subject_close};
        if (entry.head_index >= 0 &&
            (entry.head_index < subject_open || entry.head_index >= subject_close))
            throw parse_error(source_name, lineno, "head lies outside the subject");
        corpus.push_back(std::move(entry));
    }
    return corpus;
}

std::vector<GoldEntry> load_gold_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    return load_gold_corpus(in, path);
}

TaggedSentence tagged_from_gold(const GoldEntry& entry, const PipelineConfig& config) {
    TaggedSentence sent;
    sent.tokens.reserve(entry.tokens.size());
    for (const GoldToken& g : entry.tokens) {
        Token tok;
        tok.form = g.form;
        tok.tags = tag_token(g.form, config.lexicon, config.mode1);
        sent.tokens.push_back(std::move(tok));
    }
    sent.terminal_punct = is_sentence_final_punct(sent.tokens.back().form);
    return sent;
}

std::string_view exclude_reason_name(ExcludeReason reason) {
    switch (reason) {
        case ExcludeReason::none: return "none";
        case ExcludeReason::too_short: return "too-short";
        case ExcludeReason::pre_subject_too_long: return "pre-subject-too-long";
        case ExcludeReason::no_candidates: return "no-candidates";
    }
    return "none";
}

namespace {

ExcludeReason from_exclusion(ExclusionReason r) {
    return r == ExclusionReason::too_short ? ExcludeReason::too_short
                                           : ExcludeReason::pre_subject_too_long;
}

void require_net(const SingleLayerNet& net, Stage stage, const Tagset& tagset) {
    if (!net.trained()) throw std::logic_error("net is not trained");
    if (net.stage() != stage) throw std::logic_error("net was trained for the other stage");
    if (net.tagset_hash() != tagset.identity_hash())
        throw std::logic_error("net was trained with a different tagset");
}

}  // namespace

ParseResult find_subject(const TaggedSentence& sentence, const SingleLayerNet& net,
                         const PipelineConfig& config, const std::string& source) {
    require_net(net, Stage::subject, config.mode1);
    ParseResult result;
    auto reason = exclusion_check(sentence, config.limits, config.mode1);
    if (reason != ExclusionReason::none) {
        result.status = ParseStatus::excluded;
        result.reason = from_exclusion(reason);
        return result;
    }
    auto candidates = generate_candidates(sentence, config.limits, config.prohibitions,
                                          config.grammar, config.mode1, source);
    result.subject_diag.expansions = count_expansions(sentence, config.limits);
    result.subject_diag.candidates = candidates.size();
    if (candidates.empty()) {
        result.status = ParseStatus::excluded;
        result.reason = ExcludeReason::no_candidates;
        return result;
    }
    std::vector<FeatureSet> features;
    features.reserve(candidates.size());
    for (const CandidateString& c : candidates)
        features.push_back(encode(c, config.truncation, config.features, config.mode1));
    Selection sel = select(net, features);
    const CandidateString& winner = candidates[sel.winner];
    result.status = ParseStatus::parsed;
    result.subject = winner.placement;
    result.tags1 = winner.tag_choice;
    result.subject_diag.gammas = std::move(sel.gammas);
    result.subject_diag.winner = sel.winner;
    return result;
}

void find_head(const TaggedSentence& sentence, ParseResult& result,
               const SingleLayerNet& head_net, const PipelineConfig& config) {
    require_net(head_net, Stage::head, config.mode2);
    if (result.status != ParseStatus::parsed)
        throw std::logic_error("find_head: subject stage did not parse");
    auto mode2_tags = retag_tokens(sentence.tokens, config.lexicon, config.mode2);
    CandidateString pick;
    pick.placement = result.subject;
    pick.terminal_punct = sentence.terminal_punct;
    auto candidates = generate_head_candidates(pick, mode2_tags, config.mode2);
    result.head_diag.candidates = candidates.size();
    if (candidates.empty()) {
        result.head = ParseResult::Head::no_candidate;
        return;
    }
    std::vector<FeatureSet> features;
    features.reserve(candidates.size());
    for (const CandidateString& c : candidates)
        features.push_back(encode(c, config.truncation, config.features, config.mode2));
    Selection sel = select(head_net, features);
    const CandidateString& winner = candidates[sel.winner];
    result.head = ParseResult::Head::found;
    result.head_index = winner.head_index;
    result.tags2 = winner.tag_choice;
    result.head_diag.gammas = std::move(sel.gammas);
    result.head_diag.winner = sel.winner;
}

Agreement assess_agreement(const Tag& head_tag, const Tag& verb_tag) {
    if (head_tag.number == TagNumber::unmarked || verb_tag.number == TagNumber::unmarked)
        return Agreement::unknown;
    return head_tag.number == verb_tag.number ? Agreement::agree : Agreement::disagree;
}

std::string_view agreement_name(Agreement a) {
    switch (a) {
        case Agreement::agree: return "agree";
        case Agreement::disagree: return "disagree";
        case Agreement::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// Gold tag names resolved against a tagset; nullopt marks a fault.
std::optional<std::vector<SymbolId>> gold_ids(const GoldEntry& entry, const Tagset& tagset,
                                              bool mode2, std::string* why) {
    std::vector<SymbolId> ids(entry.tokens.size());
    for (std::size_t i = 0; i < entry.tokens.size(); ++i) {
        const std::string& name = mode2 ? entry.tokens[i].tag2 : entry.tokens[i].tag1;
        if (name.empty()) {
            if (why) *why = "token '" + entry.tokens[i].form + "' lacks a mode-2 gold tag";
            return std::nullopt;
        }
        auto id = tagset.find_tag(name);
        if (!id) {
            if (why) *why = "gold tag '" + name + "' is not in the mode tagset";
            return std::nullopt;
        }
        ids[i] = *id;
    }
    return ids;
}

}  // namespace

BuildResult build_training_set(const std::vector<GoldEntry>& corpus, Stage stage,
                               const PipelineConfig& config) {
    if (corpus.empty()) throw std::invalid_argument("build_training_set: empty corpus");
    BuildResult out;
    for (std::size_t e = 0; e < corpus.size(); ++e) {
        const GoldEntry& entry = corpus[e];
        TaggedSentence sent = tagged_from_gold(entry, config);
        if (stage == Stage::subject) {
            auto reason = exclusion_check(sent, config.limits, config.mode1);
            if (reason != ExclusionReason::none) {
                out.skipped.push_back(
                    {e, false, std::string(exclusion_reason_name(reason))});
                continue;
            }
            auto candidates = generate_candidates(sent, config.limits, config.prohibitions,
                                                  config.grammar, config.mode1, entry.id);
            if (candidates.empty()) {
                out.skipped.push_back({e, false, "no-candidates"});
                continue;
            }
            std::string why;
            auto gold = gold_ids(entry, config.mode1, false, &why);
            if (!gold) {
                out.skipped.push_back({e, true, why});
                continue;
            }
            int gold_at = -1;
            for (std::size_t c = 0; c < candidates.size(); ++c)
                if (candidates[c].placement == entry.subject && candidates[c].tag_choice == *gold)
                    gold_at = static_cast<int>(c);
            if (gold_at < 0) {
                out.skipped.push_back({e, true, "gold candidate was pruned away"});
                continue;
            }
            for (std::size_t c = 0; c < candidates.size(); ++c)
                out.items.push_back(
                    {encode(candidates[c], config.truncation, config.features, config.mode1),
                     static_cast<int>(c) == gold_at});
        } else {
            if (entry.head_index < 0) {
                out.skipped.push_back({e, false, "missing-head-annotation"});
                continue;
            }
            std::string why;
            auto gold2 = gold_ids(entry, config.mode2, true, &why);
            if (!gold2) {
                out.skipped.push_back({e, true, why});
                continue;
            }
            auto mode2_tags = retag_tokens(sent.tokens, config.lexicon, config.mode2);
            CandidateString pick;
            pick.placement = entry.subject;
            pick.terminal_punct = sent.terminal_punct;
            pick.source = entry.id;
            auto candidates = generate_head_candidates(pick, mode2_tags, config.mode2);
            if (candidates.empty()) {
                out.skipped.push_back({e, false, "no-head-candidate"});
                continue;
            }
            auto matches_gold = [&](const CandidateString& c) {
                if (c.head_index != entry.head_index) return false;
                for (int i = entry.subject.open_before; i < entry.subject.close_after; ++i)
                    if (c.tag_choice[i] != (*gold2)[i]) return false;
                return true;
            };
            int gold_at = -1;
            for (std::size_t c = 0; c < candidates.size(); ++c)
                if (matches_gold(candidates[c])) gold_at = static_cast<int>(c);
            if (gold_at < 0) {
                out.skipped.push_back({e, true, "gold head candidate not generated"});
                continue;
            }
            for (std::size_t c = 0; c < candidates.size(); ++c)
                out.items.push_back(
                    {encode(candidates[c], config.truncation, config.features, config.mode2),
                     static_cast<int>(c) == gold_at});
        }
    }
    return out;
}

EvalReport evaluate(const std::vector<GoldEntry>& corpus, const SingleLayerNet& subject_net,
                    const SingleLayerNet* head_net, const PipelineConfig& config,
                    const EvalOptions& options) {
    EvalReport report;
    report.sentences = corpus.size();
    std::size_t subject_hits = 0, measure_a_hits = 0, head_hits = 0;
    std::size_t candidate_sum = 0, single = 0;
    for (const GoldEntry& entry : corpus) {
        TaggedSentence sent = tagged_from_gold(entry, config);
        ParseResult r = find_subject(sent, subject_net, config, entry.id);
        if (r.status == ParseStatus::excluded) {
            ++report.excluded;
            continue;
        }
        ++report.parsed;
        candidate_sum += r.subject_diag.candidates;
        report.max_candidates = std::max(report.max_candidates, r.subject_diag.candidates);
        if (r.subject_diag.candidates == 1) ++single;

        bool subject_found = r.subject == entry.subject;
        bool tags_right = subject_found;
        if (subject_found) {
            for (int i = entry.subject.open_before; i < entry.subject.close_after && tags_right;
                 ++i) {
                auto id = config.mode1.find_tag(entry.tokens[i].tag1);
                tags_right = id && r.tags1[i] == *id;
            }
        }
        subject_hits += subject_found ? 1 : 0;
        measure_a_hits += (subject_found && tags_right) ? 1 : 0;

        if (head_net && entry.head_index >= 0) {
            ++report.with_gold_head;
            find_head(sent, r, *head_net, config);
            if (subject_found && r.head == ParseResult::Head::found &&
                r.head_index == entry.head_index)
                ++head_hits;
        }
    }
    report.excluded_frac =
        report.sentences ? double(report.excluded) / double(report.sentences) : 0.0;
    std::size_t denom = options.count_excluded_in_denominator ? report.sentences : report.parsed;
    std::size_t head_denom = options.count_excluded_in_denominator
                                 ? report.with_gold_head + report.excluded
                                 : report.with_gold_head;
    report.subject_found = denom ? double(subject_hits) / double(denom) : 0.0;
    report.measure_a = denom ? double(measure_a_hits) / double(denom) : 0.0;
    report.subject_head = head_denom ? double(head_hits) / double(head_denom) : 0.0;
    report.mean_candidates =
        report.parsed ? double(candidate_sum) / double(report.parsed) : 0.0;
    report.single_candidate_frac = report.parsed ? double(single) / double(report.parsed) : 0.0;
    return report;
}

std::string report_table(const EvalReport& r) {
    char buf[640];
    std::snprintf(buf, sizeof buf,
                  "sentences               %8zu\n"
                  "excluded                %8zu  (%.1f%%)\n"
                  "subject found           %7.1f%%\n"
                  "correct measure A       %7.1f%%\n"
                  "subject and head found  %7.1f%%\n"
                  "mean candidates         %8.2f\n"
                  "max candidates          %8zu\n"
                  "single-candidate        %7.1f%%\n",
                  r.sentences, r.excluded, 100.0 * r.excluded_frac, 100.0 * r.subject_found,
                  100.0 * r.measure_a, 100.0 * r.subject_head, r.mean_candidates,
                  r.max_candidates, 100.0 * r.single_candidate_frac);
    return buf;
}

std::string report_keyvalues(const EvalReport& r) {
    std::ostringstream out;
    out << "n=" << r.sentences << "\nexcluded=" << r.excluded
        << "\nexcluded_frac=" << r.excluded_frac << "\nsubject_found=" << r.subject_found
        << "\nmeasure_a=" << r.measure_a << "\nsubject_head=" << r.subject_head
        << "\nmean_candidates=" << r.mean_candidates << "\nmax_candidates=" << r.max_candidates
        << "\nsingle_candidate_frac=" << r.single_candidate_frac << "\n";
    return out.str();
}

AutoCheckResult autodidactic_check(const std::vector<GoldEntry>& corpus,
                                   const SingleLayerNet& subject_net,
                                   const SingleLayerNet* head_net, const PipelineConfig& config) {
    AutoCheckResult out;
    for (std::size_t e = 0; e < corpus.size(); ++e) {
        const GoldEntry& entry = corpus[e];
        TaggedSentence sent = tagged_from_gold(entry, config);
        ParseResult r = find_subject(sent, subject_net, config, entry.id);
        if (r.status == ParseStatus::excluded) {
            out.excluded.emplace_back(e, std::string(exclude_reason_name(r.reason)));
            continue;
        }
        bool subject_ok = r.subject == entry.subject;
        bool head_ok = true;
        if (head_net && entry.head_index >= 0) {
            find_head(sent, r, *head_net, config);
            head_ok = r.head == ParseResult::Head::found && r.head_index == entry.head_index;
        }
        if (subject_ok && head_ok) continue;
        AutoFlag flag;
        flag.entry = e;
        flag.gold_parse = bracketed_sentence(sent.tokens, entry.subject, entry.head_index);
        flag.got_parse = bracketed_sentence(sent.tokens, r.subject,
                                            r.head == ParseResult::Head::found ? r.head_index : -1);
        flag.detail = !subject_ok ? "subject disagrees with markup" : "head disagrees with markup";
        out.flagged.push_back(std::move(flag));
    }
    return out;
}

}  // namespace hodyne
