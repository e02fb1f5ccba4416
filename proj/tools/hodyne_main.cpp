#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hodyne/pipeline.hpp"

using namespace hodyne;

namespace {

struct ConfigPaths {
    std::string tagset1 = "data/tagsets/mode1.tags";
    std::string tagset2 = "data/tagsets/mode2.tags";
    std::string lexicon = "data/lexicon.lex";
    std::string prohibit;
    std::string grammar;
    int max_pre = 15;
    int max_subject = 12;
    int window = 2;
    std::string features = "tripos";
};

void add_config_options(CLI::App* cmd, ConfigPaths& paths) {
    cmd->add_option("--tagset", paths.tagset1, "mode-1 tagset file");
    cmd->add_option("--tagset2", paths.tagset2, "mode-2 tagset file");
    cmd->add_option("--lexicon", paths.lexicon, "lexicon file");
    cmd->add_option("--prohibit", paths.prohibit, "prohibition table (default: none)");
    cmd->add_option("--grammar", paths.grammar, "grammar rule file (default: none)");
    cmd->add_option("--max-pre", paths.max_pre, "pre-subject length limit");
    cmd->add_option("--max-subject", paths.max_subject, "subject length limit");
    cmd->add_option("--window", paths.window, "truncation window beyond the subject close");
    cmd->add_option("--features", paths.features, "feature mode: tripos|both");
}

PipelineConfig load_config(const ConfigPaths& paths) {
    PipelineConfig config;
    config.mode1 = load_tagset_file(paths.tagset1);
    config.mode2 = load_tagset_file(paths.tagset2);
    config.lexicon = load_lexicon_file(paths.lexicon, config.mode1, config.mode2);
    if (!paths.prohibit.empty())
        config.prohibitions = load_prohibitions_file(paths.prohibit, config.mode1);
    if (!paths.grammar.empty())
        config.grammar = load_grammar_file(paths.grammar, config.mode1);
    config.limits = {paths.max_pre, paths.max_subject};
    config.truncation = {paths.window};
    config.features = parse_feature_mode(paths.features);
    return config;
}

int cmd_train(const ConfigPaths& paths, const std::string& corpus_path, const std::string& stage,
              double threshold, int max_cycles, const std::string& out_path) {
    PipelineConfig config = load_config(paths);
    auto corpus = load_gold_corpus_file(corpus_path);
    Stage st = stage == "head" ? Stage::head : Stage::subject;
    auto build = build_training_set(corpus, st, config);
    for (const BuildSkip& skip : build.skipped)
        std::cerr << (skip.corpus_fault ? "corpus fault " : "skipped ") << corpus[skip.entry].id
                  << ": " << skip.reason << "\n";
    if (build.items.empty()) {
        std::cerr << "no training items\n";
        return 1;
    }
    const Tagset& tagset = st == Stage::head ? config.mode2 : config.mode1;
    SingleLayerNet net(tagset, st, config.features);
    TrainStats stats = train(net, build.items, threshold, max_cycles);
    save_net_file(net, out_path, tagset);
    std::fprintf(stderr,
                 "items: %zu  cycles: %d  accuracy: %.4f  links: %zu  time: %.2fs%s\n",
                 build.items.size(), stats.cycles, stats.final_accuracy, stats.links,
                 stats.seconds, stats.converged ? "" : "  (did not converge)");
    if (stats.weight_range_warning)
        std::fprintf(stderr, "note: weights left the usual (0.001, 5.0) range: [%g, %g]\n",
                     stats.min_weight, stats.max_weight);
    std::cout << "wrote " << out_path << "\n";
    return stats.converged ? 0 : 2;
}

// First number-marked verb after the subject, for the agreement report.
std::optional<Tag> main_verb_tag(const ParseResult& r, const PipelineConfig& config) {
    for (std::size_t i = r.subject.close_after; i < r.tags2.size(); ++i) {
        const Tag& tag = config.mode2.tags[r.tags2[i]];
        if (tag.category == TagCategory::verb) return tag;
    }
    return std::nullopt;
}

int cmd_parse(const ConfigPaths& paths, const std::string& subject_net_path,
              const std::string& head_net_path, bool verbose) {
    PipelineConfig config = load_config(paths);
    SingleLayerNet subject_net = load_net_file(subject_net_path, config.mode1);
    std::optional<SingleLayerNet> head_net;
    if (!head_net_path.empty()) head_net = load_net_file(head_net_path, config.mode2);

    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        TaggedSentence sent;
        try {
            sent = tag_sentence(line, config.lexicon, config.mode1);
        } catch (const std::invalid_argument&) {
            continue;
        }
        ParseResult r = find_subject(sent, subject_net, config, line);
        if (r.status == ParseStatus::excluded) {
            std::cout << "excluded " << exclude_reason_name(r.reason) << ": " << line << "\n";
            continue;
        }
        if (head_net) find_head(sent, r, *head_net, config);
        int head = r.head == ParseResult::Head::found ? r.head_index : -1;
        std::cout << bracketed_sentence(sent.tokens, r.subject, head) << "\n";
        if (verbose) {
            std::cout << "  candidates=" << r.subject_diag.candidates
                      << " gamma=" << r.subject_diag.gammas[r.subject_diag.winner];
            if (head >= 0) {
                std::cout << " head=" << sent.tokens[head].form;
                const Tag& head_tag = config.mode2.tags[r.tags2[head]];
                if (auto verb = main_verb_tag(r, config))
                    std::cout << " agreement=" << agreement_name(assess_agreement(head_tag, *verb));
            }
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_eval(const ConfigPaths& paths, const std::string& corpus_path,
             const std::string& subject_net_path, const std::string& head_net_path,
             bool include_excluded) {
    PipelineConfig config = load_config(paths);
    auto corpus = load_gold_corpus_file(corpus_path);
    SingleLayerNet subject_net = load_net_file(subject_net_path, config.mode1);
    std::optional<SingleLayerNet> head_net;
    if (!head_net_path.empty()) head_net = load_net_file(head_net_path, config.mode2);
    EvalOptions options;
    options.count_excluded_in_denominator = include_excluded;
    EvalReport report = evaluate(corpus, subject_net, head_net ? &*head_net : nullptr, config,
                                 options);
    std::cout << report_table(report) << "\n" << report_keyvalues(report);
    return 0;
}

int cmd_candidates(const ConfigPaths& paths, const std::string& sentence, bool forms) {
    PipelineConfig config = load_config(paths);
    TaggedSentence sent = tag_sentence(sentence, config.lexicon, config.mode1);
    auto reason = exclusion_check(sent, config.limits, config.mode1);
    if (reason != ExclusionReason::none) {
        std::cout << "excluded " << exclusion_reason_name(reason) << "\n";
        return 0;
    }
    auto candidates = generate_candidates(sent, config.limits, config.prohibitions,
                                          config.grammar, config.mode1, sentence);
    for (const CandidateString& c : candidates) {
        std::cout << candidate_to_text(c, config.mode1) << "\n";
        if (forms) std::cout << "  " << bracketed_sentence(sent.tokens, c.placement) << "\n";
    }
    std::cerr << candidates.size() << " candidates, "
              << count_expansions(sent, config.limits).value << " before pruning\n";
    return 0;
}

int cmd_check(const ConfigPaths& paths, const std::string& corpus_path,
              const std::string& subject_net_path, const std::string& head_net_path) {
    PipelineConfig config = load_config(paths);
    auto corpus = load_gold_corpus_file(corpus_path);
    SingleLayerNet subject_net = load_net_file(subject_net_path, config.mode1);
    std::optional<SingleLayerNet> head_net;
    if (!head_net_path.empty()) head_net = load_net_file(head_net_path, config.mode2);
    AutoCheckResult result =
        autodidactic_check(corpus, subject_net, head_net ? &*head_net : nullptr, config);
    for (const AutoFlag& flag : result.flagged) {
        std::cout << corpus[flag.entry].id << ": " << flag.detail << "\n  marked: "
                  << flag.gold_parse << "\n  parsed: " << flag.got_parse << "\n";
    }
    for (const auto& [entry, reason] : result.excluded)
        std::cout << corpus[entry].id << ": excluded (" << reason << ")\n";
    std::cout << result.flagged.size() << " of " << corpus.size()
              << " entries disagree with their markup\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subject and subject-head partial parser"};
    app.require_subcommand(1);
    ConfigPaths paths;

    auto* train_cmd = app.add_subcommand("train", "train a net on a gold corpus");
    std::string corpus_path, stage = "subject", out_path = "net.txt";
    double threshold = 0.97;
    int max_cycles = 200;
    train_cmd->add_option("--corpus", corpus_path, "gold corpus file")->required();
    train_cmd->add_option("--stage", stage, "subject|head")
        ->check(CLI::IsMember({"subject", "head"}));
    train_cmd->add_option("--threshold", threshold, "training accuracy stop threshold");
    train_cmd->add_option("--max-cycles", max_cycles, "training cycle cap");
    train_cmd->add_option("--out", out_path, "weights file to write")->required();
    add_config_options(train_cmd, paths);

    auto* parse_cmd = app.add_subcommand("parse", "parse sentences from stdin");
    std::string subject_net_path, head_net_path;
    bool verbose = false;
    parse_cmd->add_option("--subject-net", subject_net_path, "subject stage weights")->required();
    parse_cmd->add_option("--head-net", head_net_path, "head stage weights (optional)");
    parse_cmd->add_flag("--verbose", verbose, "per-sentence diagnostics");
    add_config_options(parse_cmd, paths);

    auto* eval_cmd = app.add_subcommand("eval", "score a trained net against a gold corpus");
    bool include_excluded = false;
    eval_cmd->add_option("--corpus", corpus_path, "gold corpus file")->required();
    eval_cmd->add_option("--subject-net", subject_net_path, "subject stage weights")->required();
    eval_cmd->add_option("--head-net", head_net_path, "head stage weights (optional)");
    eval_cmd->add_flag("--include-excluded", include_excluded,
                       "count excluded sentences in accuracy denominators");
    add_config_options(eval_cmd, paths);

    auto* cand_cmd = app.add_subcommand("candidates", "dump surviving candidate strings");
    std::string sentence;
    bool forms = false;
    cand_cmd->add_option("--sentence", sentence, "sentence text")->required();
    cand_cmd->add_flag("--forms", forms, "also print bracketed word forms");
    add_config_options(cand_cmd, paths);

    auto* check_cmd = app.add_subcommand("check", "autodidactic markup check of a corpus");
    check_cmd->add_option("--corpus", corpus_path, "gold corpus file")->required();
    check_cmd->add_option("--subject-net", subject_net_path, "subject stage weights")->required();
    check_cmd->add_option("--head-net", head_net_path, "head stage weights (optional)");
    add_config_options(check_cmd, paths);

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed())
            return cmd_train(paths, corpus_path, stage, threshold, max_cycles, out_path);
        if (parse_cmd->parsed())
            return cmd_parse(paths, subject_net_path, head_net_path, verbose);
        if (eval_cmd->parsed())
            return cmd_eval(paths, corpus_path, subject_net_path, head_net_path,
                            include_excluded);
        if (cand_cmd->parsed()) return cmd_candidates(paths, sentence, forms);
        if (check_cmd->parsed())
            return cmd_check(paths, corpus_path, subject_net_path, head_net_path);
    } catch (const std::exception& e) {
        std::cerr << "hodyne: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
