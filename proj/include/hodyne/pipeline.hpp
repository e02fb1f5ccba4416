#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "hodyne/candgen.hpp"
#include "hodyne/constraints.hpp"
#include "hodyne/encoder.hpp"
#include "hodyne/net.hpp"
#include "hodyne/tagger.hpp"
#include "hodyne/tagset.hpp"

namespace hodyne {

struct GoldToken {
    std::string form;
    std::string tag1;  // mode-1 gold
    std::string tag2;  // mode-2 gold, may be empty
};

// One manually marked sentence:
//   Then/ADV [S the/DET pump/NOUN S] must/VMODAL ... ./STOP
// with the head wrapped as [H pump/NOUN/NOUN-sg H] inside the subject.
struct GoldEntry {
    std::vector<GoldToken> tokens;
    Placement subject;
    int head_index = -1;  // -1 when the entry carries no head markup
    std::string id;
};

std::vector<GoldEntry> load_gold_corpus(std::istream& in, const std::string& source_name);
std::vector<GoldEntry> load_gold_corpus_file(const std::string& path);

struct PipelineConfig {
    Tagset mode1;
    Tagset mode2;
    Lexicon lexicon;
    GenerationLimits limits;
    ProhibitionTable prohibitions;
    std::vector<GrammarRule> grammar;
    TruncationPolicy truncation;
    FeatureMode features = FeatureMode::tripos_only;
};

// Ambiguous tagging of the gold forms through the lexicon (gold tags play no
// part; disambiguation is the parser's job).
TaggedSentence tagged_from_gold(const GoldEntry& entry, const PipelineConfig& config);

enum class ParseStatus { parsed, excluded };
enum class ExcludeReason { none, too_short, pre_subject_too_long, no_candidates };
std::string_view exclude_reason_name(ExcludeReason reason);

struct StageDiag {
    std::vector<double> gammas;
    std::size_t winner = 0;
    ExpansionCount expansions;     // before pruning
    std::size_t candidates = 0;    // after pruning
};

struct ParseResult {
    ParseStatus status = ParseStatus::excluded;
    ExcludeReason reason = ExcludeReason::none;
    Placement subject;
    std::vector<SymbolId> tags1;  // chosen mode-1 tags, all tokens
    StageDiag subject_diag;

    enum class Head { not_run, found, no_candidate };
    Head head = Head::not_run;
    int head_index = -1;
    std::vector<SymbolId> tags2;  // chosen mode-2 tags, all tokens (subject expanded)
    StageDiag head_diag;
};

ParseResult find_subject(const TaggedSentence& sentence, const SingleLayerNet& net,
                         const PipelineConfig& config, const std::string& source = {});

// Runs on the subject recorded in `result`; fills the head fields.
void find_head(const TaggedSentence& sentence, ParseResult& result, const SingleLayerNet& head_net,
               const PipelineConfig& config);

enum class Agreement { agree, disagree, unknown };
Agreement assess_agreement(const Tag& head_tag, const Tag& verb_tag);
std::string_view agreement_name(Agreement a);

struct BuildSkip {
    std::size_t entry = 0;
    bool corpus_fault = false;  // gold candidate pruned away or unreachable
    std::string reason;
};

struct BuildResult {
    std::vector<TrainingItem> items;
    std::vector<BuildSkip> skipped;

    std::size_t fault_count() const {
        std::size_t n = 0;
        for (const auto& s : skipped) n += s.corpus_fault ? 1 : 0;
        return n;
    }
};

// Candidates of each entry labelled against the gold markup: the one matching
// the gold placement and gold tags is correct, the rest incorrect.
BuildResult build_training_set(const std::vector<GoldEntry>& corpus, Stage stage,
                               const PipelineConfig& config);

struct EvalOptions {
    bool count_excluded_in_denominator = false;  // paper convention: excluded first
};

struct EvalReport {
    std::size_t sentences = 0;
    std::size_t excluded = 0;
    std::size_t parsed = 0;
    std::size_t with_gold_head = 0;
    double excluded_frac = 0.0;
    double subject_found = 0.0;
    double measure_a = 0.0;
    double subject_head = 0.0;
    double mean_candidates = 0.0;
    std::size_t max_candidates = 0;
    double single_candidate_frac = 0.0;
};

EvalReport evaluate(const std::vector<GoldEntry>& corpus, const SingleLayerNet& subject_net,
                    const SingleLayerNet* head_net, const PipelineConfig& config,
                    const EvalOptions& options = {});

std::string report_table(const EvalReport& report);
std::string report_keyvalues(const EvalReport& report);

struct AutoFlag {
    std::size_t entry = 0;
    std::string gold_parse;
    std::string got_parse;
    std::string detail;
};

struct AutoCheckResult {
    std::vector<AutoFlag> flagged;
    std::vector<std::pair<std::size_t, std::string>> excluded;  // entry, reason
};

// Re-runs the trained nets over their own training corpus; disagreements
// point at probably mis-marked entries.
AutoCheckResult autodidactic_check(const std::vector<GoldEntry>& corpus,
                                   const SingleLayerNet& subject_net,
                                   const SingleLayerNet* head_net, const PipelineConfig& config);

}  // namespace hodyne
