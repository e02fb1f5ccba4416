// Emits the bundled synthetic gold corpus: technical-manual style
// declaratives with subject and head markup, mode-1 and mode-2 gold tags.
// The generator loads the shipped lexicon, prohibition table and grammar and
// refuses to write a corpus on which the gold candidate of any sentence would
// be pruned away or untaggable.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hodyne/pipeline.hpp"

using namespace hodyne;

namespace {

struct GTok {
    std::string form, t1, t2;
};

struct Sentence {
    std::vector<GTok> toks;
    int s_open = 0, s_close = 0, head = -1;
};

struct NounPair {
    const char* sg;
    const char* pl;
};

const std::vector<NounPair> kNouns = {
    {"pump", "pumps"},       {"valve", "valves"},     {"cooler", "coolers"},
    {"filter", "filters"},   {"pipe", "pipes"},       {"connection", "connections"},
    {"gearbox", "gearboxes"},{"engine", "engines"},   {"lever", "levers"},
    {"seal", "seals"},       {"hose", "hoses"},       {"tank", "tanks"},
    {"bolt", "bolts"},       {"gauge", "gauges"},     {"bearing", "bearings"},
    {"sensor", "sensors"},   {"panel", "panels"},     {"bracket", "brackets"},
    {"nozzle", "nozzles"},   {"piston", "pistons"},   {"cylinder", "cylinders"},
    {"fan", "fans"},         {"pulley", "pulleys"},   {"switch", "switches"},
    {"clamp", "clamps"},     {"washer", "washers"},   {"radiator", "radiators"},
    {"compressor", "compressors"}, {"spring", "springs"}, {"cable", "cables"},
    {"gasket", "gaskets"},   {"unit", "units"},       {"cap", "caps"},
    {"plug", "plugs"},       {"belt", "belts"},       {"shaft", "shafts"},
};

const std::vector<const char*> kMassNouns = {"pressure",    "oil",   "coolant", "corrosion",
                                             "temperature", "dirt",  "grease",  "water",
                                             "speed",       "operation"};

// plural noun forms that double as 3sg verbs; hard subject heads
const std::vector<const char*> kAmbigPlurals = {"checks", "runs",   "controls", "supports",
                                                "guards", "locks",  "leaks",    "drains",
                                                "mounts", "covers", "monitors", "flows"};

struct VerbFamily {
    const char* base;
    const char* sg;   // 3rd person singular
    const char* ven;  // past participle, nullptr when unused
};

const std::vector<VerbFamily> kTransitive = {
    {"check", "checks", "checked"},       {"monitor", "monitors", "monitored"},
    {"replace", "replaces", "replaced"},  {"inspect", "inspects", "inspected"},
    {"drain", "drains", "drained"},       {"adjust", "adjusts", "adjusted"},
    {"tighten", "tightens", "tightened"}, {"test", "tests", "tested"},
    {"connect", "connects", "connected"}, {"mount", "mounts", "mounted"},
    {"install", "installs", "installed"}, {"protect", "protects", "protected"},
    {"cover", "covers", "covered"},       {"support", "supports", "supported"},
    {"control", "controls", "controlled"},{"align", "aligns", "aligned"},
    {"secure", "secures", "secured"},     {"renew", "renews", "renewed"},
    {"lock", "locks", "locked"},          {"guard", "guards", "guarded"},
    {"clean", "cleans", "cleaned"},       {"remove", "removes", "removed"},
    {"operate", "operates", "operated"},
};

const std::vector<VerbFamily> kIntransitive = {
    {"run", "runs", nullptr},          {"leak", "leaks", nullptr},
    {"flow", "flows", nullptr},        {"turn", "turns", nullptr},
    {"vibrate", "vibrates", nullptr},  {"overheat", "overheats", nullptr},
    {"stop", "stops", nullptr},        {"start", "starts", nullptr},
};

const std::vector<const char*> kParticiples = {
    "checked", "monitored", "replaced", "inspected", "drained",  "adjusted",
    "tightened", "tested",  "connected", "mounted",  "installed", "protected",
    "covered", "supported", "controlled", "aligned", "secured",  "renewed",
    "locked",  "guarded",   "cleaned",   "removed",  "fitted",   "worn",
    "broken",  "damaged",   "blocked",   "fed"};

const std::vector<const char*> kAdjectives = {"new",  "old",    "loose", "tight", "main",
                                              "primary", "regular", "faulty", "hot",  "cold",
                                              "high", "low",    "safe",  "dry",   "full",
                                              "steady", "small", "large", "heavy", "normal"};

const std::vector<const char*> kPredAdjectives = {"loose", "tight", "hot", "cold", "safe",
                                                  "dry",   "full",  "steady", "faulty", "correct"};

const std::vector<const char*> kAdverbs = {"regularly", "carefully", "immediately", "slowly",
                                           "fully",     "often",     "always",      "firmly",
                                           "securely",  "gently",    "quickly",     "correctly"};

const std::vector<const char*> kPreAdverbs = {"then", "now", "first", "finally", "however",
                                              "therefore"};

const std::vector<const char*> kSconj = {"if", "when", "while", "because", "until",
                                         "unless", "before", "after"};

const std::vector<const char*> kNpPreps = {"of", "of", "of", "in", "on", "from", "under", "near"};

const std::vector<const char*> kVerbPreps = {"for", "with", "from", "at", "in", "on"};

const std::vector<const char*> kPrePreps = {"during", "in", "on", "under", "near", "after"};

const std::vector<const char*> kModals = {"must", "should", "may", "will", "can"};

class Gen {
public:
    Gen(std::uint32_t seed) : rng_(seed) {}

    std::size_t pick(std::size_t n) { return rng_() % n; }
    bool chance(int percent) { return pick(100) < static_cast<std::size_t>(percent); }

    template <typename T>
    const T& choose(const std::vector<T>& v) {
        return v[pick(v.size())];
    }

    std::mt19937 rng_;
};

void push(Sentence& s, std::string form, std::string t1, std::string t2) {
    s.toks.push_back({std::move(form), std::move(t1), std::move(t2)});
}

std::string det_for(Gen& g, bool plural, const std::string& next_form) {
    if (plural) {
        const char* d[] = {"the", "the", "these", "all", "both"};
        return d[g.pick(5)];
    }
    const char* d[] = {"the", "the", "the", "a", "this", "each", "every"};
    std::string det = d[g.pick(7)];
    if (det == "a" && !next_form.empty() && std::string("aeiou").find(next_form[0]) !=
                                                std::string::npos)
        det = "an";
    return det;
}

void push_det(Gen& g, Sentence& s, bool plural, const std::string& next_form) {
    std::string det = det_for(g, plural, next_form);
    push(s, det, "DET", plural ? "DET-pl" : "DET-sg");
}

// A simple NP for pre-subject clauses, PPs and objects: DET (ADJ) N.
void push_np(Gen& g, Sentence& s, bool plural) {
    const NounPair& n = g.choose(kNouns);
    std::string noun = plural ? n.pl : n.sg;
    std::string first = g.chance(25) ? std::string(g.choose(kAdjectives)) : noun;
    push_det(g, s, plural, first);
    if (first != noun) push(s, first, "ADJ", "ADJ");
    push(s, noun, "NOUN", plural ? "NOUN-pl" : "NOUN-sg");
}

void push_pp(Gen& g, Sentence& s, bool after_verb = false) {
    bool plural = g.chance(35);
    push(s, g.choose(after_verb ? kVerbPreps : kNpPreps), "PREP", "PREP");
    if (after_verb && g.chance(30)) {
        push(s, g.choose(kMassNouns), "NOUN", "NOUN-sg");
        return;
    }
    push_np(g, s, plural);
}

// Subject noun phrase; fills s.head. Returns plural-ness of the head.
bool push_subject(Gen& g, Sentence& s, bool allow_bare) {
    bool plural = g.chance(45);
    int kind = static_cast<int>(g.pick(100));

    if (allow_bare && kind < 12) {
        // bare plural or mass subject, optionally with an adjective
        if (g.chance(50)) {
            std::string adj = g.chance(30) ? "still" : g.choose(kAdjectives);
            push(s, adj, "ADJ", "ADJ");
        }
        if (g.chance(40)) {
            push(s, g.choose(kMassNouns), "NOUN", "NOUN-sg");
            s.head = static_cast<int>(s.toks.size()) - 1;
            return false;
        }
        std::string noun = g.chance(30) ? std::string(g.choose(kAmbigPlurals))
                                        : std::string(g.choose(kNouns).pl);
        push(s, noun, "NOUN", "NOUN-pl");
        s.head = static_cast<int>(s.toks.size()) - 1;
        return true;
    }
    if (kind < 22) {  // pronoun subject
        plural = g.chance(60);
        const char* sg[] = {"it", "this"};
        const char* pl[] = {"they", "these", "we", "you"};
        std::string form = plural ? pl[g.pick(4)] : sg[g.pick(2)];
        std::string t2 = plural ? "PRON-pl" : "PRON-sg";
        push(s, form, "PRON", t2);
        s.head = static_cast<int>(s.toks.size()) - 1;
        return plural;
    }
    if (kind < 30 && plural) {  // "two pumps"
        const char* nums[] = {"two", "three", "four", "five", "ten"};
        push(s, nums[g.pick(5)], "NUM", "NUM");
        push(s, g.choose(kNouns).pl, "NOUN", "NOUN-pl");
        s.head = static_cast<int>(s.toks.size()) - 1;
        return true;
    }

    // determined NP, possibly compound, with optional PP or relative clause
    const NounPair& head_noun = g.choose(kNouns);
    std::string head = plural ? head_noun.pl : head_noun.sg;
    bool compound = g.chance(30);
    bool adj = !compound && g.chance(35);
    std::string attr = compound ? std::string(g.choose(kNouns).sg) : "";
    std::string first = adj ? std::string(g.choose(kAdjectives)) : (compound ? attr : head);
    push_det(g, s, plural, first);
    if (adj) push(s, first, "ADJ", "ADJ");
    if (compound) push(s, attr, "NOUN", "NOUN-sg");
    push(s, head, "NOUN", plural ? "NOUN-pl" : "NOUN-sg");
    s.head = static_cast<int>(s.toks.size()) - 1;

    if (kind < 55) return plural;  // plain NP
    if (kind < 80) {               // NP + PP
        push_pp(g, s);
        return plural;
    }
    // NP + relative clause
    std::string rel = g.chance(70) ? "which" : "that";
    push(s, rel, "RELPRON", "RELPRON");
    int rkind = static_cast<int>(g.pick(4));
    std::string vbe = plural ? "are" : "is";
    std::string vbe2 = plural ? "VBE-pl" : "VBE-sg";
    if (rkind == 0) {
        push(s, vbe, "VBE", vbe2);
        push(s, g.choose(kParticiples), "VEN", "VEN");
    } else if (rkind == 1) {
        push(s, vbe, "VBE", vbe2);
        push(s, g.choose(kPredAdjectives), "ADJ", "ADJ");
    } else if (rkind == 2) {
        const VerbFamily& v = g.choose(kIntransitive);
        push(s, plural ? v.base : v.sg, "VFIN", plural ? "VFIN-pl" : "VFIN-sg");
        if (g.chance(50)) push(s, g.choose(kAdverbs), "ADV", "ADV");
    } else {
        push(s, plural ? "have" : "has", "VHAVE", plural ? "VHAVE-pl" : "VHAVE-sg");
        push(s, g.choose(kParticiples), "VEN", "VEN");
    }
    return plural;
}

void push_predicate(Gen& g, Sentence& s, bool plural) {
    int kind = static_cast<int>(g.pick(100));
    std::string vbe = plural ? "are" : "is";
    std::string vbe2 = plural ? "VBE-pl" : "VBE-sg";
    if (kind < 30) {  // modal passive
        push(s, g.choose(kModals), "VMODAL", "VMODAL");
        push(s, "be", "VBASE", "VBASE");
        if (g.chance(30)) {
            push(s, g.choose(kAdverbs), "ADV", "ADV");
            push(s, g.choose(kParticiples), "VEN", "VEN");
        } else {
            push(s, g.choose(kParticiples), "VEN", "VEN");
            if (g.chance(35)) push(s, g.choose(kAdverbs), "ADV", "ADV");
        }
        if (g.chance(35)) push_pp(g, s, true);
    } else if (kind < 55) {  // copular / passive
        push(s, vbe, "VBE", vbe2);
        if (g.chance(40)) {
            push(s, g.choose(kPredAdjectives), "ADJ", "ADJ");
        } else {
            if (g.chance(25)) push(s, g.choose(kAdverbs), "ADV", "ADV");
            push(s, g.choose(kParticiples), "VEN", "VEN");
            if (g.chance(30)) push_pp(g, s, true);
        }
    } else if (kind < 75) {  // transitive
        const VerbFamily& v = g.choose(kTransitive);
        push(s, plural ? v.base : v.sg, "VFIN", plural ? "VFIN-pl" : "VFIN-sg");
        bool obj_plural = g.chance(35);
        push_np(g, s, obj_plural);
        if (g.chance(25)) push(s, g.choose(kAdverbs), "ADV", "ADV");
    } else if (kind < 90) {  // intransitive
        const VerbFamily& v = g.choose(kIntransitive);
        push(s, plural ? v.base : v.sg, "VFIN", plural ? "VFIN-pl" : "VFIN-sg");
        if (g.chance(60)) push(s, g.choose(kAdverbs), "ADV", "ADV");
        else if (g.chance(40)) push_pp(g, s, true);
    } else if (kind < 95) {  // perfect
        push(s, plural ? "have" : "has", "VHAVE", plural ? "VHAVE-pl" : "VHAVE-sg");
        push(s, g.choose(kParticiples), "VEN", "VEN");
    } else {  // negated
        push(s, plural ? "do" : "does", "VDO", plural ? "VDO-pl" : "VDO-sg");
        push(s, "not", "ADV", "ADV");
        push(s, g.choose(kIntransitive).base, "VBASE", "VBASE");
        if (g.chance(40)) push(s, g.choose(kAdverbs), "ADV", "ADV");
    }
}

// Pre-subject material; returns true when the following subject may be bare.
bool push_presubject(Gen& g, Sentence& s) {
    int kind = static_cast<int>(g.pick(100));
    if (kind < 35) return true;  // none
    if (kind < 50) {             // adverb (, )
        push(s, g.choose(kPreAdverbs), "ADV", "ADV");
        if (g.chance(40)) {
            push(s, ",", "COMMA", "COMMA");
            return true;
        }
        return false;  // bare noun right after an adverb reads badly
    }
    if (kind < 80) {  // subordinate clause + comma
        push(s, g.choose(kSconj), "SCONJ", "SCONJ");
        bool plural = g.chance(40);
        push_np(g, s, plural);
        if (g.chance(55)) {
            push(s, plural ? "are" : "is", "VBE", plural ? "VBE-pl" : "VBE-sg");
            push(s, g.choose(kParticiples), "VEN", "VEN");
            if (g.chance(45)) push_pp(g, s, true);
        } else {
            const VerbFamily& v = g.choose(kIntransitive);
            push(s, plural ? v.base : v.sg, "VFIN", plural ? "VFIN-pl" : "VFIN-sg");
            if (g.chance(40)) push(s, g.choose(kAdverbs), "ADV", "ADV");
        }
        push(s, ",", "COMMA", "COMMA");
        return true;
    }
    // prepositional phrase, with or without comma
    push(s, g.choose(kPrePreps), "PREP", "PREP");
    if (g.chance(45)) {
        push(s, g.choose(kMassNouns), "NOUN", "NOUN-sg");
    } else {
        push_np(g, s, g.chance(30));
    }
    if (g.chance(70)) {
        push(s, ",", "COMMA", "COMMA");
        return true;
    }
    return false;  // subject must be determined after a bare PP
}

Sentence make_sentence(Gen& g) {
    Sentence s;
    bool allow_bare = push_presubject(g, s);
    s.s_open = static_cast<int>(s.toks.size());
    bool plural = push_subject(g, s, allow_bare);
    s.s_close = static_cast<int>(s.toks.size());
    push_predicate(g, s, plural);
    push(s, ".", "STOP", "STOP");
    return s;
}

// Hand-written entries: the demonstration sentences and close variants, so
// the bundled net knows their patterns well.
std::vector<Sentence> fixed_sentences() {
    std::vector<Sentence> out;
    auto add = [&out](std::vector<GTok> toks, int open, int close, int head) {
        Sentence s;
        s.toks = std::move(toks);
        s.s_open = open;
        s.s_close = close;
        s.head = head;
        out.push_back(std::move(s));
    };

    add({{"Still", "ADJ", "ADJ"},
         {"waters", "NOUN", "NOUN-pl"},
         {"run", "VFIN", "VFIN-pl"},
         {"deep", "ADJ", "ADJ"},
         {".", "STOP", "STOP"}},
        0, 2, 1);

    add({{"If", "SCONJ", "SCONJ"},
         {"a", "DET", "DET-sg"},
         {"cooler", "NOUN", "NOUN-sg"},
         {"is", "VBE", "VBE-sg"},
         {"fitted", "VEN", "VEN"},
         {"to", "PREP", "PREP"},
         {"the", "DET", "DET-sg"},
         {"gearbox", "NOUN", "NOUN-sg"},
         {",", "COMMA", "COMMA"},
         {"the", "DET", "DET-pl"},
         {"pipe", "NOUN", "NOUN-sg"},
         {"connections", "NOUN", "NOUN-pl"},
         {"of", "PREP", "PREP"},
         {"the", "DET", "DET-sg"},
         {"cooler", "NOUN", "NOUN-sg"},
         {"must", "VMODAL", "VMODAL"},
         {"be", "VBASE", "VBASE"},
         {"regularly", "ADV", "ADV"},
         {"checked", "VEN", "VEN"},
         {"for", "PREP", "PREP"},
         {"corrosion", "NOUN", "NOUN-sg"},
         {".", "STOP", "STOP"}},
        9, 15, 11);

    add({{"Then", "ADV", "ADV"},
         {"the", "DET", "DET-sg"},
         {"performance", "NOUN", "NOUN-sg"},
         {"of", "PREP", "PREP"},
         {"the", "DET", "DET-sg"},
         {"pump", "NOUN", "NOUN-sg"},
         {"must", "VMODAL", "VMODAL"},
         {"be", "VBASE", "VBASE"},
         {"monitored", "VEN", "VEN"},
         {".", "STOP", "STOP"}},
        1, 6, 2);

    add({{"The", "DET", "DET-pl"},
         {"pipe", "NOUN", "NOUN-sg"},
         {"connections", "NOUN", "NOUN-pl"},
         {"of", "PREP", "PREP"},
         {"the", "DET", "DET-sg"},
         {"cooler", "NOUN", "NOUN-sg"},
         {"must", "VMODAL", "VMODAL"},
         {"be", "VBASE", "VBASE"},
         {"checked", "VEN", "VEN"},
         {"for", "PREP", "PREP"},
         {"corrosion", "NOUN", "NOUN-sg"},
         {".", "STOP", "STOP"}},
        0, 6, 2);

    add({{"Still", "ADJ", "ADJ"},
         {"waters", "NOUN", "NOUN-pl"},
         {"flow", "VFIN", "VFIN-pl"},
         {"slowly", "ADV", "ADV"},
         {".", "STOP", "STOP"}},
        0, 2, 1);

    add({{"The", "DET", "DET-sg"},
         {"most_recent", "ADJ", "ADJ"},
         {"manual", "NOUN", "NOUN-sg"},
         {"covers", "VFIN", "VFIN-sg"},
         {"the", "DET", "DET-sg"},
         {"procedure", "NOUN", "NOUN-sg"},
         {".", "STOP", "STOP"}},
        0, 3, 2);

    return out;
}

std::string render(const Sentence& s) {
    std::string line;
    for (int i = 0; i < static_cast<int>(s.toks.size()); ++i) {
        if (i == s.s_open) line += line.empty() ? "[S" : " [S";
        if (!line.empty()) line += ' ';
        if (i == s.head) line += "[H ";
        line += s.toks[i].form + "/" + s.toks[i].t1;
        if (!s.toks[i].t2.empty()) line += "/" + s.toks[i].t2;
        if (i == s.head) line += " H]";
        if (i + 1 == s.s_close) line += " S]";
    }
    return line;
}

std::string plain(const Sentence& s) {
    std::string line;
    for (const GTok& t : s.toks) {
        if (!line.empty()) line += ' ';
        line += t.form;
    }
    return line;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate the bundled synthetic gold corpus"};
    std::string data_dir = "data";
    std::string out_path = "data/corpus/synthetic.gold";
    int count = 320;
    unsigned seed = 1993;
    app.add_option("--data", data_dir, "data directory (tagsets, lexicon, tables)");
    app.add_option("--out", out_path, "output corpus file");
    app.add_option("--count", count, "number of sentences");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig config;
        config.mode1 = load_tagset_file(data_dir + "/tagsets/mode1.tags");
        config.mode2 = load_tagset_file(data_dir + "/tagsets/mode2.tags");
        config.lexicon = load_lexicon_file(data_dir + "/lexicon.lex", config.mode1, config.mode2);
        config.prohibitions = load_prohibitions_file(data_dir + "/prohibit.tbl", config.mode1);
        config.grammar = load_grammar_file(data_dir + "/grammar.rules", config.mode1);

        Gen gen(seed);
        std::vector<Sentence> sentences = fixed_sentences();
        std::set<std::string> seen;
        for (const Sentence& s : sentences) seen.insert(plain(s));
        int guard = 0;
        while (static_cast<int>(sentences.size()) < count && guard < count * 200) {
            ++guard;
            Sentence s = make_sentence(gen);
            if (!seen.insert(plain(s)).second) continue;
            sentences.push_back(std::move(s));
        }

        // Gold entries straight from the in-memory sentences.
        std::vector<GoldEntry> corpus;
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            const Sentence& s = sentences[i];
            GoldEntry e;
            e.id = "gen:" + std::to_string(i);
            for (const GTok& t : s.toks) e.tokens.push_back({t.form, t.t1, t.t2});
            e.subject = {s.s_open, s.s_close};
            e.head_index = s.head;
            corpus.push_back(std::move(e));
        }

        auto subject_build = build_training_set(corpus, Stage::subject, config);
        auto head_build = build_training_set(corpus, Stage::head, config);
        bool bad = false;
        for (const auto* build : {&subject_build, &head_build}) {
            for (const BuildSkip& skip : build->skipped) {
                std::cerr << (skip.corpus_fault ? "FAULT " : "skip ") << corpus[skip.entry].id
                          << ": " << skip.reason << "\n    " << plain(sentences[skip.entry])
                          << "\n";
                bad |= skip.corpus_fault;
            }
        }
        if (bad) {
            std::cerr << "corpus generation aborted: gold entries conflict with the shipped "
                         "tables\n";
            return 1;
        }

        std::size_t correct = 0;
        for (const TrainingItem& item : subject_build.items) correct += item.correct ? 1 : 0;
        std::fprintf(stderr,
                     "sentences: %zu\nsubject items: %zu (%zu correct)\nhead items: %zu\n"
                     "mean candidates: %.2f\n",
                     corpus.size(), subject_build.items.size(), correct,
                     head_build.items.size(),
                     double(subject_build.items.size()) / double(correct ? correct : 1));

        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << "# Synthetic gold corpus in the style of diesel-engine manuals.\n"
            << "# One sentence per line: form/TAG or form/TAG1/TAG2 tokens with\n"
            << "# [S ... S] around the subject and [H ... H] around its head.\n"
            << "# Generated by tools/corpusgen; do not edit by hand.\n";
        for (const Sentence& s : sentences) out << render(s) << "\n";
        std::cout << "wrote " << sentences.size() << " sentences to " << out_path << "\n";
    } catch (const std::exception& e) {
        std::cerr << "corpusgen: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
