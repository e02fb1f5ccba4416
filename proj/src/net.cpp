#include "hodyne/net.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

namespace hodyne {

double update_weight(double w, int delta) {
    double dw = delta * w;
    double dw4 = dw * dw * dw * dw;
    return (1.0 + dw / (1.0 + dw4)) * w;
}

SingleLayerNet::SingleLayerNet(const Tagset& tagset, Stage stage, FeatureMode mode)
    : tagset_hash_(tagset.identity_hash()), stage_(stage), mode_(mode) {}

namespace {

// Sorted iteration keeps forward sums deterministic.
template <typename Fn>
void for_each_tuple(const FeatureSet& features, Fn&& fn) {
    for (TupleKey t : features.bipos) fn(t);
    for (TupleKey t : features.tripos) fn(t);
}

}  // namespace

std::pair<double, double> SingleLayerNet::forward(const FeatureSet& features) const {
    double yes = 0.0, no = 0.0;
    for_each_tuple(features, [&](TupleKey t) {
        auto it = links_.find(t);
        if (it == links_.end()) return;
        if (it->second.yes) yes += *it->second.yes;
        if (it->second.no) no += *it->second.no;
    });
    return {yes, no};
}

bool SingleLayerNet::train_item(const TrainingItem& item) {
    // Lazy creation on the desired side happens before the item is scored,
    // so a brand-new tuple immediately supports its own label.
    for_each_tuple(item.features, [&](TupleKey t) {
        LinkPair& link = links_[t];
        auto& side = item.correct ? link.yes : link.no;
        if (!side) side = 1.0;
    });

    auto [yes, no] = forward(item.features);
    bool desired_wins = item.correct ? yes > no : no > yes;  // a tie is not a win
    if (desired_wins) return true;

    for_each_tuple(item.features, [&](TupleKey t) {
        LinkPair& link = links_[t];
        auto& desired = item.correct ? link.yes : link.no;
        auto& unwanted = item.correct ? link.no : link.yes;
        *desired = update_weight(*desired, +1);
        if (unwanted) *unwanted = update_weight(*unwanted, -1);
    });
    return false;
}

double SingleLayerNet::gamma(const FeatureSet& features) const {
    auto [yes, no] = forward(features);
    return yes - no;
}

std::size_t SingleLayerNet::link_count() const {
    std::size_t n = 0;
    for (const auto& [key, link] : links_) n += (link.yes ? 1 : 0) + (link.no ? 1 : 0);
    return n;
}

std::pair<double, double> SingleLayerNet::weight_range() const {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& [key, link] : links_) {
        for (const auto& side : {link.yes, link.no}) {
            if (!side) continue;
            if (first) lo = hi = *side, first = false;
            else lo = std::min(lo, *side), hi = std::max(hi, *side);
        }
    }
    return {lo, hi};
}

TrainStats train(SingleLayerNet& net, std::span<const TrainingItem> items, double threshold,
                 int max_cycles) {
    if (items.empty()) throw std::invalid_argument("train: no training items");
    auto start = std::chrono::steady_clock::now();
    TrainStats stats;
    for (int cycle = 1; cycle <= max_cycles; ++cycle) {
        int hits = 0;
        for (const TrainingItem& item : items) hits += net.train_item(item) ? 1 : 0;
        stats.cycles = cycle;
        stats.cycle_errors.push_back(static_cast<int>(items.size()) - hits);
        stats.final_accuracy = double(hits) / double(items.size());
        if (stats.final_accuracy >= threshold) {
            stats.converged = true;
            break;
        }
    }
    net.mark_trained();
    stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stats.links = net.link_count();
    auto [lo, hi] = net.weight_range();
    stats.min_weight = lo;
    stats.max_weight = hi;
    stats.weight_range_warning = net.tuple_count() > 0 && (lo <= 1e-3 || hi >= 5.0);
    return stats;
}

double gamma(const SingleLayerNet& net, const FeatureSet& features) { return net.gamma(features); }

Selection select(const SingleLayerNet& net, std::span<const FeatureSet> candidates) {
    if (candidates.empty()) throw std::invalid_argument("select: no candidates");
    Selection sel;
    sel.gammas.reserve(candidates.size());
    for (const FeatureSet& f : candidates) sel.gammas.push_back(net.gamma(f));
    sel.winner = 0;
    for (std::size_t i = 1; i < sel.gammas.size(); ++i)
        if (sel.gammas[i] > sel.gammas[sel.winner]) sel.winner = i;
    return sel;
}

namespace {

std::string format_weight(double w) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, res.ptr);
}

}  // namespace

void SingleLayerNet::save(std::ostream& out, const Tagset& tagset) const {
    if (!trained_) throw std::logic_error("save: net is not trained");
    if (tagset.identity_hash() != tagset_hash_)
        throw std::logic_error("save: tagset does not match the net");
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(tagset_hash_));
    out << "hodyne-net v1 mode=" << feature_mode_name(mode_) << " tagset=" << hash
        << " stage=" << (stage_ == Stage::subject ? "subject" : "head") << "\n";

    std::map<std::string, const LinkPair*> ordered;
    for (const auto& [key, link] : links_) ordered.emplace(tuple_to_text(key, tagset), &link);
    for (const auto& [text, link] : ordered) {
        out << text << ' ' << (link->yes ? format_weight(*link->yes) : "-") << ' '
            << (link->no ? format_weight(*link->no) : "-") << "\n";
    }
}

SingleLayerNet SingleLayerNet::load(std::istream& in, const std::string& source_name,
                                    const Tagset& tagset) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error(source_name, 1, "empty net file");
    auto fields = split_fields(line);
    if (fields.size() != 5 || fields[0] != "hodyne-net" || fields[1] != "v1")
        throw parse_error(source_name, 1,
                          "bad header (expected 'hodyne-net v1 mode=... tagset=... stage=...')");
    auto value_of = [&](const std::string& field, const std::string& key) {
        if (field.rfind(key + "=", 0) != 0)
            throw parse_error(source_name, 1, "expected '" + key + "=...' in header");
        return field.substr(key.size() + 1);
    };

    SingleLayerNet net;
    try {
        net.mode_ = parse_feature_mode(value_of(fields[2], "mode"));
    } catch (const std::invalid_argument& e) {
        throw parse_error(source_name, 1, e.what());
    }
    char expected_hash[32];
    std::snprintf(expected_hash, sizeof expected_hash, "%016llx",
                  static_cast<unsigned long long>(tagset.identity_hash()));
    if (value_of(fields[3], "tagset") != expected_hash)
        throw parse_error(source_name, 1, "net was trained with a different tagset");
    net.tagset_hash_ = tagset.identity_hash();
    std::string stage = value_of(fields[4], "stage");
    if (stage == "subject") net.stage_ = Stage::subject;
    else if (stage == "head") net.stage_ = Stage::head;
    else throw parse_error(source_name, 1, "stage must be 'subject' or 'head'");

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        auto parts = split_fields(line);
        if (parts.empty()) continue;
        if (parts.size() != 3)
            throw parse_error(source_name, lineno, "expected '<tuple> <w_yes|-> <w_no|->'");
        TupleKey key;
        try {
            key = tuple_from_text(parts[0], tagset);
        } catch (const std::invalid_argument& e) {
            throw parse_error(source_name, lineno, e.what());
        }
        LinkPair link;
        auto parse_side = [&](const std::string& text) -> std::optional<double> {
            if (text == "-") return std::nullopt;
            double w = 0.0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), w);
            if (res.ec != std::errc() || res.ptr != text.data() + text.size() || w < 0.0)
                throw parse_error(source_name, lineno, "bad weight '" + text + "'");
            return w;
        };
        link.yes = parse_side(parts[1]);
        link.no = parse_side(parts[2]);
        if (!net.links_.emplace(key, link).second)
            throw parse_error(source_name, lineno, "duplicate tuple '" + parts[0] + "'");
    }
    net.trained_ = true;
    return net;
}

SingleLayerNet load_net_file(const std::string& path, const Tagset& tagset) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open net file: " + path);
    return SingleLayerNet::load(in, path, tagset);
}

void save_net_file(const SingleLayerNet& net, const std::string& path, const Tagset& tagset) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write net file: " + path);
    net.save(out, tagset);
}

}  // namespace hodyne
