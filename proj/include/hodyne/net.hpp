#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hodyne/encoder.hpp"
#include "hodyne/tagset.hpp"

namespace hodyne {

// Bounded multiplicative update: w * (1 + dw/(1 + dw^4)) with dw = delta*w.
// delta is +1 to strengthen, -1 to weaken; the factor stays in (0, 2) and
// never drives a positive weight to zero.
double update_weight(double w, int delta);

struct TrainingItem {
    FeatureSet features;
    bool correct = false;
};

struct TrainStats {
    int cycles = 0;
    double final_accuracy = 0.0;
    std::vector<int> cycle_errors;
    double seconds = 0.0;
    std::size_t links = 0;
    bool converged = false;
    double min_weight = 0.0;
    double max_weight = 0.0;
    // Post-training observation only; the net never clamps.
    bool weight_range_warning = false;
};

// Two-output single layer over sparse tuple features. Links are created
// lazily: a tuple gets its yes/no link the first time an item presents it
// with that desired label, initialised to 1.0. Unknown tuples contribute
// nothing at test time.
class SingleLayerNet {
public:
    SingleLayerNet() = default;
    SingleLayerNet(const Tagset& tagset, Stage stage, FeatureMode mode);

    std::pair<double, double> forward(const FeatureSet& features) const;

    // Returns true when the desired output already won (no weights touched).
    bool train_item(const TrainingItem& item);

    double gamma(const FeatureSet& features) const;

    Stage stage() const { return stage_; }
    FeatureMode feature_mode() const { return mode_; }
    std::uint64_t tagset_hash() const { return tagset_hash_; }
    bool trained() const { return trained_; }
    void mark_trained() { trained_ = true; }
    std::size_t link_count() const;
    std::size_t tuple_count() const { return links_.size(); }

    std::pair<double, double> weight_range() const;

    void save(std::ostream& out, const Tagset& tagset) const;
    static SingleLayerNet load(std::istream& in, const std::string& source_name,
                               const Tagset& tagset);

private:
    struct LinkPair {
        std::optional<double> yes;
        std::optional<double> no;
    };

    std::unordered_map<TupleKey, LinkPair> links_;
    std::uint64_t tagset_hash_ = 0;
    Stage stage_ = Stage::subject;
    FeatureMode mode_ = FeatureMode::tripos_only;
    bool trained_ = false;
};

// Full passes in item order until the online accuracy of a pass reaches the
// threshold, or max_cycles. Marks the net trained either way; convergence is
// reported in the stats.
TrainStats train(SingleLayerNet& net, std::span<const TrainingItem> items,
                 double threshold = 0.97, int max_cycles = 200);

double gamma(const SingleLayerNet& net, const FeatureSet& features);

struct Selection {
    std::size_t winner = 0;
    std::vector<double> gammas;
};

// Highest gamma wins; ties go to the lowest index (generation order).
Selection select(const SingleLayerNet& net, std::span<const FeatureSet> candidates);

SingleLayerNet load_net_file(const std::string& path, const Tagset& tagset);
void save_net_file(const SingleLayerNet& net, const std::string& path, const Tagset& tagset);

}  // namespace hodyne
