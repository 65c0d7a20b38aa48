#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace frauddet {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + tn + fp + fn; }

    ConfusionCounts& operator+=(const ConfusionCounts& other) {
        tp += other.tp;
        tn += other.tn;
        fp += other.fp;
        fn += other.fn;
        return *this;
    }
};

/// acc/bcr/sens/spec/f1 for one configuration. A metric whose denominator is
/// zero is reported as nullopt, never silently substituted: substituting 0 or
/// 1 would corrupt the report sort order.
struct MetricsRow {
    std::optional<double> acc;
    std::optional<double> bcr;
    std::optional<double> sens;
    std::optional<double> spec;
    std::optional<double> f1;
    double mean4 = 0.0;        ///< arithmetic mean of the defined entries among acc/bcr/sens/spec
    bool mean4_complete = false;  ///< true iff all four entries were defined
};

/// Counts with 1 = positive (fraud). Throws on length mismatch or empty input.
ConfusionCounts confusion(const std::vector<int>& predicted, const std::vector<int>& actual);

/// acc = (tp+tn)/total, sens = tp/(tp+fn), spec = tn/(tn+fp),
/// bcr = (sens+spec)/2, f1 = tp/(tp + (fp+fn)/2).
MetricsRow metrics(const ConfusionCounts& counts);

}  // namespace frauddet
