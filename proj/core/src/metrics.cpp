#include "frauddet/metrics.hpp"

#include <stdexcept>

namespace frauddet {

ConfusionCounts confusion(const std::vector<int>& predicted, const std::vector<int>& actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("confusion: length mismatch");
    if (predicted.empty())
        throw std::invalid_argument("confusion: empty input");
    ConfusionCounts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (actual[i] == 1)
            (predicted[i] == 1 ? c.tp : c.fn) += 1;
        else
            (predicted[i] == 1 ? c.fp : c.tn) += 1;
    }
    return c;
}

MetricsRow metrics(const ConfusionCounts& c) {
    if (c.total() == 0) throw std::invalid_argument("metrics: zero total");
    MetricsRow row;
    const auto tp = static_cast<double>(c.tp);
    const auto tn = static_cast<double>(c.tn);
    const auto fp = static_cast<double>(c.fp);
    const auto fn = static_cast<double>(c.fn);

    row.acc = (tp + tn) / static_cast<double>(c.total());
    if (c.tp + c.fn > 0) row.sens = tp / (tp + fn);
    if (c.tn + c.fp > 0) row.spec = tn / (tn + fp);
    if (row.sens && row.spec) row.bcr = 0.5 * (*row.sens + *row.spec);
    if (c.tp + c.fp + c.fn > 0) row.f1 = tp / (tp + 0.5 * (fp + fn));

    double sum = 0.0;
    int defined = 0;
    for (const auto& m : {row.acc, row.bcr, row.sens, row.spec}) {
        if (m) {
            sum += *m;
            ++defined;
        }
    }
    row.mean4 = defined > 0 ? sum / defined : 0.0;
    row.mean4_complete = (defined == 4);
    return row;
}

}  // namespace frauddet
