#include "frauddet/ensemble.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace frauddet {

std::string to_string(AggregationRule rule) {
    return rule == AggregationRule::MajorityVote ? "CC-MV" : "CC-OR";
}

void EnsembleSpec::validate() const {
    if (rule == AggregationRule::MajorityVote && members.size() % 2 == 0)
        throw std::invalid_argument("EnsembleSpec: majority vote needs an odd member count");
    if (rule == AggregationRule::OrLogic && members.size() < 2)
        throw std::invalid_argument("EnsembleSpec: OR rule needs at least two members");
    std::set<std::size_t> unique(members.begin(), members.end());
    if (unique.size() != members.size())
        throw std::invalid_argument("EnsembleSpec: duplicate members");
}

std::vector<int> aggregate_mv(const VoteMatrix& votes) {
    if (votes.members % 2 == 0)
        throw std::invalid_argument("aggregate_mv: member count must be odd");
    std::vector<int> out(votes.objects);
    for (std::size_t i = 0; i < votes.objects; ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < votes.members; ++j) ones += votes.at(i, j);
        out[i] = 2 * ones > votes.members ? 1 : 0;
    }
    return out;
}

std::vector<int> aggregate_or(const VoteMatrix& votes) {
    std::vector<int> out(votes.objects, 0);
    for (std::size_t i = 0; i < votes.objects; ++i)
        for (std::size_t j = 0; j < votes.members; ++j)
            if (votes.at(i, j)) {
                out[i] = 1;
                break;
            }
    return out;
}

std::vector<int> predict_ensemble(const EnsembleSpec& spec,
                                  const std::vector<const FittedClassifier*>& members,
                                  const Matrix& features,
                                  std::vector<std::size_t>* invocations) {
    spec.validate();
    if (members.size() != spec.members.size())
        throw std::invalid_argument("predict_ensemble: member list does not match spec");
    if (invocations) invocations->assign(members.size(), 0);

    std::vector<int> out(features.rows(), 0);
    if (spec.rule == AggregationRule::OrLogic) {
        for (std::size_t i = 0; i < features.rows(); ++i) {
            const auto row = features.row(i);
            for (std::size_t j = 0; j < members.size(); ++j) {
                if (invocations) ++(*invocations)[j];
                if (members[j]->predict_row(row) == 1) {
                    out[i] = 1;
                    break;  // remaining members are not consulted for this object
                }
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < features.rows(); ++i) {
        const auto row = features.row(i);
        std::size_t ones = 0;
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (invocations) ++(*invocations)[j];
            ones += static_cast<std::size_t>(members[j]->predict_row(row));
        }
        out[i] = 2 * ones > members.size() ? 1 : 0;
    }
    return out;
}

namespace {

bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
    const std::size_t size = combo.size();
    std::size_t pos = size;
    while (pos-- > 0) {
        if (combo[pos] != pos + n - size) {
            ++combo[pos];
            for (std::size_t i = pos + 1; i < size; ++i) combo[i] = combo[i - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<EnsembleSpec> enumerate_ensembles(const std::vector<std::string>& pool,
                                              AggregationRule rule) {
    std::set<std::string> unique(pool.begin(), pool.end());
    if (unique.size() != pool.size())
        throw std::invalid_argument("enumerate_ensembles: duplicate pool entries");

    const std::vector<std::size_t> sizes =
        rule == AggregationRule::MajorityVote ? std::vector<std::size_t>{3, 5}
                                              : std::vector<std::size_t>{2, 3, 4, 5};
    std::vector<EnsembleSpec> out;
    for (std::size_t size : sizes) {
        if (size > pool.size()) continue;
        std::vector<std::size_t> combo(size);
        for (std::size_t i = 0; i < size; ++i) combo[i] = i;
        do {
            EnsembleSpec spec;
            spec.members = combo;
            spec.rule = rule;
            spec.index = out.size() + 1;
            out.push_back(std::move(spec));
        } while (next_combination(combo, pool.size()));
    }
    return out;
}

}  // namespace frauddet
