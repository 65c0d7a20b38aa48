#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frauddet/classifier.hpp"

namespace frauddet {

enum class AggregationRule { MajorityVote, OrLogic };

std::string to_string(AggregationRule rule);

/// Ordered member list plus the aggregation rule. Majority vote requires an
/// odd member count so votes cannot tie; OR requires at least two members.
struct EnsembleSpec {
    std::vector<std::size_t> members;  // indices into the model pool/roster
    AggregationRule rule = AggregationRule::MajorityVote;
    std::size_t index = 0;  // stable 1-based report index within its rule

    void validate() const;
};

/// n x m member decisions, y(i, j) = vote of member j on object i.
struct VoteMatrix {
    std::size_t objects = 0;
    std::size_t members = 0;
    std::vector<std::uint8_t> votes;  // row-major

    std::uint8_t& at(std::size_t i, std::size_t j) { return votes[i * members + j]; }
    std::uint8_t at(std::size_t i, std::size_t j) const { return votes[i * members + j]; }
};

/// y_i = mode of row i; member count must be odd.
std::vector<int> aggregate_mv(const VoteMatrix& votes);

/// y_i = 1 iff any member voted 1.
std::vector<int> aggregate_or(const VoteMatrix& votes);

/// Evaluates the ensemble per object. The OR rule walks members in spec order
/// and stops at the first positive vote; the result still equals aggregate_or
/// over the full vote matrix. `invocations`, when given, receives how many
/// times each member was consulted.
std::vector<int> predict_ensemble(const EnsembleSpec& spec,
                                  const std::vector<const FittedClassifier*>& members,
                                  const Matrix& features,
                                  std::vector<std::size_t>* invocations = nullptr);

/// All member subsets for the rule over a pool of distinct model names:
/// sizes {3, 5} for majority vote, {2, 3, 4, 5} for OR. Subsets are emitted
/// smaller sizes first, lexicographic within a size, and numbered from 1.
/// Members index into the pool. Throws on duplicate pool entries.
std::vector<EnsembleSpec> enumerate_ensembles(const std::vector<std::string>& pool,
                                              AggregationRule rule);

}  // namespace frauddet
