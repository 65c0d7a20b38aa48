#pragma once

#include <random>

#include "frauddet/dataset.hpp"

namespace benchdata {

inline frauddet::Dataset imbalanced(std::size_t n, std::size_t d, double fraud_rate,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    frauddet::Dataset data;
    data.features = frauddet::Matrix(n, d);
    data.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool fraud = u(rng) < fraud_rate;
        data.labels[i] = fraud ? 1 : 0;
        for (std::size_t j = 0; j < d; ++j)
            data.features(i, j) = noise(rng) + (fraud ? 1.5 : 0.0);
    }
    if (data.count_label(1) == 0) data.labels[0] = 1;
    if (data.count_label(0) == 0) data.labels[1] = 0;
    for (std::size_t j = 0; j < d; ++j)
        data.feature_names.push_back("f" + std::to_string(j));
    return data;
}

}  // namespace benchdata
