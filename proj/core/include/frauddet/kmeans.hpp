#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "frauddet/matrix.hpp"

namespace frauddet {

struct KMeansModel {
    std::size_t k = 0;
    Matrix centroids;               // k x d
    double inertia = 0.0;           // sum of squared distances to assigned centroids
    std::size_t iterations_run = 0;
    std::vector<double> inertia_trace;  // one entry per assignment pass
};

/// Lloyd iteration from k-means++ seeding. Stops when the relative inertia
/// improvement falls below `tol`, assignments stop changing, or `max_iter`
/// passes have run. A cluster that empties is reseeded to the point farthest
/// from its assigned centroid, which keeps k constant and the trace
/// non-increasing.
KMeansModel fit_kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                       std::size_t max_iter = 300, double tol = 1e-4);

/// Index of the nearest centroid per row, ties to the lowest index.
std::vector<std::size_t> kmeans_assign(const KMeansModel& model, const Matrix& points);
std::size_t kmeans_assign_row(const KMeansModel& model, std::span<const double> row);

/// Plain text persistence: one centroid per line, values space-separated.
void write_centroids(std::ostream& out, const KMeansModel& model);

}  // namespace frauddet
