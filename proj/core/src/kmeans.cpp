#include "frauddet/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "frauddet/random.hpp"

namespace frauddet {

namespace {

/// k-means++ seeding: first centroid uniform, the rest drawn with probability
/// proportional to squared distance from the nearest chosen centroid.
Matrix plus_plus_init(const Matrix& points, std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = points.rows();
    Matrix centroids(k, points.cols());
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());

    std::uniform_int_distribution<std::size_t> uniform(0, n - 1);
    std::size_t chosen = uniform(rng);
    for (std::size_t c = 0; c < k; ++c) {
        auto dst = centroids.row(c);
        const auto src = points.row(chosen);
        std::copy(src.begin(), src.end(), dst.begin());
        if (c + 1 == k) break;

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points.row(i), src));
            total += d2[i];
        }
        if (total <= 0.0) {
            chosen = uniform(rng);  // all points coincide with chosen centroids
            continue;
        }
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng);
        chosen = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            target -= d2[i];
            if (target <= 0.0) {
                chosen = i;
                break;
            }
        }
    }
    return centroids;
}

std::size_t nearest_centroid(const Matrix& centroids, std::span<const double> row) {
    std::size_t best = 0;
    double best_d2 = squared_distance(row, centroids.row(0));
    for (std::size_t c = 1; c < centroids.rows(); ++c) {
        const double d2 = squared_distance(row, centroids.row(c));
        if (d2 < best_d2) {  // strict: ties stay with the lower index
            best_d2 = d2;
            best = c;
        }
    }
    return best;
}

}  // namespace

KMeansModel fit_kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                       std::size_t max_iter, double tol) {
    const std::size_t n = points.rows();
    const std::size_t d = points.cols();
    if (k < 1) throw std::invalid_argument("fit_kmeans: k must be >= 1");
    if (k > n) throw std::invalid_argument("fit_kmeans: k exceeds the number of points");

    auto rng = make_rng(seed);
    KMeansModel model;
    model.k = k;
    model.centroids = plus_plus_init(points, k, rng);

    std::vector<std::size_t> assignment(n, k);  // k = unassigned sentinel
    std::vector<std::size_t> counts(k);
    double prev_inertia = std::numeric_limits<double>::infinity();

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = nearest_centroid(model.centroids, points.row(i));
            inertia += squared_distance(points.row(i), model.centroids.row(c));
            if (c != assignment[i]) {
                assignment[i] = c;
                changed = true;
            }
        }
        model.inertia_trace.push_back(inertia);
        model.inertia = inertia;
        model.iterations_run = iter + 1;

        if (!changed) break;
        if (prev_inertia < std::numeric_limits<double>::infinity() &&
            prev_inertia - inertia < tol * prev_inertia)
            break;
        prev_inertia = inertia;

        // Update step: centroids become the means of their assigned points.
        Matrix sums(k, d);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto dst = sums.row(assignment[i]);
            const auto src = points.row(i);
            for (std::size_t j = 0; j < d; ++j) dst[j] += src[j];
            ++counts[assignment[i]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            auto dst = model.centroids.row(c);
            for (std::size_t j = 0; j < d; ++j)
                dst[j] = sums(c, j) / static_cast<double>(counts[c]);
        }
        // Reseed any emptied cluster to the point farthest from its centroid.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            std::size_t farthest = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d2 =
                    squared_distance(points.row(i), model.centroids.row(assignment[i]));
                if (d2 > best) {
                    best = d2;
                    farthest = i;
                }
            }
            auto dst = model.centroids.row(c);
            const auto src = points.row(farthest);
            std::copy(src.begin(), src.end(), dst.begin());
        }
    }
    return model;
}

std::size_t kmeans_assign_row(const KMeansModel& model, std::span<const double> row) {
    if (row.size() != model.centroids.cols())
        throw std::invalid_argument("kmeans_assign: dimension mismatch");
    return nearest_centroid(model.centroids, row);
}

std::vector<std::size_t> kmeans_assign(const KMeansModel& model, const Matrix& points) {
    if (points.rows() > 0 && points.cols() != model.centroids.cols())
        throw std::invalid_argument("kmeans_assign: dimension mismatch");
    std::vector<std::size_t> out(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i)
        out[i] = nearest_centroid(model.centroids, points.row(i));
    return out;
}

void write_centroids(std::ostream& out, const KMeansModel& model) {
    out.precision(17);
    for (std::size_t c = 0; c < model.centroids.rows(); ++c) {
        const auto row = model.centroids.row(c);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out << ' ';
            out << row[j];
        }
        out << '\n';
    }
}

}  // namespace frauddet
