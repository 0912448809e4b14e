#include "elm/cluster.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "elm/dataset.hpp"
#include "elm/meanfield.hpp"
#include "elm/rng.hpp"

namespace elm {

std::vector<std::vector<double>> standardize_rows(const std::vector<std::vector<double>>& x) {
    if (x.empty()) return {};
    const std::size_t dim = x.front().size();
    std::vector<double> mean(dim, 0.0), sd(dim, 0.0);
    for (const auto& row : x)
        for (std::size_t c = 0; c < dim; ++c) mean[c] += row[c];
    for (double& m : mean) m /= x.size();
    for (const auto& row : x)
        for (std::size_t c = 0; c < dim; ++c) {
            const double d = row[c] - mean[c];
            sd[c] += d * d;
        }
    for (double& s : sd) {
        s = std::sqrt(s / x.size());
        if (s < 1e-12) s = 1.0;
    }
    std::vector<std::vector<double>> z(x.size(), std::vector<double>(dim));
    for (std::size_t r = 0; r < x.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c) z[r][c] = (x[r][c] - mean[c]) / sd[c];
    return z;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double d = a[c] - b[c];
        s += d * d;
    }
    return s;
}

}  // namespace

ClusterResult fuzzy_cmeans(const std::vector<std::vector<double>>& x, const ClusterConfig& cfg) {
    if (cfg.k < 2) throw std::invalid_argument("fuzzy_cmeans: k must be >= 2");
    if (cfg.fuzziness <= 1.0) throw std::invalid_argument("fuzzy_cmeans: m must exceed 1");
    const std::size_t n = x.size();
    if (n < static_cast<std::size_t>(cfg.k))
        throw std::invalid_argument("fuzzy_cmeans: fewer samples than clusters");
    const std::size_t dim = x.front().size();
    for (const auto& row : x)
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("fuzzy_cmeans: non-finite feature");

    ClusterResult res;
    // seeded initialization: k distinct sample rows
    RngStream rng(cfg.seed, stream::cluster_init);
    {
        std::vector<std::size_t> perm = rng.permutation(n);
        for (int j = 0; j < cfg.k; ++j) res.centroids.push_back(x[perm[j]]);
    }
    res.membership.assign(n, std::vector<double>(cfg.k, 0.0));
    std::vector<std::vector<double>> d2(n, std::vector<double>(cfg.k, 0.0));
    const double expo = 1.0 / (cfg.fuzziness - 1.0);

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        // membership update
        for_each_index(n, cfg.exec, [&](std::size_t i) {
            auto& w = res.membership[i];
            int zero_at = -1;
            for (int j = 0; j < cfg.k; ++j) {
                d2[i][j] = sq_dist(x[i], res.centroids[j]);
                if (d2[i][j] == 0.0 && zero_at < 0) zero_at = j;
            }
            if (zero_at >= 0) {
                for (int j = 0; j < cfg.k; ++j) w[j] = j == zero_at ? 1.0 : 0.0;
                return;
            }
            for (int j = 0; j < cfg.k; ++j) {
                double denom = 0.0;
                for (int jp = 0; jp < cfg.k; ++jp)
                    denom += std::pow(d2[i][j] / d2[i][jp], expo);
                w[j] = 1.0 / denom;
            }
        });
        // objective
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (int j = 0; j < cfg.k; ++j)
                obj += std::pow(res.membership[i][j], cfg.fuzziness) * d2[i][j];
        res.objective_history.push_back(obj);
        res.iterations = it;

        // centroid update
        double move = 0.0;
        for (int j = 0; j < cfg.k; ++j) {
            std::vector<double> num(dim, 0.0);
            double den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double wm = std::pow(res.membership[i][j], cfg.fuzziness);
                den += wm;
                const auto& row = x[i];
                for (std::size_t c = 0; c < dim; ++c) num[c] += wm * row[c];
            }
            if (den <= 0.0) continue;  // empty cluster keeps its centroid
            double shift = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double v = num[c] / den;
                const double d = v - res.centroids[j][c];
                shift += d * d;
                res.centroids[j][c] = v;
            }
            move = std::max(move, std::sqrt(shift));
        }
        if (move < cfg.centroid_tolerance) break;
    }
    return res;
}

CriticalLineEstimate critical_line_estimate(const Dataset& data, const ClusterResult& result) {
    if (data.samples.size() != result.membership.size())
        throw std::invalid_argument("critical_line_estimate: membership/sample count mismatch");
    const int k = static_cast<int>(result.centroids.size());

    // group sample indices by alpha (grid order: alpha-major blocks)
    std::map<double, std::vector<std::size_t>> by_alpha;
    for (std::size_t s = 0; s < data.samples.size(); ++s)
        by_alpha[data.samples[s].alpha].push_back(s);

    CriticalLineEstimate best;
    double best_err = -1.0;
    for (int j = 0; j < k; ++j) {
        CriticalLineEstimate est;
        est.critical_cluster = j;
        double err = 0.0;
        for (const auto& [alpha, idx] : by_alpha) {
            std::size_t arg = idx.front();
            for (std::size_t s : idx)
                if (result.membership[s][j] > result.membership[arg][j]) arg = s;
            est.alphas.push_back(alpha);
            est.lambdas.push_back(data.samples[arg].lambda);
            err += std::abs(data.samples[arg].lambda - critical_lambda(alpha));
        }
        err /= est.alphas.size();
        est.mean_abs_error = err;
        if (best_err < 0.0 || err < best_err) {
            best_err = err;
            best = std::move(est);
        }
    }
    return best;
}

}  // namespace elm
