#include "elm/spectra.hpp"

#include <array>
#include <cmath>

namespace elm {

namespace {
constexpr double kDegeneracyTol = 1e-10;
}

SpectrumResult solve(const ModelParams& p, Representation rep, int qubit_cap) {
    p.validate();
    const RealSymmetricMatrix h =
        rep == Representation::Collective ? elm_collective(p) : elm_qubit(p, qubit_cap);
    const EighResult e = eigh(h);
    SpectrumResult r;
    r.params = p;
    r.representation = rep;
    r.energies_per_particle.resize(e.eigenvalues.size());
    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k)
        r.energies_per_particle[k] = e.eigenvalues(k) / p.n;
    r.ground_vector = e.eigenvectors.col(0);
    r.degeneracy_tolerance = kDegeneracyTol;
    return r;
}

double order_parameter(const ModelParams& p) {
    p.validate();
    const CollectiveBasis basis(p.n);
    const EighResult e = eigh(elm_collective(p));
    const Mat sz = collective_operator(CollectiveOp::Sz, basis);
    const double e0 = e.eigenvalues(0);
    int deg = 1;
    while (deg < e.eigenvalues.size() && e.eigenvalues(deg) - e0 < kDegeneracyTol) ++deg;
    double sz_mean = 0.0;
    for (int k = 0; k < deg; ++k) {
        const Vec v = e.eigenvectors.col(k);
        sz_mean += v.dot(sz * v);
    }
    sz_mean /= deg;
    return (sz_mean + 0.5 * p.n) / p.n;
}

PathSpec PathSpec::path1(int samples) {
    return {Kind::Path1, samples, true, 0.0, 0.0, 1.0};
}
PathSpec PathSpec::path2(int samples) {
    return {Kind::Path2, samples, true, 1.0 / std::sqrt(2.0), 0.0, 1.0};
}
PathSpec PathSpec::path3(int samples) {
    return {Kind::Path3, samples, false, 1.0, 0.0, 1.0 / std::sqrt(2.0)};
}

std::array<double, 3> PathSpec::point(int /*n_unused*/, int k) const {
    if (samples < 2) throw std::invalid_argument("PathSpec: need at least 2 samples");
    const double f = static_cast<double>(k) / (samples - 1);
    const double c = lo + f * (hi - lo);
    if (sweep_lambda) return {c, fixed_value, c};
    return {fixed_value, c, c};
}

std::vector<PathRow> spectrum_along_path(int n, const PathSpec& path, int level_count,
                                         Execution exec) {
    std::vector<PathRow> rows(path.samples);
    for_each_index(path.samples, exec, [&](std::size_t k) {
        const auto [lam, al, c] = path.point(n, static_cast<int>(k));
        const ModelParams p{n, lam, al};
        const SpectrumResult s = solve(p, Representation::Collective);
        PathRow row;
        row.control = c;
        const int levels = std::min<int>(level_count, static_cast<int>(s.energies_per_particle.size()));
        row.energies_per_particle.assign(s.energies_per_particle.begin(),
                                         s.energies_per_particle.begin() + levels);
        row.order_parameter = order_parameter(p);
        rows[k] = std::move(row);
    });
    return rows;
}

}  // namespace elm
