#include "elm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "elm/meanfield.hpp"
#include "elm/rng.hpp"
#include "elm/spectra.hpp"

namespace elm {

namespace {

int count_inclusive(double lo, double hi, double step) {
    if (step <= 0.0) throw std::invalid_argument("GridSpec: step must be positive");
    return static_cast<int>(std::round((hi - lo) / step)) + 1;
}

}  // namespace

int GridSpec::lambda_count() const { return count_inclusive(lambda_min, lambda_max, lambda_step); }
int GridSpec::alpha_count() const { return count_inclusive(alpha_min, alpha_max, alpha_step); }
int GridSpec::time_count() const { return count_inclusive(time_min, time_max, time_step); }

std::vector<double> GridSpec::times() const {
    std::vector<double> ts(time_count());
    for (int k = 0; k < time_count(); ++k) ts[k] = time_at(k);
    return ts;
}

std::string split_tag_name(SplitTag t) {
    switch (t) {
        case SplitTag::Train: return "train";
        case SplitTag::Validation: return "validation";
        case SplitTag::Test: return "test";
        case SplitTag::PathTest: return "path-test";
    }
    return "?";
}

std::string observable_name(ObservableKind k) {
    switch (k) {
        case ObservableKind::SzTrace: return "sz";
        case ObservableKind::CzPair: return "cz";
        case ObservableKind::AllCorrelations: return "allcorr";
    }
    return "?";
}

std::vector<std::size_t> Dataset::indices_with(SplitTag tag) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (samples[i].split == tag) idx.push_back(i);
    return idx;
}

namespace {

// All 45 correlation series (3 axes x 15 pairs for N=6) from one evolution
// sweep. Series order: axis-major (x, y, z), pairs (i<j) lexicographic.
std::vector<double> all_correlations_row(const ModelParams& p, const GridSpec& grid,
                                         PropagatorKind kind, int n_trotter) {
    const QubitSpace space(p.n);
    const std::vector<double> ts = grid.times();
    const int nt = static_cast<int>(ts.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= p.n; ++i)
        for (int j = i + 1; j <= p.n; ++j) pairs.emplace_back(i, j);
    const int n_series = 3 * static_cast<int>(pairs.size());
    std::vector<double> row(static_cast<std::size_t>(n_series) * nt);

    const Mat h = elm_qubit(p).mat();
    const EighResult e = eigh(RealSymmetricMatrix(h));
    TrotterSplit split;
    EighResult e1, e2, e3;
    if (kind == PropagatorKind::Trotter) {
        split = TrotterSplit::build(p, Representation::Qubit);
        e1 = eigh(RealSymmetricMatrix(split.h1));
        e2 = eigh(RealSymmetricMatrix(split.h2));
        e3 = eigh(RealSymmetricMatrix(split.h3));
    }
    const CVec phi0 = neel_state(p.n);
    const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};

    for (int ti = 0; ti < nt; ++ti) {
        CVec v;
        if (kind == PropagatorKind::Exact) {
            v = evolve(e, phi0, ts[ti]);
        } else {
            const double dt = ts[ti] / n_trotter;
            v = phi0;
            for (int s = 0; s < n_trotter; ++s)
                v = evolve(e1, evolve(e2, evolve(e3, v, dt), dt), dt);
        }
        for (int a = 0; a < 3; ++a) {
            std::vector<double> one(p.n + 1);  // 1-based site expectations
            for (int s = 1; s <= p.n; ++s)
                one[s] = pauli_expectation(v, {s}, {axes[a]}, space);
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                const auto [i, j] = pairs[q];
                const double c =
                    pauli_expectation(v, {i, j}, {axes[a], axes[a]}, space) - one[i] * one[j];
                row[(a * pairs.size() + q) * nt + ti] = c;
            }
        }
    }
    return row;
}

}  // namespace

std::vector<double> feature_row(const ModelParams& p, const DatasetManifest& m) {
    const std::vector<double> ts = m.grid.times();
    switch (m.observable) {
        case ObservableKind::SzTrace: {
            const DynamicsTrace tr = observable_sz_trace(p, sz_trace_default_state(p.n), ts,
                                                         m.propagator, m.trotter_steps);
            return tr.values;
        }
        case ObservableKind::CzPair: {
            const DynamicsTrace tr = correlation_trace(p, Axis::Z, m.cz_i, m.cz_j, neel_state(p.n),
                                                       ts, m.propagator, m.trotter_steps);
            return tr.values;
        }
        case ObservableKind::AllCorrelations:
            return all_correlations_row(p, m.grid, m.propagator, m.trotter_steps);
    }
    throw std::logic_error("feature_row: unknown observable");
}

namespace {

void fill_manifest_shape(DatasetManifest& m) {
    m.series_length = m.grid.time_count();
    m.n_series = m.observable == ObservableKind::AllCorrelations
                     ? 3 * m.n_particles * (m.n_particles - 1) / 2
                     : 1;
}

}  // namespace

Dataset generate_dataset(const DatasetManifest& manifest_in, Execution exec) {
    Dataset data;
    data.manifest = manifest_in;
    fill_manifest_shape(data.manifest);
    const GridSpec& g = data.manifest.grid;
    const int nl = g.lambda_count(), na = g.alpha_count();
    data.samples.resize(static_cast<std::size_t>(nl) * na);

    for_each_index(data.samples.size(), exec, [&](std::size_t s) {
        const int j = static_cast<int>(s) / nl;  // alpha index
        const int i = static_cast<int>(s) % nl;  // lambda index
        Sample& smp = data.samples[s];
        smp.lambda = g.lambda_at(i);
        smp.alpha = g.alpha_at(j);
        smp.label = classify_point(smp.lambda, smp.alpha).as_int();
        const ModelParams p{data.manifest.n_particles, smp.lambda, smp.alpha};
        smp.features = feature_row(p, data.manifest);
        if (data.manifest.noise_sigma) {
            // per-sample stream: merge order cannot affect the draws
            RngStream rng(data.manifest.seed,
                          (stream::dataset_noise << 32) ^ static_cast<std::uint64_t>(s));
            for (double& f : smp.features) f += rng.normal(0.0, *data.manifest.noise_sigma);
        }
    });
    return data;
}

int path2_alpha_index(const GridSpec& grid) {
    const double target = 1.0 / std::sqrt(2.0);
    int best = 0;
    double dist = std::abs(grid.alpha_at(0) - target);
    for (int j = 1; j < grid.alpha_count(); ++j) {
        const double d = std::abs(grid.alpha_at(j) - target);
        if (d < dist) {
            dist = d;
            best = j;
        }
    }
    return best;
}

void split_dataset(Dataset& data, std::uint64_t seed) {
    const GridSpec& g = data.manifest.grid;
    const int nl = g.lambda_count();
    const int p2 = path2_alpha_index(g);
    const double alpha_p2 = g.alpha_at(p2);

    std::vector<std::size_t> rest;
    for (std::size_t s = 0; s < data.samples.size(); ++s) {
        Sample& smp = data.samples[s];
        const int j = static_cast<int>(s) / nl;
        const bool path1 = std::abs(smp.alpha) < 1e-12;
        const bool path2 = j == p2;
        const bool path3 =
            std::abs(smp.lambda - 1.0) < 1e-12 && smp.alpha <= alpha_p2 + 1e-12;
        if (path1 || path2 || path3) {
            smp.split = SplitTag::PathTest;
        } else {
            smp.split = SplitTag::Train;
            rest.push_back(s);
        }
    }
    RngStream rng(seed, stream::dataset_split);
    const std::vector<std::size_t> perm = rng.permutation(rest.size());
    const std::size_t ntest = static_cast<std::size_t>(std::llround(0.2 * rest.size()));
    for (std::size_t k = 0; k < ntest; ++k) data.samples[rest[perm[k]]].split = SplitTag::Test;
}

std::vector<Sample> fine_path_samples(const DatasetManifest& manifest_in, int path,
                                      double lambda_step, Execution exec) {
    if (path != 1 && path != 2) throw std::invalid_argument("fine_path_samples: path 1 or 2");
    DatasetManifest m = manifest_in;
    fill_manifest_shape(m);
    const double alpha = path == 1 ? 0.0 : 1.0 / std::sqrt(2.0);
    const int nl = static_cast<int>(std::round(1.0 / lambda_step)) + 1;
    std::vector<Sample> out(nl);
    for_each_index(out.size(), exec, [&](std::size_t i) {
        Sample& smp = out[i];
        smp.lambda = i * lambda_step;
        smp.alpha = alpha;
        smp.label = classify_point(smp.lambda, smp.alpha).as_int();
        smp.split = SplitTag::PathTest;
        smp.features = feature_row({m.n_particles, smp.lambda, smp.alpha}, m);
    });
    return out;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json manifest_to_json(const DatasetManifest& m) {
    nlohmann::json j;
    j["n_particles"] = m.n_particles;
    j["grid"] = {{"lambda", {m.grid.lambda_min, m.grid.lambda_max, m.grid.lambda_step}},
                 {"alpha", {m.grid.alpha_min, m.grid.alpha_max, m.grid.alpha_step}},
                 {"time", {m.grid.time_min, m.grid.time_max, m.grid.time_step}}};
    j["observable"] = observable_name(m.observable);
    j["cz_pair"] = {m.cz_i, m.cz_j};
    j["propagator"] = m.propagator == PropagatorKind::Exact ? "exact" : "trotter";
    j["trotter_steps"] = m.trotter_steps;
    if (m.noise_sigma)
        j["noise_sigma"] = *m.noise_sigma;
    else
        j["noise_sigma"] = nullptr;
    j["seed"] = m.seed;
    j["n_series"] = m.n_series;
    j["series_length"] = m.series_length;
    return j;
}

DatasetManifest manifest_from_json(const nlohmann::json& j) {
    DatasetManifest m;
    m.n_particles = j.at("n_particles").get<int>();
    auto rd = [&](const char* key, double& lo, double& hi, double& st) {
        const auto& a = j.at("grid").at(key);
        lo = a.at(0).get<double>();
        hi = a.at(1).get<double>();
        st = a.at(2).get<double>();
    };
    rd("lambda", m.grid.lambda_min, m.grid.lambda_max, m.grid.lambda_step);
    rd("alpha", m.grid.alpha_min, m.grid.alpha_max, m.grid.alpha_step);
    rd("time", m.grid.time_min, m.grid.time_max, m.grid.time_step);
    const std::string obs = j.at("observable").get<std::string>();
    m.observable = obs == "sz"        ? ObservableKind::SzTrace
                   : obs == "cz"      ? ObservableKind::CzPair
                                      : ObservableKind::AllCorrelations;
    m.cz_i = j.at("cz_pair").at(0).get<int>();
    m.cz_j = j.at("cz_pair").at(1).get<int>();
    m.propagator = j.at("propagator").get<std::string>() == "exact" ? PropagatorKind::Exact
                                                                    : PropagatorKind::Trotter;
    m.trotter_steps = j.at("trotter_steps").get<int>();
    if (!j.at("noise_sigma").is_null()) m.noise_sigma = j.at("noise_sigma").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.n_series = j.at("n_series").get<int>();
    m.series_length = j.at("series_length").get<int>();
    return m;
}

}  // namespace

void save_dataset(const Dataset& data, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream mf(fs::path(dir) / "manifest.json");
        mf << manifest_to_json(data.manifest).dump(2) << "\n";
    }
    std::ofstream f(fs::path(dir) / "features.csv");
    f << "lambda,alpha,label,split";
    const std::size_t k = data.feature_length();
    for (std::size_t c = 0; c < k; ++c) f << ",f" << c;
    f << "\n";
    for (const Sample& s : data.samples) {
        f << fmt17(s.lambda) << "," << fmt17(s.alpha) << "," << s.label << ","
          << split_tag_name(s.split);
        for (double v : s.features) f << "," << fmt17(v);
        f << "\n";
    }
}

Dataset load_dataset(const std::string& dir) {
    namespace fs = std::filesystem;
    Dataset data;
    {
        std::ifstream mf(fs::path(dir) / "manifest.json");
        if (!mf) throw std::runtime_error("load_dataset: cannot open manifest.json in " + dir);
        nlohmann::json j;
        mf >> j;
        data.manifest = manifest_from_json(j);
    }
    std::ifstream f(fs::path(dir) / "features.csv");
    if (!f) throw std::runtime_error("load_dataset: cannot open features.csv in " + dir);
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        Sample s;
        std::stringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        s.lambda = std::strtod(tok.c_str(), nullptr);
        std::getline(ss, tok, ',');
        s.alpha = std::strtod(tok.c_str(), nullptr);
        std::getline(ss, tok, ',');
        s.label = std::stoi(tok);
        std::getline(ss, tok, ',');
        s.split = tok == "train"       ? SplitTag::Train
                  : tok == "test"      ? SplitTag::Test
                  : tok == "path-test" ? SplitTag::PathTest
                                       : SplitTag::Validation;
        while (std::getline(ss, tok, ',')) s.features.push_back(std::strtod(tok.c_str(), nullptr));
        data.samples.push_back(std::move(s));
    }
    return data;
}

}  // namespace elm
