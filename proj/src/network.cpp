#include "elm/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "json.hpp"

#include "elm/dataset.hpp"
#include "elm/rng.hpp"

namespace elm {

void NetworkConfig::validate() const {
    if (input_channels < 1 || input_length < 2 || classes < 2)
        throw std::invalid_argument("NetworkConfig: bad input shape");
    if (dropout < 0.0 || dropout >= 1.0)
        throw std::invalid_argument("NetworkConfig: dropout must lie in [0, 1)");
    int len = input_length;
    for (const ConvBlockConfig& b : conv) {
        if (b.kernel < 1 || b.pool < 1 || b.channels < 1)
            throw std::invalid_argument("NetworkConfig: bad conv block");
        len = len - b.kernel + 1;
        if (len < 1)
            throw std::invalid_argument("NetworkConfig: input too short for the conv stack");
        len /= b.pool;
        if (len < 1)
            throw std::invalid_argument("NetworkConfig: input too short after pooling");
    }
}

namespace {

// Flat-parameter layout computed once per config.
struct Layout {
    struct Tensor {
        std::size_t offset;
        std::size_t size;
    };
    std::vector<Tensor> conv_w, conv_b, dense_w, dense_b;
    std::vector<int> conv_in_ch, conv_in_len, conv_out_len, pool_out_len;
    std::vector<int> dense_in, dense_out;
    int flat = 0;
    std::size_t total = 0;
};

Layout make_layout(const NetworkConfig& cfg) {
    Layout lay;
    std::size_t off = 0;
    int ch = cfg.input_channels;
    int len = cfg.input_length;
    for (const ConvBlockConfig& b : cfg.conv) {
        lay.conv_in_ch.push_back(ch);
        lay.conv_in_len.push_back(len);
        const int lo = len - b.kernel + 1;
        lay.conv_out_len.push_back(lo);
        lay.pool_out_len.push_back(lo / b.pool);
        const std::size_t wsz = static_cast<std::size_t>(b.channels) * ch * b.kernel;
        lay.conv_w.push_back({off, wsz});
        off += wsz;
        lay.conv_b.push_back({off, static_cast<std::size_t>(b.channels)});
        off += b.channels;
        ch = b.channels;
        len = lo / b.pool;
    }
    lay.flat = ch * len;
    int in = lay.flat;
    std::vector<int> widths = cfg.dense;
    widths.push_back(cfg.classes);
    for (int w : widths) {
        lay.dense_in.push_back(in);
        lay.dense_out.push_back(w);
        lay.dense_w.push_back({off, static_cast<std::size_t>(w) * in});
        off += static_cast<std::size_t>(w) * in;
        lay.dense_b.push_back({off, static_cast<std::size_t>(w)});
        off += w;
        in = w;
    }
    lay.total = off;
    return lay;
}

struct Forward {
    // per conv block: pre-activation, pooled output, argmax offsets
    std::vector<std::vector<double>> conv_z, pooled;
    std::vector<std::vector<int>> pool_arg;
    // dense: pre-activations and dropped activations
    std::vector<std::vector<double>> dense_z, dense_a;
    std::vector<std::vector<double>> drop_mask;
    std::vector<double> probs;
};

void softmax_inplace(std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (double& x : v) {
        x = std::exp(x - m);
        sum += x;
    }
    for (double& x : v) x /= sum;
}

void forward_pass(const NetworkConfig& cfg, const Layout& lay, const std::vector<double>& params,
                  const std::vector<double>& x, Forward& fw, RngStream* drop_rng) {
    const std::size_t nb = cfg.conv.size();
    fw.conv_z.resize(nb);
    fw.pooled.resize(nb);
    fw.pool_arg.resize(nb);
    const std::vector<double>* in = &x;
    for (std::size_t b = 0; b < nb; ++b) {
        const ConvBlockConfig& cb = cfg.conv[b];
        const int cin = lay.conv_in_ch[b], lin = lay.conv_in_len[b];
        const int lo = lay.conv_out_len[b], lp = lay.pool_out_len[b];
        const double* w = params.data() + lay.conv_w[b].offset;
        const double* bias = params.data() + lay.conv_b[b].offset;
        auto& z = fw.conv_z[b];
        z.assign(static_cast<std::size_t>(cb.channels) * lo, 0.0);
        for (int o = 0; o < cb.channels; ++o) {
            const double* wo = w + static_cast<std::size_t>(o) * cin * cb.kernel;
            double* zo = z.data() + static_cast<std::size_t>(o) * lo;
            for (int c = 0; c < cin; ++c) {
                const double* xc = in->data() + static_cast<std::size_t>(c) * lin;
                const double* wc = wo + static_cast<std::size_t>(c) * cb.kernel;
                for (int t = 0; t < lo; ++t) {
                    double acc = 0.0;
                    for (int k = 0; k < cb.kernel; ++k) acc += wc[k] * xc[t + k];
                    zo[t] += acc;
                }
            }
            for (int t = 0; t < lo; ++t) zo[t] += bias[o];
        }
        // relu + max pool
        auto& p = fw.pooled[b];
        auto& arg = fw.pool_arg[b];
        p.assign(static_cast<std::size_t>(cb.channels) * lp, 0.0);
        arg.assign(p.size(), 0);
        for (int o = 0; o < cb.channels; ++o) {
            const double* zo = z.data() + static_cast<std::size_t>(o) * lo;
            double* po = p.data() + static_cast<std::size_t>(o) * lp;
            int* ao = arg.data() + static_cast<std::size_t>(o) * lp;
            for (int q = 0; q < lp; ++q) {
                int best = q * cb.pool;
                double val = zo[best];
                for (int r = 1; r < cb.pool; ++r) {
                    if (zo[q * cb.pool + r] > val) {
                        val = zo[q * cb.pool + r];
                        best = q * cb.pool + r;
                    }
                }
                po[q] = val > 0.0 ? val : 0.0;
                ao[q] = best;
            }
        }
        in = &p;
    }

    const std::size_t nd = lay.dense_w.size();
    fw.dense_z.resize(nd);
    fw.dense_a.resize(nd);
    fw.drop_mask.assign(nd, {});
    const std::vector<double>* a = in;
    for (std::size_t d = 0; d < nd; ++d) {
        const int din = lay.dense_in[d], dout = lay.dense_out[d];
        const double* w = params.data() + lay.dense_w[d].offset;
        const double* bias = params.data() + lay.dense_b[d].offset;
        auto& z = fw.dense_z[d];
        z.assign(dout, 0.0);
        for (int o = 0; o < dout; ++o) {
            const double* wo = w + static_cast<std::size_t>(o) * din;
            double acc = bias[o];
            for (int i = 0; i < din; ++i) acc += wo[i] * (*a)[i];
            z[o] = acc;
        }
        if (d + 1 < nd) {
            auto& act = fw.dense_a[d];
            act.resize(dout);
            for (int o = 0; o < dout; ++o) act[o] = z[o] > 0.0 ? z[o] : 0.0;
            if (drop_rng && cfg.dropout > 0.0) {
                auto& mask = fw.drop_mask[d];
                mask.resize(dout);
                const double keep = 1.0 - cfg.dropout;
                for (int o = 0; o < dout; ++o)
                    mask[o] = drop_rng->uniform() < cfg.dropout ? 0.0 : 1.0 / keep;
                for (int o = 0; o < dout; ++o) act[o] *= mask[o];
            }
            a = &act;
        } else {
            fw.dense_a[d] = z;
        }
    }
    fw.probs = fw.dense_a.back();
    softmax_inplace(fw.probs);
}

void backward_pass(const NetworkConfig& cfg, const Layout& lay, const std::vector<double>& params,
                   const std::vector<double>& x, const Forward& fw, int label,
                   std::vector<double>& grad) {
    const std::size_t nd = lay.dense_w.size();
    std::vector<double> g = fw.probs;
    g[label] -= 1.0;  // d loss / d logits for cross entropy

    std::vector<double> gprev;
    for (std::size_t d = nd; d-- > 0;) {
        const int din = lay.dense_in[d], dout = lay.dense_out[d];
        // activation feeding this layer
        const std::vector<double>* a_in;
        if (d == 0)
            a_in = cfg.conv.empty() ? &x : &fw.pooled.back();
        else
            a_in = &fw.dense_a[d - 1];
        double* gw = grad.data() + lay.dense_w[d].offset;
        double* gb = grad.data() + lay.dense_b[d].offset;
        const double* w = params.data() + lay.dense_w[d].offset;
        gprev.assign(din, 0.0);
        for (int o = 0; o < dout; ++o) {
            const double go = g[o];
            gb[o] += go;
            double* gwo = gw + static_cast<std::size_t>(o) * din;
            const double* wo = w + static_cast<std::size_t>(o) * din;
            for (int i = 0; i < din; ++i) {
                gwo[i] += go * (*a_in)[i];
                gprev[i] += go * wo[i];
            }
        }
        if (d > 0) {
            // through the dropout mask and relu of layer d-1
            const auto& mask = fw.drop_mask[d - 1];
            const auto& z = fw.dense_z[d - 1];
            for (int i = 0; i < din; ++i) {
                double v = gprev[i];
                if (!mask.empty()) v *= mask[i];
                gprev[i] = z[i] > 0.0 ? v : 0.0;
            }
            g = gprev;
        }
    }

    // gprev now holds the gradient at the flattened conv output
    std::vector<double> gp = gprev;
    for (std::size_t b = cfg.conv.size(); b-- > 0;) {
        const ConvBlockConfig& cb = cfg.conv[b];
        const int cin = lay.conv_in_ch[b], lin = lay.conv_in_len[b];
        const int lo = lay.conv_out_len[b], lp = lay.pool_out_len[b];
        // unpool + relu gate
        std::vector<double> gz(static_cast<std::size_t>(cb.channels) * lo, 0.0);
        const auto& z = fw.conv_z[b];
        const auto& arg = fw.pool_arg[b];
        for (int o = 0; o < cb.channels; ++o)
            for (int q = 0; q < lp; ++q) {
                const int src = arg[static_cast<std::size_t>(o) * lp + q];
                const double zv = z[static_cast<std::size_t>(o) * lo + src];
                if (zv > 0.0)
                    gz[static_cast<std::size_t>(o) * lo + src] =
                        gp[static_cast<std::size_t>(o) * lp + q];
            }
        const std::vector<double>& input = b == 0 ? x : fw.pooled[b - 1];
        double* gw = grad.data() + lay.conv_w[b].offset;
        double* gb = grad.data() + lay.conv_b[b].offset;
        const double* w = params.data() + lay.conv_w[b].offset;
        std::vector<double> gin(static_cast<std::size_t>(cin) * lin, 0.0);
        for (int o = 0; o < cb.channels; ++o) {
            const double* gzo = gz.data() + static_cast<std::size_t>(o) * lo;
            for (int t = 0; t < lo; ++t) gb[o] += gzo[t];
            for (int c = 0; c < cin; ++c) {
                const double* xc = input.data() + static_cast<std::size_t>(c) * lin;
                double* gwc = gw + (static_cast<std::size_t>(o) * cin + c) * cb.kernel;
                const double* wc = w + (static_cast<std::size_t>(o) * cin + c) * cb.kernel;
                double* ginc = gin.data() + static_cast<std::size_t>(c) * lin;
                for (int t = 0; t < lo; ++t) {
                    const double gv = gzo[t];
                    if (gv == 0.0) continue;
                    for (int k = 0; k < cb.kernel; ++k) {
                        gwc[k] += gv * xc[t + k];
                        ginc[t + k] += gv * wc[k];
                    }
                }
            }
        }
        gp = std::move(gin);
    }
}

}  // namespace

Cnn::Cnn(NetworkConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    params_.assign(make_layout(cfg_).total, 0.0);
}

void Cnn::init_params(std::uint64_t seed) {
    const Layout lay = make_layout(cfg_);
    RngStream rng(seed, stream::net_init);
    for (std::size_t b = 0; b < cfg_.conv.size(); ++b) {
        const double lim = std::sqrt(1.0 / (lay.conv_in_ch[b] * cfg_.conv[b].kernel));
        for (std::size_t k = 0; k < lay.conv_w[b].size; ++k)
            params_[lay.conv_w[b].offset + k] = rng.uniform(-lim, lim);
        for (std::size_t k = 0; k < lay.conv_b[b].size; ++k)
            params_[lay.conv_b[b].offset + k] = 0.0;
    }
    for (std::size_t d = 0; d < lay.dense_w.size(); ++d) {
        const double lim = std::sqrt(1.0 / lay.dense_in[d]);
        for (std::size_t k = 0; k < lay.dense_w[d].size; ++k)
            params_[lay.dense_w[d].offset + k] = rng.uniform(-lim, lim);
        for (std::size_t k = 0; k < lay.dense_b[d].size; ++k)
            params_[lay.dense_b[d].offset + k] = 0.0;
    }
}

std::vector<double> Cnn::predict(const std::vector<double>& x) const {
    const Layout lay = make_layout(cfg_);
    if (x.size() != static_cast<std::size_t>(cfg_.input_channels) * cfg_.input_length)
        throw std::invalid_argument("Cnn::predict: feature shape mismatch");
    Forward fw;
    forward_pass(cfg_, lay, params_, x, fw, nullptr);
    return fw.probs;
}

double Cnn::loss_and_gradient(const std::vector<double>& x, int label, std::vector<double>& grad,
                              RngStream* drop_rng) const {
    const Layout lay = make_layout(cfg_);
    if (x.size() != static_cast<std::size_t>(cfg_.input_channels) * cfg_.input_length)
        throw std::invalid_argument("Cnn::loss_and_gradient: feature shape mismatch");
    if (grad.size() != params_.size()) grad.assign(params_.size(), 0.0);
    Forward fw;
    forward_pass(cfg_, lay, params_, x, fw, drop_rng);
    backward_pass(cfg_, lay, params_, x, fw, label, grad);
    return -std::log(std::max(fw.probs[label], 1e-300));
}

namespace {

std::vector<double> standardized(const Cnn& model, const std::vector<double>& raw) {
    std::vector<double> x(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k)
        x[k] = (raw[k] - model.feature_mean[k]) / model.feature_std[k];
    return x;
}

void fit_standardization(Cnn& model, const Dataset& data, const std::vector<std::size_t>& pool) {
    const std::size_t k = data.feature_length();
    model.feature_mean.assign(k, 0.0);
    model.feature_std.assign(k, 1.0);
    if (pool.empty()) return;
    for (std::size_t s : pool)
        for (std::size_t c = 0; c < k; ++c) model.feature_mean[c] += data.samples[s].features[c];
    for (double& m : model.feature_mean) m /= pool.size();
    std::vector<double> var(k, 0.0);
    for (std::size_t s : pool)
        for (std::size_t c = 0; c < k; ++c) {
            const double d = data.samples[s].features[c] - model.feature_mean[c];
            var[c] += d * d;
        }
    for (std::size_t c = 0; c < k; ++c) {
        const double sd = std::sqrt(var[c] / pool.size());
        model.feature_std[c] = sd > 1e-12 ? sd : 1.0;
    }
}

Cnn train_on_pool(const Dataset& data, const std::vector<std::size_t>& pool,
                  const NetworkConfig& net_in, const TrainConfig& tc,
                  std::vector<EpochRecord>* log) {
    NetworkConfig net = net_in;
    net.input_length = data.manifest.series_length;
    net.input_channels = data.manifest.n_series;
    Cnn model(net);
    model.init_params(tc.seed);
    fit_standardization(model, data, pool);

    std::vector<std::vector<double>> xs(pool.size());
    std::vector<int> ys(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k) {
        xs[k] = standardized(model, data.samples[pool[k]].features);
        ys[k] = data.samples[pool[k]].label;
    }

    const std::size_t np = model.param_count();
    std::vector<double> m1(np, 0.0), m2(np, 0.0);
    long step = 0;

    const int nthreads = std::max(1, max_threads());
    std::vector<std::vector<double>> partial(nthreads);
    for (auto& p : partial) p.assign(np, 0.0);

    RngStream epoch_rng(tc.seed, stream::net_train);
    for (int epoch = 1; epoch <= tc.epochs; ++epoch) {
        // per-epoch validation redraw
        const std::vector<std::size_t> perm = epoch_rng.permutation(pool.size());
        const std::size_t nval =
            std::min(pool.size() > 1 ? pool.size() - 1 : 0,
                     static_cast<std::size_t>(std::llround(tc.validation_fraction * pool.size())));
        std::vector<std::size_t> val(perm.begin(), perm.begin() + nval);
        std::vector<std::size_t> tr(perm.begin() + nval, perm.end());
        // training order reshuffle
        {
            const std::vector<std::size_t> p2 = epoch_rng.permutation(tr.size());
            std::vector<std::size_t> shuffled(tr.size());
            for (std::size_t k = 0; k < tr.size(); ++k) shuffled[k] = tr[p2[k]];
            tr.swap(shuffled);
        }

        double loss_sum = 0.0;
        long loss_count = 0;
        for (std::size_t s0 = 0; s0 < tr.size(); s0 += tc.batch) {
            const std::size_t bsz = std::min<std::size_t>(tc.batch, tr.size() - s0);
            ++step;
            for (auto& p : partial) std::fill(p.begin(), p.end(), 0.0);
            std::vector<double> losses(bsz, 0.0);

            const long long step_id = step;
#ifdef ELM_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (tc.exec == Execution::Parallel)
#endif
            for (long long bi = 0; bi < static_cast<long long>(bsz); ++bi) {
                int tid = 0;
#ifdef ELM_HAVE_OPENMP
                tid = omp_get_thread_num();
#endif
                // dropout stream depends on (seed, step, slot) only
                RngStream drop(tc.seed, (stream::net_train << 40) ^
                                            (static_cast<std::uint64_t>(step_id) << 16) ^
                                            static_cast<std::uint64_t>(bi));
                const std::size_t s = tr[s0 + bi];
                losses[bi] = model.loss_and_gradient(xs[s], ys[s], partial[tid],
                                                     net.dropout > 0 ? &drop : nullptr);
            }
            // deterministic merge in thread order, then the Adam step
            std::vector<double>& g = partial[0];
            for (int t = 1; t < nthreads; ++t)
                for (std::size_t k = 0; k < np; ++k) g[k] += partial[t][k];
            const double inv = 1.0 / static_cast<double>(bsz);
            for (double l : losses) loss_sum += l;
            loss_count += static_cast<long>(bsz);

            const double b1 = tc.beta1, b2 = tc.beta2;
            const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
            const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
            std::vector<double>& params = model.params();
            for (std::size_t k = 0; k < np; ++k) {
                const double gk = g[k] * inv;
                m1[k] = b1 * m1[k] + (1.0 - b1) * gk;
                m2[k] = b2 * m2[k] + (1.0 - b2) * gk * gk;
                params[k] -= tc.learning_rate * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + tc.adam_eps);
            }
        }

        if (log) {
            long correct = 0;
            for (std::size_t s : val) {
                const std::vector<double> probs = model.predict(xs[s]);
                const int pred = probs[1] > probs[0] ? 1 : 0;
                if (pred == ys[s]) ++correct;
            }
            log->push_back({epoch, loss_count ? loss_sum / loss_count : 0.0,
                            val.empty() ? 0.0 : static_cast<double>(correct) / val.size()});
        }
    }
    return model;
}

}  // namespace

double predict_pbs(const Cnn& model, const Dataset& data, std::size_t sample_index) {
    const std::vector<double> x = standardized(model, data.samples[sample_index].features);
    return model.predict(x)[1];
}

Cnn train_classifier(const Dataset& data, const NetworkConfig& net, const TrainConfig& train,
                     std::vector<EpochRecord>* log) {
    const std::vector<std::size_t> pool = data.indices_with(SplitTag::Train);
    if (pool.empty()) throw std::invalid_argument("train_classifier: empty training pool");
    return train_on_pool(data, pool, net, train, log);
}

Cnn train_partial(const Dataset& data, const NetworkConfig& net, const TrainConfig& train,
                  std::vector<EpochRecord>* log) {
    std::vector<std::size_t> pool;
    for (std::size_t s = 0; s < data.samples.size(); ++s)
        if (std::abs(data.samples[s].alpha) < 1e-12) pool.push_back(s);
    if (pool.empty()) throw std::invalid_argument("train_partial: no alpha = 0 samples");
    return train_on_pool(data, pool, net, train, log);
}

Metrics evaluate_on_indices(const Cnn& model, const Dataset& data,
                            const std::vector<std::size_t>& idx) {
    if (idx.empty()) throw std::invalid_argument("evaluate: empty index set");
    Metrics m;
    for (std::size_t s : idx) {
        const double pbs = predict_pbs(model, data, s);
        const int pred = pbs > 0.5 ? 1 : 0;
        const int truth = data.samples[s].label;
        ++m.confusion[truth][pred];
        ++m.total;
        if (pred == truth) m.accuracy += 1.0;
    }
    m.accuracy /= m.total;
    return m;
}

Metrics evaluate_classifier(const Cnn& model, const Dataset& data, SplitTag tag) {
    return evaluate_on_indices(model, data, data.indices_with(tag));
}

std::optional<double> pbs_crossing(const std::vector<std::pair<double, double>>& lambda_pbs) {
    for (std::size_t k = 0; k < lambda_pbs.size(); ++k) {
        if (lambda_pbs[k].second > 0.5) {
            if (k == 0) return lambda_pbs[0].first;
            const auto [l0, p0] = lambda_pbs[k - 1];
            const auto [l1, p1] = lambda_pbs[k];
            return l0 + (l1 - l0) * (0.5 - p0) / (p1 - p0);
        }
    }
    return std::nullopt;
}

void save_model(const Cnn& model, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_model: cannot open " + path);
    f << model.to_json() << "\n";
}

Cnn load_model(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_model: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return Cnn::from_json(text);
}

std::string Cnn::to_json() const {
    nlohmann::json j;
    j["config"] = {{"input_channels", cfg_.input_channels},
                   {"input_length", cfg_.input_length},
                   {"dense", cfg_.dense},
                   {"classes", cfg_.classes},
                   {"dropout", cfg_.dropout}};
    nlohmann::json conv = nlohmann::json::array();
    for (const ConvBlockConfig& b : cfg_.conv)
        conv.push_back({{"channels", b.channels}, {"kernel", b.kernel}, {"pool", b.pool}});
    j["config"]["conv"] = std::move(conv);
    j["feature_mean"] = feature_mean;
    j["feature_std"] = feature_std;
    j["params"] = params_;
    return j.dump();
}

Cnn Cnn::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    NetworkConfig cfg;
    const auto& jc = j.at("config");
    cfg.input_channels = jc.at("input_channels").get<int>();
    cfg.input_length = jc.at("input_length").get<int>();
    cfg.dense = jc.at("dense").get<std::vector<int>>();
    cfg.classes = jc.at("classes").get<int>();
    cfg.dropout = jc.at("dropout").get<double>();
    cfg.conv.clear();
    for (const auto& b : jc.at("conv"))
        cfg.conv.push_back(
            {b.at("channels").get<int>(), b.at("kernel").get<int>(), b.at("pool").get<int>()});
    Cnn model(cfg);
    model.feature_mean = j.at("feature_mean").get<std::vector<double>>();
    model.feature_std = j.at("feature_std").get<std::vector<double>>();
    model.params_ = j.at("params").get<std::vector<double>>();
    if (model.params_.size() != make_layout(cfg).total)
        throw std::runtime_error("Cnn::from_json: parameter count mismatch");
    return model;
}

}  // namespace elm
