#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elm/kernels.hpp"

namespace elm {

struct ConvBlockConfig {
    int channels = 32;
    int kernel = 3;
    int pool = 2;
};

// 1-D CNN: conv-relu-maxpool blocks, dense relu stack with dropout, softmax.
struct NetworkConfig {
    int input_channels = 1;
    int input_length = 101;
    std::vector<ConvBlockConfig> conv = {{32, 3, 2}, {32, 3, 2}, {32, 3, 2}};
    std::vector<int> dense = {512, 512, 512, 512};
    int classes = 2;
    double dropout = 0.15;

    void validate() const;
};

struct TrainConfig {
    int epochs = 60;
    int batch = 32;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    double validation_fraction = 0.2;  // redrawn every epoch from the non-test pool
    std::uint64_t seed = 1;
    Execution exec = Execution::Parallel;
};

struct EpochRecord {
    int epoch;
    double train_loss;
    double validation_accuracy;
};

class Cnn {
  public:
    explicit Cnn(NetworkConfig cfg);

    const NetworkConfig& config() const { return cfg_; }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }
    std::size_t param_count() const { return params_.size(); }

    /// Seeded uniform fan-in initialization.
    void init_params(std::uint64_t seed);

    /// Class probabilities for one standardized sample (channels x length,
    /// channel-major).
    std::vector<double> predict(const std::vector<double>& x) const;

    /// Cross-entropy loss of one sample; accumulates d loss / d params into
    /// grad (same flat layout as params). Dropout mask comes from `drop_rng`
    /// when non-null (training mode).
    double loss_and_gradient(const std::vector<double>& x, int label, std::vector<double>& grad,
                             class RngStream* drop_rng = nullptr) const;

    // Normalization statistics are stored with the model and applied by the
    // dataset-facing helpers below.
    std::vector<double> feature_mean;
    std::vector<double> feature_std;

    std::string to_json() const;
    static Cnn from_json(const std::string& text);

  private:
    NetworkConfig cfg_;
    std::vector<double> params_;

    friend class CnnWorkspace;
};

struct Metrics {
    double accuracy = 0.0;
    // confusion[truth][prediction]
    long confusion[2][2] = {{0, 0}, {0, 0}};
    long total = 0;
};

struct Dataset;  // dataset.hpp

/// P_BS of one dataset sample (standardizes with the model's frozen stats).
double predict_pbs(const Cnn& model, const Dataset& data, std::size_t sample_index);

/// Trains on the dataset's Train pool: per-epoch validation is re-drawn from
/// the pool, features are standardized over the full pool and the statistics
/// are frozen into the model.
Cnn train_classifier(const Dataset& data, const NetworkConfig& net, const TrainConfig& train,
                     std::vector<EpochRecord>* log = nullptr);

/// Same machinery restricted to the alpha = 0 column as the training pool.
Cnn train_partial(const Dataset& data, const NetworkConfig& net, const TrainConfig& train,
                  std::vector<EpochRecord>* log = nullptr);

enum class SplitTag : int;  // dataset.hpp

Metrics evaluate_classifier(const Cnn& model, const Dataset& data, SplitTag tag);
Metrics evaluate_on_indices(const Cnn& model, const Dataset& data,
                            const std::vector<std::size_t>& idx);

/// First 0.5-crossing of P_BS along a lambda-sorted path, linearly
/// interpolated between the bracketing samples.
std::optional<double> pbs_crossing(const std::vector<std::pair<double, double>>& lambda_pbs);

void save_model(const Cnn& model, const std::string& path);
Cnn load_model(const std::string& path);

}  // namespace elm
