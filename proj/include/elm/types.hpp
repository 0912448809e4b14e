#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace elm {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

/// Control parameters of one model instance.
struct ModelParams {
    int n = 6;          // particle count N
    double lambda = 0;  // in [0, 1]
    double alpha = 0;   // >= 0 (values above 1 are allowed)

    void validate() const {
        if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
        if (lambda < 0.0 || lambda > 1.0)
            throw std::invalid_argument("ModelParams: lambda must lie in [0, 1]");
        if (alpha < 0.0) throw std::invalid_argument("ModelParams: alpha must be >= 0");
    }
};

enum class Representation { Collective, Qubit };

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace elm
