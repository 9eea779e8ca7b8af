#pragma once

// Independent oracle routes used to freeze and cross-check expected values.
// Everything here deliberately avoids the library's own computation paths:
// brute-force loops, Eigen's full-pivot solver, closed-form swap algebra.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "qsvm/quantum_core.hpp"
#include "qsvm/training_set.hpp"

namespace oracle {

using Complex = std::complex<double>;

/// Brute-force kernel entry: explicit accumulation of the dot product.
inline double kernel_entry(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int degree) {
    double dot = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    double out = 1.0;
    for (int i = 0; i < degree; ++i) out *= dot;
    return out;
}

/// Independent dense solve (full-pivot LU, not the library's elimination).
inline Eigen::VectorXd solve_full_pivot(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    return Eigen::FullPivLU<Eigen::MatrixXd>(a).solve(b);
}

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Closed-form swap evolution: exp(-i S t) = cos(t) I - i sin(t) S, since
/// S is an involution. Used as the second route against the spectral path.
inline Eigen::MatrixXcd swap_exponential(Eigen::Index dim, double t) {
    const Eigen::Index d2 = dim * dim;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d2, d2);
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n < dim; ++n) s(m * dim + n, n * dim + m) = 1.0;
    }
    return std::cos(t) * Eigen::MatrixXcd::Identity(d2, d2) - Complex(0.0, std::sin(t)) * s;
}

/// Trace over the first dim-dimensional factor by explicit index loops.
inline Eigen::MatrixXcd trace_out_first(const Eigen::MatrixXcd& joint, Eigen::Index dim) {
    const Eigen::Index d = joint.rows() / dim;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index e = 0; e < dim; ++e) {
                out(i, j) += joint(e * d + i, e * d + j);
            }
        }
    }
    return out;
}

/// Analytic phase-estimation register profile for one eigenbranch: the
/// geometric sum (1/R) sum_tau exp(i tau (2 pi k / R - lambda t0)).
inline Eigen::VectorXcd register_profile(double lambda, double t0, Eigen::Index reg) {
    Eigen::VectorXcd profile(reg);
    for (Eigen::Index k = 0; k < reg; ++k) {
        Complex acc = 0.0;
        const double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(reg) -
                             lambda * t0;
        for (Eigen::Index tau = 0; tau < reg; ++tau) {
            acc += std::polar(1.0, theta * static_cast<double>(tau));
        }
        profile[k] = acc / static_cast<double>(reg);
    }
    return profile;
}

/// Success probability of filtered inversion by direct amplitude accounting:
/// sum over eigenbranches of |beta_j * c / lambda_j|^2 (exact gridpoints).
inline double amplitude_accounting(const std::vector<double>& betas,
                                   const std::vector<double>& lambdas, double c,
                                   double epsK) {
    double total = 0.0;
    for (std::size_t j = 0; j < betas.size(); ++j) {
        if (std::abs(lambdas[j]) < epsK) continue;
        const double amp = betas[j] * c / lambdas[j];
        total += amp * amp;
    }
    return total;
}

}  // namespace oracle
