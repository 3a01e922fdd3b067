#pragma once

#include <Eigen/Dense>
#include <functional>

namespace qsa {

// residual r(p) and Jacobian dr/dp, both evaluated at the same parameters
struct LeastSquaresProblem {
    int parameters = 0;
    int residuals = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residual;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;
};

struct LeastSquaresOptions {
    double tolerance = 1e-14;
    int max_evaluations = 4000;
    double condition_limit = 1e12;  // cond(J^T J) above this flags the covariance
};

struct LeastSquaresResult {
    Eigen::VectorXd params;
    Eigen::MatrixXd covariance;  // s^2 (J^T J)^-1, s^2 = rss / dof
    double rss = 0.0;
    int dof = 0;
    int evaluations = 0;
    double condition = 0.0;
    bool converged = false;
    bool ill_conditioned = false;
};

// Levenberg-Marquardt with linearised covariance at the optimum
LeastSquaresResult least_squares(const LeastSquaresProblem& problem, Eigen::VectorXd start,
                                 const LeastSquaresOptions& opt = {});

// two-sided 95% Student-t quantile
double t_quantile_95(int dof);

}  // namespace qsa
