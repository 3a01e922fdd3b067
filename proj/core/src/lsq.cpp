#include "qsa/lsq.hpp"

#include "qsa/core.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <unsupported/Eigen/LevenbergMarquardt>

#include <limits>

namespace qsa {

namespace {

struct Adapter : Eigen::DenseFunctor<double> {
    const LeastSquaresProblem& p;
    explicit Adapter(const LeastSquaresProblem& prob)
        : DenseFunctor<double>(prob.parameters, prob.residuals), p(prob) {}
    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
        f = p.residual(x);
        return f.allFinite() ? 0 : -1;
    }
    int df(const Eigen::VectorXd& x, Eigen::MatrixXd& j) const {
        j = p.jacobian(x);
        return j.allFinite() ? 0 : -1;
    }
};

}  // namespace

double t_quantile_95(int dof) {
    if (dof < 1) return std::numeric_limits<double>::infinity();
    boost::math::students_t dist(dof);
    return boost::math::quantile(boost::math::complement(dist, 0.025));
}

LeastSquaresResult least_squares(const LeastSquaresProblem& problem, Eigen::VectorXd start,
                                 const LeastSquaresOptions& opt) {
    if (problem.parameters < 1 || start.size() != problem.parameters)
        throw DomainError("least squares: parameter count mismatch");
    if (problem.residuals < problem.parameters)
        throw DomainError("least squares: fewer residuals than parameters");

    Adapter f(problem);
    Eigen::LevenbergMarquardt<Adapter> lm(f);
    lm.setFtol(opt.tolerance);
    lm.setXtol(opt.tolerance);
    lm.setGtol(0.0);
    lm.setMaxfev(opt.max_evaluations);
    const auto status = lm.minimize(start);

    LeastSquaresResult r;
    r.params = start;
    r.evaluations = static_cast<int>(lm.nfev());
    using namespace Eigen::LevenbergMarquardtSpace;
    r.converged = status != ImproperInputParameters && status != TooManyFunctionEvaluation &&
                  status != UserAsked && start.allFinite();
    const Eigen::VectorXd res = problem.residual(start);
    r.rss = res.squaredNorm();
    r.dof = problem.residuals - problem.parameters;
    const Eigen::MatrixXd j = problem.jacobian(start);
    const Eigen::MatrixXd jtj = j.transpose() * j;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jtj);
    const double lmax = es.eigenvalues().maxCoeff();
    const double lmin = es.eigenvalues().minCoeff();
    r.condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    r.ill_conditioned = !(r.condition < opt.condition_limit);
    const double s2 = r.dof > 0 ? r.rss / r.dof : 0.0;
    r.covariance = s2 * jtj.completeOrthogonalDecomposition().pseudoInverse();
    return r;
}

}  // namespace qsa
