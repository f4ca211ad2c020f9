#pragma once

#include <functional>
#include <vector>

#include "ripple/anorm.hpp"
#include "ripple/energy.hpp"

namespace ripple {

struct MinimizeParams {
    double tau = 0.5;
    int max_iters = 5000;
    double residual_tol = 1e-8;  // on ||L^{-1} P residual||_2
    double energy_tol = 1e-10;   // relative energy change per accepted step
    double backtrack = 0.5;
    int patience = 3;            // Armijo failures before plain descent is accepted
    double armijo = 1e-4;
    double tau_max = 1e4;
    int max_backtracks = 60;

    void validate() const;
};

struct MinimizeResult {
    Field w_star;
    int iters = 0;
    double residual_norm = 0.0;
    std::vector<double> energy_trace;    // E_ren after each accepted step, starting at w = 0
    std::vector<double> residual_trace;  // preconditioned residual norms, same indexing
    bool converged = false;
};

double preconditioned_norm(const Spectrum& residual);

// Called after each accepted step with the current iterate and its energy.
using StepObserver = std::function<void(const Spectrum& w, double energy)>;

MinimizeResult minimize(const RenProblem& prob, const MinimizeParams& params, const StepObserver& obs = {});
MinimizeResult minimize(const Field& v, const Field& F, const MinimizeParams& params);

struct DiffQuotRow {
    int axis = 1;
    double h = 0.0;
    double value = 0.0;  // H(D_i^h w)
};

struct DiffQuotTable {
    std::vector<DiffQuotRow> rows;
    double sup = 0.0;
};

DiffQuotTable diag_diffquot_energy(const Field& w);

NormEstimate holder_of_minimizer(const Field& w_star, double eps);

// The minimizer estimate together with the inputs that enter its bound.
struct RegularityRecord {
    NormEstimate w;
    NormEstimate xi;  // [xi]_{-5/4-eps}
    NormEstimate v;   // [v]_{3/4-eps}
    NormEstimate F;   // [F]_{-3/4-eps}
};

RegularityRecord holder_of_minimizer(const Field& w_star, const Triple& data, double eps);

}  // namespace ripple
