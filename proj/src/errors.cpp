#include "robincap/errors.hpp"

namespace robincap {

const char* toString(SolverFailure kind) {
    switch (kind) {
        case SolverFailure::StepUnderflow: return "step underflow";
        case SolverFailure::Overflow: return "overflow";
        case SolverFailure::BracketExpansion: return "bracket expansion failed";
        case SolverFailure::DirichletCrossing: return "Dirichlet crossing";
        case SolverFailure::SeriesNonConvergence: return "series did not converge";
        case SolverFailure::QuadratureNonConvergence: return "quadrature did not converge";
        case SolverFailure::ZeroOfProfile: return "query at a zero of the profile";
        case SolverFailure::SignViolation: return "profile sign violation";
    }
    return "solver failure";
}

}  // namespace robincap
