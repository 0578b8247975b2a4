#pragma once

#include <complex>
#include <cstdint>

#include "finsum/arith/periodic.hpp"
#include "finsum/kernels/psi.hpp"

namespace finsum::formulae {

/// Fault-injection switches for self-test sensitivity checks. Each one
/// breaks a distinct algebraic ingredient of the formulas; with all off
/// (the default) every evaluator runs the true identity. Not thread-safe:
/// meant to be toggled between whole evaluations only.
struct MutationHooks {
    bool flip_psi_sign = false;
    bool conjugate_tau = false;
    bool drop_poisson_n0 = false;
};

inline MutationHooks& mutation_hooks() {
    static MutationHooks hooks;
    return hooks;
}

namespace detail {

inline double hooked_psi(int r, double x) {
    const double v = kernels::psi(r, x);
    return mutation_hooks().flip_psi_sign ? -v : v;
}

inline std::complex<double> hook_tau_value(std::complex<double> v) {
    return mutation_hooks().conjugate_tau ? std::conj(v) : v;
}

inline std::complex<double> hooked_tau(const PeriodicSequence& chi, std::int64_t n) {
    return hook_tau_value(chi.tau(n));
}

}  // namespace detail
}  // namespace finsum::formulae

namespace finsum {
using formulae::mutation_hooks;
using formulae::MutationHooks;
}  // namespace finsum
