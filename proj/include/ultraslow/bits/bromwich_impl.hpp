#pragma once

// Template part of BromwichInverter; included from transform.hpp.

#include <algorithm>
#include <deque>

namespace ultraslow {

namespace detail {
/// Best Wynn-epsilon estimate of the limit of `sums`.
cplx wynn_epsilon(const std::deque<cplx>& sums);
}  // namespace detail

template <class G>
Estimate<cplx> BromwichInverter::integrate_half(G&& g, double direction) const {
    const std::function<cplx(double)> fn = std::forward<G>(g);
    const double period = std::numbers::pi / t_;
    std::deque<cplx> sums;
    cplx running = 0.0;
    cplx previous_acc = 0.0;
    double refine_error = 0.0;
    int settled = 0;
    int quiet = 0;
    for (long k = 0;; ++k) {
        const double start = k * period;
        if (start > tau_max_)
            throw ConvergenceError("Bromwich inversion: oscillatory non-convergence before tau_max",
                                   std::abs(running - previous_acc));
        const auto piece = refined_panel(fn, start, direction, std::abs(running));
        refine_error += piece.error;
        running += piece.value;
        sums.push_back(running);
        if (sums.size() > 40) sums.pop_front();
        const cplx acc = sums.size() >= 3 ? detail::wynn_epsilon(sums) : running;
        if (std::abs(piece.value) <= 1e-3 * rtol_ * std::abs(running)) {
            if (++quiet >= 3) return {running, std::abs(piece.value) + refine_error};
        } else {
            quiet = 0;
        }
        if (k >= 4 && std::abs(acc - previous_acc) <= rtol_ * std::abs(acc)) {
            if (++settled >= 3) return {acc, std::abs(acc - previous_acc) + refine_error};
        } else {
            settled = 0;
        }
        previous_acc = acc;
    }
}

}  // namespace ultraslow
