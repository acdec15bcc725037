#pragma once

// Grid assertions for the rate-kernel properties (M-1)..(M-4) and
// (M-1')..(M-6'), shared by the unit tests and the acceptance suite.
// Returns an empty string on success, else a description of the violation.

#include <cmath>
#include <sstream>
#include <string>

#include "hetnet/analytic.hpp"

namespace kernel_props {

inline std::string check_all(double lambda_i, double lambda_j, double mu, double c) {
    using hetnet::rate_kernel_m;
    using hetnet::rate_kernel_mbar;
    const double a_i = hetnet::kernel_peak(lambda_i, mu, c);
    const double a_j = hetnet::kernel_peak(lambda_j, mu, c);
    constexpr int kGrid = 64;
    std::ostringstream fail;

    const auto m_i = [&](double a) { return rate_kernel_m(a, lambda_i, mu, c); };
    const auto m_j = [&](double a) { return rate_kernel_m(a, lambda_j, mu, c); };
    const auto mb_i = [&](double a) { return rate_kernel_mbar(a, lambda_i, mu, c); };
    const auto mb_j = [&](double a) { return rate_kernel_mbar(a, lambda_j, mu, c); };

    // (M-1) increasing on [0, a], decreasing on [a, 10a]
    for (int g = 0; g < kGrid; ++g) {
        const double x0 = a_j * g / kGrid, x1 = a_j * (g + 1) / kGrid;
        if (!(m_j(x1) > m_j(x0))) {
            fail << "M-1 rising branch at " << x0;
            return fail.str();
        }
        const double y0 = a_j * (1.0 + 9.0 * g / kGrid);
        const double y1 = a_j * (1.0 + 9.0 * (g + 1) / kGrid);
        if (!(m_j(y1) < m_j(y0))) {
            fail << "M-1 falling branch at " << y0;
            return fail.str();
        }
    }

    // (M-2) concavity on [0, a]: second differences <= 0
    for (int g = 1; g < kGrid; ++g) {
        const double h = a_j / kGrid;
        const double x = g * h;
        const double second = m_j(x + h) - 2.0 * m_j(x) + m_j(x - h);
        if (second > 1e-12 * std::abs(m_j(x))) {
            fail << "M-2 convex spot at " << x;
            return fail.str();
        }
    }

    // (M-3) lambda_i < lambda_j implies M_i(A) < M_j(A) for A > 0
    // (M-4) M_j - M_i strictly increasing on [0, a_j]
    for (int g = 0; g < kGrid; ++g) {
        const double x0 = a_j * (g + 1) / kGrid;
        if (!(m_i(x0) < m_j(x0))) {
            fail << "M-3 at " << x0;
            return fail.str();
        }
        const double xa = a_j * g / kGrid, xb = a_j * (g + 1) / kGrid;
        if (!(m_j(xb) - m_i(xb) > m_j(xa) - m_i(xa))) {
            fail << "M-4 at " << xa;
            return fail.str();
        }
    }

    // (M-1') Mbar decreasing and convex
    for (int g = 0; g < kGrid; ++g) {
        const double h = a_j / 8.0;
        const double x0 = a_i / 2.0 + g * h, x1 = x0 + h;
        if (!(mb_j(x1) < mb_j(x0))) {
            fail << "M-1' monotonicity at " << x0;
            return fail.str();
        }
        const double second = mb_j(x1 + h) - 2.0 * mb_j(x1) + mb_j(x0);
        if (second < -1e-12 * mb_j(x1)) {
            fail << "M-1' convexity at " << x0;
            return fail.str();
        }
    }

    // (M-2') Mbar_i(a_i) < Mbar_j(a_j)
    if (!(mb_i(a_i) < mb_j(a_j))) return "M-2'";

    // (M-3') Mbar_j(A) - Mbar_i(A) strictly decreasing
    for (int g = 0; g < kGrid; ++g) {
        const double h = a_j / 4.0;
        const double x0 = a_i / 4.0 + g * h, x1 = x0 + h;
        if (!(mb_j(x1) - mb_i(x1) < mb_j(x0) - mb_i(x0))) {
            fail << "M-3' at " << x0;
            return fail.str();
        }
    }

    // (M-4') drop over [A, A+D] shrinks as A grows past a_k
    // (M-5') tier j's drop at its peak exceeds tier i's at its own
    // (M-6') combination: holds for any A' > a_i
    for (int g = 1; g <= 8; ++g) {
        const double d = g * a_j / 8.0;
        const double shallow = mb_j(a_j + a_j / 3.0) - mb_j(a_j + a_j / 3.0 + d);
        const double steep = mb_j(a_j) - mb_j(a_j + d);
        if (!(steep > shallow)) {
            fail << "M-4' at D=" << d;
            return fail.str();
        }
        if (!(mb_j(a_j) - mb_j(a_j + d) > mb_i(a_i) - mb_i(a_i + d))) {
            fail << "M-5' at D=" << d;
            return fail.str();
        }
        for (int q = 1; q <= 4; ++q) {
            const double a_prime = a_i * (1.0 + 0.7 * q);
            if (!(mb_j(a_j) - mb_j(a_j + d) > mb_i(a_prime) - mb_i(a_prime + d))) {
                fail << "M-6' at D=" << d << " A'=" << a_prime;
                return fail.str();
            }
        }
    }

    return {};
}

}  // namespace kernel_props
