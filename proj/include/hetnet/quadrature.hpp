#pragma once

// Adaptive Gauss-Kronrod (G7/K15) quadrature with interval bisection.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hetnet {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

// 15-point Kronrod nodes/weights on [-1,1] and the embedded 7-point Gauss weights.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
inline void gauss_kronrod_15(const F& f, double a, double b, double& kronrod,
                             double& err) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    const double fc = f(mid);
    double resk = kKronrodWeights[7] * fc;
    double resg = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        resk += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) resg += kGaussWeights[i / 2] * fsum;
    }
    kronrod = resk * half;
    err = std::abs((resk - resg) * half);
}

}  // namespace detail

/// Integrates f over the finite interval [a, b] by adaptively bisecting
/// whichever subinterval carries the largest Gauss-Kronrod error estimate,
/// until the summed estimate drops below abs_tol or max_evals is reached.
template <typename F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    double abs_tol = 1e-10,
                                    long max_evals = 1000000) {
    if (!(a < b)) throw std::invalid_argument("integrate_adaptive: requires a < b");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate_adaptive: abs_tol must be positive");

    struct Segment {
        double a, b, value, error;
    };

    // Start from several uniform panels: a single panel can step right over a
    // narrow feature and report a spuriously small error estimate.
    constexpr int kInitialSegments = 8;
    QuadratureResult out;
    std::vector<Segment> segs;
    segs.reserve(kInitialSegments);
    double total_err = 0.0;
    for (int i = 0; i < kInitialSegments; ++i) {
        Segment s{a + (b - a) * i / kInitialSegments,
                  a + (b - a) * (i + 1) / kInitialSegments, 0.0, 0.0};
        detail::gauss_kronrod_15(f, s.a, s.b, s.value, s.error);
        out.evaluations += 15;
        total_err += s.error;
        segs.push_back(s);
    }

    while (total_err > abs_tol && out.evaluations + 30 <= max_evals) {
        // split the worst segment
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;

        Segment s = segs[worst];
        const double m = 0.5 * (s.a + s.b);
        if (m <= s.a || m >= s.b) break;  // interval exhausted at double precision

        Segment left{s.a, m, 0.0, 0.0}, right{m, s.b, 0.0, 0.0};
        detail::gauss_kronrod_15(f, left.a, left.b, left.value, left.error);
        detail::gauss_kronrod_15(f, right.a, right.b, right.value, right.error);
        out.evaluations += 30;

        total_err += left.error + right.error - s.error;
        segs[worst] = left;
        segs.push_back(right);
    }

    double sum = 0.0;
    for (const Segment& s : segs) sum += s.value;
    out.value = sum;
    out.error_estimate = total_err;
    return out;
}

}  // namespace hetnet
