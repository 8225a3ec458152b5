#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qpdec/errors.hpp"

// Globally adaptive Gauss7/Kronrod15 quadrature for vector-valued integrands.
// The worst panel (largest normalized error) is bisected until the summed
// error estimate meets max(abs_tol, rel_tol * |I|) per component.  Panel
// processing and summation follow a fixed deterministic order, so results are
// bit-reproducible across runs and thread counts.

namespace qpdec {

namespace detail {

// Kronrod-15 abscissae (positive half) and weights; Gauss-7 weights embedded.
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};

inline constexpr std::array<double, 8> k15_weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};

// Gauss-7 weights for nodes 1, 3, 5, 7 of the list above.
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

// compensated (Neumaier) accumulator
struct neumaier {
    double sum{0.0};
    double comp{0.0};
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

}  // namespace detail

template <std::size_t N>
struct quad_result {
    std::array<double, N> value{};
    std::array<double, N> abs_error{};
    int evaluations{0};
    bool converged{false};
};

// One G7/K15 evaluation on [a, b].  f maps double -> std::array<double, N>.
template <std::size_t N, class F>
void gk_panel(F&& f, double a, double b, std::array<double, N>& k15,
              std::array<double, N>& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, N> g7{};
    k15.fill(0.0);
    g7.fill(0.0);
    for (std::size_t i = 0; i < detail::gk_nodes.size(); ++i) {
        const double x = detail::gk_nodes[i];
        std::array<double, N> fsum = f(c + h * x);
        if (x != 0.0) {
            const std::array<double, N> flo = f(c - h * x);
            for (std::size_t k = 0; k < N; ++k) fsum[k] += flo[k];
        }
        for (std::size_t k = 0; k < N; ++k)
            k15[k] += detail::k15_weights[i] * fsum[k];
        if (i % 2 == 1 || x == 0.0) {
            const double wg = detail::g7_weights[i / 2];
            for (std::size_t k = 0; k < N; ++k) g7[k] += wg * fsum[k];
        }
    }
    for (std::size_t k = 0; k < N; ++k) {
        k15[k] *= h;
        g7[k] *= h;
        err[k] = std::abs(k15[k] - g7[k]);
    }
}

template <std::size_t N, class F>
quad_result<N> gk_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                           double abs_tol = 1e-14, int max_panels = 2000) {
    quad_result<N> out;
    if (!(b > a)) {
        out.converged = (b == a);
        return out;
    }

    struct panel {
        double lo, hi;
        std::array<double, N> val;
        std::array<double, N> err;
    };
    std::vector<panel> panels;
    panels.reserve(64);

    panel p0{a, b, {}, {}};
    gk_panel<N>(f, a, b, p0.val, p0.err);
    out.evaluations = 15;
    panels.push_back(p0);

    std::array<double, N> total{};
    std::array<double, N> toterr{};
    while (true) {
        for (std::size_t k = 0; k < N; ++k) {
            detail::neumaier sv, se;
            for (const panel& p : panels) {
                sv.add(p.val[k]);
                se.add(p.err[k]);
            }
            total[k] = sv.get();
            toterr[k] = se.get();
        }
        bool ok = true;
        for (std::size_t k = 0; k < N; ++k) {
            const double tol = std::max(abs_tol, rel_tol * std::abs(total[k]));
            if (toterr[k] > tol) ok = false;
        }
        if (ok) {
            out.value = total;
            out.abs_error = toterr;
            out.converged = true;
            return out;
        }
        if (static_cast<int>(panels.size()) >= max_panels) break;

        // pick the panel with the largest normalized error (ties: leftmost)
        std::size_t worst = 0;
        double worst_score = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            double score = 0.0;
            for (std::size_t k = 0; k < N; ++k) {
                const double scale =
                    std::max(std::abs(total[k]), abs_tol / std::max(rel_tol, 1e-300));
                score = std::max(score, panels[i].err[k] /
                                            std::max(scale, 1e-300));
            }
            if (score > worst_score) {
                worst_score = score;
                worst = i;
            }
        }

        const double lo = panels[worst].lo;
        const double hi = panels[worst].hi;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval exhausted by roundoff

        panel left{lo, mid, {}, {}};
        panel right{mid, hi, {}, {}};
        gk_panel<N>(f, lo, mid, left.val, left.err);
        gk_panel<N>(f, mid, hi, right.val, right.err);
        out.evaluations += 30;
        panels[worst] = left;
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                      right);
    }

    out.value = total;
    out.abs_error = toterr;
    out.converged = false;
    return out;
}

// scalar convenience wrapper
template <class F>
quad_result<1> gk_adaptive_scalar(F&& f, double a, double b,
                                  double rel_tol = 1e-10,
                                  double abs_tol = 1e-14,
                                  int max_panels = 2000) {
    auto wrap = [&f](double x) { return std::array<double, 1>{f(x)}; };
    return gk_adaptive<1>(wrap, a, b, rel_tol, abs_tol, max_panels);
}

}  // namespace qpdec
