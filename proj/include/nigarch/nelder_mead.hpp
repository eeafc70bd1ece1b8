#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>

namespace nigarch {

template <std::size_t D>
using Point = std::array<double, D>;

struct NelderMeadOptions {
    double reflect = 1.0;
    double expand = 2.0;
    double contract = 0.5;
    double shrink = 0.5;
    double initial_step = 0.1;
    /// Stop once max f - min f over the simplex drops below this.
    double f_spread_tol = 1e-8;
    std::size_t max_iterations = 2000;
};

template <std::size_t D>
struct NelderMeadResult {
    Point<D> x{};
    double f = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Minimizes f from an axis-aligned simplex around x0.
template <std::size_t D>
NelderMeadResult<D> nelder_mead(const std::function<double(const Point<D>&)>& f, const Point<D>& x0,
                                const NelderMeadOptions& opt = {}) {
    std::array<Point<D>, D + 1> simplex;
    std::array<double, D + 1> values;
    simplex[0] = x0;
    for (std::size_t i = 0; i < D; ++i) {
        simplex[i + 1] = x0;
        simplex[i + 1][i] += opt.initial_step;
    }
    for (std::size_t i = 0; i <= D; ++i) values[i] = f(simplex[i]);

    auto combine = [](const Point<D>& base, const Point<D>& toward, double coef) {
        Point<D> out;
        for (std::size_t i = 0; i < D; ++i) out[i] = base[i] + coef * (toward[i] - base[i]);
        return out;
    };

    NelderMeadResult<D> result;
    std::array<std::size_t, D + 1> order;
    for (; result.iterations < opt.max_iterations; ++result.iterations) {
        for (std::size_t i = 0; i <= D; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[D];
        const std::size_t second = order[D - 1];
        if (values[worst] - values[best] < opt.f_spread_tol) {
            result.converged = true;
            break;
        }

        Point<D> centroid{};
        for (std::size_t i = 0; i <= D; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < D; ++d) centroid[d] += simplex[i][d] / static_cast<double>(D);
        }

        const Point<D> reflected = combine(centroid, simplex[worst], -opt.reflect);
        const double f_r = f(reflected);
        if (f_r < values[best]) {
            const Point<D> expanded = combine(centroid, simplex[worst], -opt.expand);
            const double f_e = f(expanded);
            if (f_e < f_r) {
                simplex[worst] = expanded;
                values[worst] = f_e;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_r;
            }
            continue;
        }
        if (f_r < values[second]) {
            simplex[worst] = reflected;
            values[worst] = f_r;
            continue;
        }
        // Contraction: outside if the reflection improved on the worst point.
        const bool outside = f_r < values[worst];
        const Point<D> contracted =
            outside ? combine(centroid, reflected, opt.contract) : combine(centroid, simplex[worst], opt.contract);
        const double f_c = f(contracted);
        if (f_c < (outside ? f_r : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_c;
            continue;
        }
        for (std::size_t i = 0; i <= D; ++i) {
            if (i == best) continue;
            simplex[i] = combine(simplex[best], simplex[i], opt.shrink);
            values[i] = f(simplex[i]);
        }
    }
    const auto it = std::min_element(values.begin(), values.end());
    result.x = simplex[static_cast<std::size_t>(it - values.begin())];
    result.f = *it;
    return result;
}

}  // namespace nigarch
