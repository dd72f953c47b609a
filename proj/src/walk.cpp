#include "lse/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace lse {

namespace {

double lchoose(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n + 1)) - std::lgamma(static_cast<double>(k + 1)) -
           std::lgamma(static_cast<double>(n - k + 1));
}

constexpr double kLn2 = 0.6931471805599453;

template <typename F>
void binomial_sweep(std::int64_t m, double pr, F&& f) {
    if (m < 0) return;
    if (pr <= 0.0) {
        f(std::int64_t{0}, 1.0);
        return;
    }
    if (pr >= 1.0) {
        f(m, 1.0);
        return;
    }
    if (m <= 64) {
        for (std::int64_t k = 0; k <= m; ++k)
            f(k, std::exp(lchoose(m, k) + k * std::log(pr) + (m - k) * std::log1p(-pr)));
        return;
    }
    const auto pmf_at = [&](std::int64_t k) {
        return std::exp(lchoose(m, k) + k * std::log(pr) + (m - k) * std::log1p(-pr));
    };
    const std::int64_t k0 = static_cast<std::int64_t>(m * pr);
    const double peak = pmf_at(k0);
    const double cutoff = peak * 1e-18;
    f(k0, peak);
    double v = peak;
    for (std::int64_t k = k0; k < m; ++k) {
        v *= (static_cast<double>(m - k) / static_cast<double>(k + 1)) * (pr / (1.0 - pr));
        if (v < cutoff) break;
        f(k + 1, v);
    }
    v = peak;
    for (std::int64_t k = k0; k > 0; --k) {
        v *= (static_cast<double>(k) / static_cast<double>(m - k + 1)) * ((1.0 - pr) / pr);
        if (v < cutoff) break;
        f(k - 1, v);
    }
}

// Occupation series of the uniform 2d-direction walk in `dim` dimensions at
// the fixed site given by coords[0..dim). Returns values for m = 0..m_max.
std::vector<double> uniform_series(int dim, const std::int64_t* coords, int m_max) {
    std::vector<double> out(static_cast<std::size_t>(m_max) + 1, 0.0);
    if (dim == 1) {
        for (int m = 0; m <= m_max; ++m) out[m] = srw1d_prob(m, coords[0]);
        return out;
    }
    if (dim == 2) {
        // 45-degree rotation: the 2-d uniform walk is a product of two
        // independent 1-d walks in the coordinates (x1+x2, x1-x2).
        const std::int64_t u = coords[0] + coords[1], v = coords[0] - coords[1];
        for (int m = 0; m <= m_max; ++m) out[m] = srw1d_prob(m, u) * srw1d_prob(m, v);
        return out;
    }
    // Split off the first two coordinates and mix binomially.
    const std::vector<double> left = uniform_series(2, coords, m_max);
    const std::vector<double> right = uniform_series(dim - 2, coords + 2, m_max);
    const double pr = 2.0 / dim;
    for (int m = 0; m <= m_max; ++m) {
        double acc = 0.0;
        binomial_sweep(m, pr, [&](std::int64_t k, double w) {
            const double l = left[static_cast<std::size_t>(k)];
            if (l != 0.0) acc += w * l * right[static_cast<std::size_t>(m - k)];
        });
        out[m] = acc;
    }
    return out;
}

}  // namespace

double srw1d_prob(std::int64_t m, std::int64_t x) {
    if (x < 0) x = -x;
    if (x > m || ((m + x) & 1)) return 0.0;
    if (m == 0) return 1.0;
    return std::exp(lchoose(m, (m + x) / 2) - static_cast<double>(m) * kLn2);
}

template <typename F>
void for_each_binomial(std::int64_t m, double pr, F&& f) {
    binomial_sweep(m, pr, std::forward<F>(f));
}

WalkOccupation::WalkOccupation(int dim, double lazy) : dim_(dim), lazy_(lazy) {
    if (dim < 1) throw std::invalid_argument("WalkOccupation: dim must be positive");
    if (!(lazy >= 0.0 && lazy < 1.0))
        throw std::invalid_argument("WalkOccupation: lazy mass must lie in [0,1)");
}

std::vector<double> WalkOccupation::series(const Site& x, int s_max) const {
    const std::vector<double> uniform = uniform_series(dim_, x.c.data(), s_max);
    if (lazy_ == 0.0) return uniform;
    std::vector<double> out(static_cast<std::size_t>(s_max) + 1, 0.0);
    const double move = 1.0 - lazy_;
    for (int s = 0; s <= s_max; ++s) {
        double acc = 0.0;
        binomial_sweep(s, move, [&](std::int64_t k, double w) {
            const double u = uniform[static_cast<std::size_t>(k)];
            if (u != 0.0) acc += w * u;
        });
        out[s] = acc;
    }
    return out;
}

// Explicit instantiation not needed; for_each_binomial is used header-side only
// through this translation unit's helpers.

}  // namespace lse
