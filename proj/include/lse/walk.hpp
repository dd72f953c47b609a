#pragma once

#include <cstdint>
#include <vector>

#include "lse/lattice.hpp"

namespace lse {

// Occupation probabilities of the lazy nearest-neighbour walk with lazy mass
// l0 at the origin and (1-l0)/(2d) on each of the 2d unit steps. Values are
// computed per-coordinate (binomial splits plus the diagonal rotation of the
// 2-d uniform walk), so no lattice arrays are involved and s can reach 10^4+.
class WalkOccupation {
  public:
    WalkOccupation(int dim, double lazy);

    // P(S_s = x) for s = 0..s_max.
    std::vector<double> series(const Site& x, int s_max) const;

    double lazy() const { return lazy_; }
    int dim() const { return dim_; }

  private:
    int dim_;
    double lazy_;
};

// P(SRW_m = x) for the 1-d simple walk.
double srw1d_prob(std::int64_t m, std::int64_t x);

// Calls f(k, pmf) for the Binomial(m, pr) weights, truncated below 1e-18 of
// the peak. Exact full sum for small m.
template <typename F>
void for_each_binomial(std::int64_t m, double pr, F&& f);

}  // namespace lse
