#pragma once

#include "twistlab/specfun.hpp"

#include <utility>

namespace twistlab {

struct HypArgs {
    ComplexValue a;
    ComplexValue b;
    ComplexValue c;
    ComplexValue w;
};

/// Truncation policy shared by every series: stop once k >= k_min and the
/// last k_min/2 terms are each below tol * |partial sum|.
struct SeriesBudget {
    double tol = 1e-16;
    int k_min = 8;
    int k_max = 200000;

    void validate() const;
};

/// Defining power series, |w| < 1.
ComplexValue hyp_series(const HypArgs& args, const SeriesBudget& budget = {});

/// Two-series continuation to |w| > 1 for a - b not an integer.
ComplexValue hyp_continuation(const HypArgs& args, const SeriesBudget& budget = {});

/// The b = a log-series for real w < -1.
ComplexValue hyp_degenerate(const ComplexValue& a, const ComplexValue& c, double w,
                            const SeriesBudget& budget = {});

/// Pfaff transform evaluated by hyp_series; independent check for real w < 0.
ComplexValue hyp_oracle(const HypArgs& args, const SeriesBudget& budget = {});

/// The pair (A_k(delta), B_k(delta)) whose Γ(±delta)-weighted sums give
/// hyp_continuation(a, a+delta, c, w).
std::pair<ComplexValue, ComplexValue> ab_terms(const ComplexValue& a, const ComplexValue& c, double w,
                                               const ComplexValue& delta, int k);

/// Richardson extrapolation of hyp_continuation(a, a+delta, c, w) to delta = 0
/// over delta0, delta0/2, delta0/4.
ComplexValue hyp_delta_limit(const ComplexValue& a, const ComplexValue& c, double w, double delta0 = 1e-3,
                             const SeriesBudget& budget = {});

}  // namespace twistlab
