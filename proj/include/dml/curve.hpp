#pragma once

#include "dml/polynomials.hpp"
#include "dml/projective.hpp"

namespace dml {

// Plane curve phi(x, y) = sum a_(i,j) x^i y^j held as the coefficient grid
// a[i][j], 0 <= i <= m, 0 <= j <= n, with both declared degrees exact.
// Against projective y it acts through the bihomogenization
// Phi(x, U, W) = sum a_(i,j) x^i U^j W^(n-j).
class PlaneCurve {
public:
    explicit PlaneCurve(std::vector<std::vector<Rat>> grid);

    long xdeg() const { return static_cast<long>(a_.size()) - 1; }
    long ydeg() const { return static_cast<long>(a_[0].size()) - 1; }
    const Rat& coeff(long i, long j) const { return a_[i][j]; }
    const std::vector<std::vector<Rat>>& grid() const { return a_; }

    friend bool operator==(const PlaneCurve&, const PlaneCurve&) = default;

private:
    std::vector<std::vector<Rat>> a_;
};

Rat curve_eval(const PlaneCurve& phi, const Rat& x, const ProjPoint& y);
bool curve_vanishes(const PlaneCurve& phi, const Rat& x, const ProjPoint& y);

// The top x-slice phi_inf = sum_j a_(m,j) y^j: its vanishing locates the
// curve's points over x = infinity.
struct InfinityData {
    long m = 0;
    RatPoly phi_inf;
    bool a_mn_nonzero = false;
    std::vector<std::pair<Rat, unsigned>> rational_roots;  // (b_s, l_s)
};

InfinityData curve_infinity_data(const PlaneCurve& phi, const FactorBudget& budget = {});

// phi'(x, y) = phi(x, mob(y)) up to a nonzero constant; the grid is
// re-normalized to primitive integer form. Throws errc::domain when the
// transformed curve's y-degree drops below the declared n.
PlaneCurve transform_curve(const PlaneCurve& phi, const Mobius& mob);

}  // namespace dml
