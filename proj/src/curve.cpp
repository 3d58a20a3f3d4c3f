#include "dml/curve.hpp"

namespace dml {

PlaneCurve::PlaneCurve(std::vector<std::vector<Rat>> grid) : a_(std::move(grid)) {
    if (a_.empty() || a_[0].empty()) fail(errc::domain, "curve grid is empty");
    size_t cols = a_[0].size();
    for (const auto& row : a_)
        if (row.size() != cols) fail(errc::domain, "curve grid is ragged");
    bool last_row = false, last_col = false;
    for (const Rat& c : a_.back()) last_row = last_row || c != 0;
    for (const auto& row : a_) last_col = last_col || row.back() != 0;
    if (!last_row) fail(errc::domain, "declared x-degree is not exact");
    if (!last_col) fail(errc::domain, "declared y-degree is not exact");
}

Rat curve_eval(const PlaneCurve& phi, const Rat& x, const ProjPoint& y) {
    long n = phi.ydeg();
    std::vector<Int> up(n + 1), wp(n + 1);
    up[0] = 1;
    wp[0] = 1;
    for (long j = 1; j <= n; ++j) {
        up[j] = up[j - 1] * y.u();
        wp[j] = wp[j - 1] * y.w();
    }
    Rat total(0), xp(1);
    for (long i = 0; i <= phi.xdeg(); ++i) {
        for (long j = 0; j <= n; ++j) {
            const Rat& c = phi.coeff(i, j);
            if (c != 0) total += c * Rat(up[j] * wp[n - j]) * xp;
        }
        if (i < phi.xdeg()) xp *= x;
    }
    return total;
}

bool curve_vanishes(const PlaneCurve& phi, const Rat& x, const ProjPoint& y) {
    return curve_eval(phi, x, y) == 0;
}

InfinityData curve_infinity_data(const PlaneCurve& phi, const FactorBudget& budget) {
    InfinityData d;
    d.m = phi.xdeg();
    d.phi_inf = RatPoly(phi.grid().back());
    d.a_mn_nonzero = phi.coeff(d.m, phi.ydeg()) != 0;
    if (d.phi_inf.degree() >= 1) d.rational_roots = rational_roots(d.phi_inf, budget);
    return d;
}

PlaneCurve transform_curve(const PlaneCurve& phi, const Mobius& mob) {
    long m = phi.xdeg(), n = phi.ydeg();
    Int scale(1);
    for (const auto& row : phi.grid())
        for (const Rat& c : row) scale = lcm(scale, c.get_den());

    auto rep = mob.integer_rep();  // [a b; c d] after content removal
    IntBinForm au({rep[1], rep[0]});
    IntBinForm aw({rep[3], rep[2]});

    std::vector<std::vector<Int>> out(m + 1, std::vector<Int>(n + 1));
    for (long i = 0; i <= m; ++i) {
        std::vector<Int> row(n + 1);
        for (long j = 0; j <= n; ++j) {
            Rat t = phi.coeff(i, j) * scale;
            row[j] = t.get_num();
        }
        IntBinForm sub = IntBinForm::substitute(IntBinForm(std::move(row)), au, aw);
        for (long j = 0; j <= n; ++j) out[i][j] = sub[j];
    }

    Int content(0);
    for (const auto& row : out)
        for (const Int& c : row) content = gcd(content, c);
    int sign = 0;
    for (long i = m; i >= 0 && sign == 0; --i)
        for (long j = n; j >= 0 && sign == 0; --j)
            if (out[i][j] != 0) sign = out[i][j] > 0 ? 1 : -1;
    std::vector<std::vector<Rat>> grid(m + 1, std::vector<Rat>(n + 1));
    for (long i = 0; i <= m; ++i)
        for (long j = 0; j <= n; ++j) grid[i][j] = Rat(sign * out[i][j] / content);

    try {
        return PlaneCurve(std::move(grid));
    } catch (const error&) {
        fail(errc::domain, "transform drops the curve's y-degree (curve passes through the "
                           "image of infinity)");
    }
}

}  // namespace dml
