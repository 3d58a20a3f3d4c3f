#include "dml/return_set.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace dml {

namespace {

SparsePoly3 sparse_of_form(const IntBinForm& f) {
    SparsePoly3 s;
    long d = f.degree();
    for (long k = 0; k <= d; ++k)
        if (f[k] != 0) s.add_term({0, k, d - k}, Rat(f[k]));
    return s;
}

SparsePoly3 sparse_one() {
    SparsePoly3 s;
    s.add_term({0, 0, 0}, Rat(1));
    return s;
}

// greedy heuristic structure over a truncated observation window
void fit_progressions(const std::vector<long>& obs, long scan_to, ReturnSetReport& rep) {
    std::set<long> o(obs.begin(), obs.end());
    struct Cand {
        long start, period, count;
    };
    std::vector<Cand> cands;
    for (long a : obs)
        for (long b = 1; a + 2 * b <= scan_to; ++b) {
            if (o.count(a - b)) continue;  // not maximal
            long count = 1, t = a + b;
            while (o.count(t)) {
                ++count;
                t += b;
            }
            if (count >= 3 && t > scan_to) cands.push_back({a, b, count});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.count != y.count) return x.count > y.count;
        if (x.period != y.period) return x.period < y.period;
        return x.start < y.start;
    });
    std::set<long> claimed;
    for (const Cand& c : cands) {
        std::vector<long> hits;
        for (long t = c.start; o.count(t); t += c.period) hits.push_back(t);
        bool fresh = true;
        for (long h : hits) fresh = fresh && !claimed.count(h);
        if (!fresh) continue;
        claimed.insert(hits.begin(), hits.end());
        rep.progressions.push_back({c.start, c.period, false, 0});
    }
    for (long n : obs)
        if (!claimed.count(n)) rep.finite_part.push_back(n);
}

}  // namespace

ReturnSetReport return_set(const AffinePolyMap& f, const ProjRatMap& g, const Rat& x0,
                           const ProjPoint& y0, const PlaneCurve& phi, long nmax,
                           const OrbitCaps& caps, const IterateCaps& icaps) {
    if (nmax < 0) fail(errc::domain, "nmax must be nonnegative");
    OrbitSegment ox = orbit(f, x0, nmax, caps);
    ProjOrbitSegment oy = orbit(g, y0, nmax, caps);

    auto x_at = [&](long n) -> const Rat& {
        if (n < static_cast<long>(ox.values.size())) return ox.values[n];
        const CycleInfo& c = *ox.cycle;
        return ox.values[c.tail + (n - c.tail) % c.period];
    };
    auto y_at = [&](long n) -> const ProjPoint& {
        if (n < static_cast<long>(oy.points.size())) return oy.points[n];
        const CycleInfo& c = *oy.cycle;
        return oy.points[c.tail + (n - c.tail) % c.period];
    };

    long scan_to = nmax;
    if (!ox.cycle) scan_to = std::min(scan_to, static_cast<long>(ox.values.size()) - 1);
    if (!oy.cycle) scan_to = std::min(scan_to, static_cast<long>(oy.points.size()) - 1);

    ReturnSetReport rep;
    rep.nmax = nmax;
    rep.scanned_to = scan_to;
    for (long n = 0; n <= scan_to; ++n)
        if (curve_vanishes(phi, x_at(n), y_at(n))) rep.observed.push_back(n);

    rep.complete = ox.cycle.has_value() && oy.cycle.has_value();
    if (rep.complete) {
        long tail = std::max(ox.cycle->tail, oy.cycle->tail);
        long period = std::lcm(ox.cycle->period, oy.cycle->period);
        std::set<long> covered;
        for (long r = tail; r < tail + period; ++r) {
            if (!curve_vanishes(phi, x_at(r), y_at(r))) continue;
            long start = r;
            while (start - period >= 0 && curve_vanishes(phi, x_at(start - period), y_at(start - period)))
                start -= period;
            rep.progressions.push_back({start, period, false, 0});
            for (long n = start; n <= scan_to; n += period) covered.insert(n);
        }
        for (long n : rep.observed)
            if (!covered.count(n)) rep.finite_part.push_back(n);
    } else {
        fit_progressions(rep.observed, scan_to, rep);
    }

    std::sort(rep.progressions.begin(), rep.progressions.end(),
              [](const Progression& a, const Progression& b) {
                  return a.start != b.start ? a.start < b.start : a.period < b.period;
              });

    std::map<long, bool> cert_cache;
    for (Progression& p : rep.progressions) {
        auto it = cert_cache.find(p.period);
        if (it == cert_cache.end()) {
            bool ok = false;
            try {
                ok = certify_progression(f, g, phi, p.period, icaps);
            } catch (const error& e) {
                if (e.code() != errc::budget) throw;
            }
            it = cert_cache.emplace(p.period, ok).first;
        }
        if (it->second) {
            p.certified = true;
            p.certified_m = p.period;
        }
    }
    return rep;
}

bool certify_progression(const AffinePolyMap& f, const ProjRatMap& g, const PlaneCurve& phi,
                         long m, const IterateCaps& caps) {
    if (m < 1) fail(errc::domain, "progression period must be positive");
    AffinePolyMap fm = iterate_map(f, m, caps);
    ProjRatMap gm = iterate(g, m, caps.coeff_bits);
    long xm = phi.xdeg(), yn = phi.ydeg();

    SparsePoly3 fx;  // f^m(x) as a polynomial in x alone
    for (long k = 0; k <= fm.degree(); ++k)
        if (fm.coeff(static_cast<size_t>(k)) != 0)
            fx.add_term({k, 0, 0}, fm.coeff(static_cast<size_t>(k)));

    std::vector<SparsePoly3> xpow(xm + 1), g1pow(yn + 1), g2pow(yn + 1);
    xpow[0] = g1pow[0] = g2pow[0] = sparse_one();
    SparsePoly3 g1 = sparse_of_form(gm.g1()), g2 = sparse_of_form(gm.g2());
    for (long i = 1; i <= xm; ++i) xpow[i] = xpow[i - 1] * fx;
    for (long j = 1; j <= yn; ++j) {
        g1pow[j] = g1pow[j - 1] * g1;
        g2pow[j] = g2pow[j - 1] * g2;
    }

    SparsePoly3 big, small;
    for (long i = 0; i <= xm; ++i)
        for (long j = 0; j <= yn; ++j) {
            const Rat& c = phi.coeff(i, j);
            if (c == 0) continue;
            SparsePoly3 term = xpow[i] * g1pow[j] * g2pow[yn - j];
            for (const auto& [k, v] : term.terms()) big.add_term(k, c * v);
            small.add_term({i, j, yn - j}, c);
        }
    return SparsePoly3::divides(small, big);
}

Normalization normalize_at_infinity(const PlaneCurve& phi, const ProjRatMap& g,
                                    const ProjPoint& y0) {
    if (curve_infinity_data(phi).a_mn_nonzero)
        return {phi, g, y0, Mobius::identity()};
    for (long h = 1; h <= 8; ++h)
        for (long a = -h; a <= h; ++a)
            for (long b = -h; b <= h; ++b)
                for (long c = -h; c <= h; ++c)
                    for (long d = -h; d <= h; ++d) {
                        if (std::max({labs(a), labs(b), labs(c), labs(d)}) != h) continue;
                        if (a * d - b * c == 0) continue;
                        Mobius mob{Rat(a), Rat(b), Rat(c), Rat(d)};
                        PlaneCurve moved = [&]() -> PlaneCurve {
                            try {
                                return transform_curve(phi, mob);
                            } catch (const error&) {
                                return phi;  // y-degree dropped; reject below
                            }
                        }();
                        if (!curve_infinity_data(moved).a_mn_nonzero) continue;
                        Mobius inv{mob.d(), -mob.b(), -mob.c(), mob.a()};
                        return {moved, conjugate(g, inv), conjugate_point(y0, inv), mob};
                    }
    fail(errc::budget, "no normalizing coordinate change with entries up to 8");
}

}  // namespace dml
