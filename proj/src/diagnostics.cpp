#include "dml/diagnostics.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "dml/real.hpp"

namespace dml {

namespace {

constexpr unsigned long kExactBitWork = 1ul << 24;

int log_sign(const Rat& x) { return x > 1 ? 1 : (x < 1 ? -1 : 0); }
int rat_sign(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// directed [lo, hi] enclosure of s * log(a) with a > 1, s > 0
void scaled_log_interval(const Rat& a, const Rat& s, mpfr_prec_t prec, mpfr_t lo, mpfr_t hi) {
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_set_q(t, a.get_mpq_t(), MPFR_RNDD);
    mpfr_log(lo, t, MPFR_RNDD);
    mpfr_mul_q(lo, lo, s.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(t, a.get_mpq_t(), MPFR_RNDU);
    mpfr_log(hi, t, MPFR_RNDU);
    mpfr_mul_q(hi, hi, s.get_mpq_t(), MPFR_RNDU);
    mpfr_clear(t);
}

}  // namespace

Cmp3 compare_scaled_logs(const Rat& a, const Rat& sa, const Rat& b, const Rat& sb) {
    if (a <= 0 || b <= 0) fail(errc::domain, "compare_scaled_logs needs positive arguments");
    int ta = log_sign(a) * rat_sign(sa);
    int tb = log_sign(b) * rat_sign(sb);
    if (ta != tb) return ta < tb ? Cmp3::Less : Cmp3::Greater;
    if (ta == 0) return Cmp3::Equal;

    // both terms strictly share sign ta; compare magnitudes |sa| log A, |sb| log B
    Rat A = a > 1 ? a : Rat(1) / a;
    Rat B = b > 1 ? b : Rat(1) / b;
    Rat pa = sa > 0 ? sa : Rat(-sa);
    Rat pb = sb > 0 ? sb : Rat(-sb);
    if (A == B && pa == pb) return Cmp3::Equal;

    Int e1 = num(pa) * den(pb);
    Int e2 = num(pb) * den(pa);
    if (mpz_fits_ulong_p(e1.get_mpz_t()) && mpz_fits_ulong_p(e2.get_mpz_t())) {
        unsigned long u1 = e1.get_ui(), u2 = e2.get_ui();
        if (u1 <= kExactBitWork / bit_size(A) && u2 <= kExactBitWork / bit_size(B)) {
            int c = cmp(pow_rat(A, u1), pow_rat(B, u2));
            if (c == 0) return Cmp3::Equal;
            return (c > 0) == (ta > 0) ? Cmp3::Greater : Cmp3::Less;
        }
    }

    for (mpfr_prec_t prec = 96; prec <= (1 << 14); prec *= 4) {
        mpfr_t lo1, hi1, lo2, hi2;
        mpfr_inits2(prec, lo1, hi1, lo2, hi2, (mpfr_ptr) nullptr);
        scaled_log_interval(A, pa, prec, lo1, hi1);
        scaled_log_interval(B, pb, prec, lo2, hi2);
        int above = mpfr_greater_p(lo1, hi2);
        int below = mpfr_less_p(hi1, lo2);
        mpfr_clears(lo1, hi1, lo2, hi2, (mpfr_ptr) nullptr);
        if (above) return ta > 0 ? Cmp3::Greater : Cmp3::Less;
        if (below) return ta > 0 ? Cmp3::Less : Cmp3::Greater;
    }
    return Cmp3::Undecided;
}

namespace {

mpfr_prec_t working_bits(long decimal_digits) {
    return std::max<mpfr_prec_t>(64, static_cast<mpfr_prec_t>(decimal_digits * 10 / 3 + 16));
}

// replayable view of an orbit: values for n <= limit, cycling past the stored
// prefix once a cycle is known
template <typename View>
long replay_limit(const View& v, long nmax) {
    if (v.seg.cycle || !v.seg.truncated) return nmax;
    return static_cast<long>(v.size()) - 1;
}

struct ProjView {
    const ProjOrbitSegment& seg;
    size_t size() const { return seg.points.size(); }
    const ProjPoint& at(long n) const {
        if (n < static_cast<long>(seg.points.size())) return seg.points[n];
        long t = seg.cycle->tail, p = seg.cycle->period;
        return seg.points[t + (n - t) % p];
    }
};

struct AffView {
    const OrbitSegment& seg;
    size_t size() const { return seg.values.size(); }
    const Rat& at(long n) const {
        if (n < static_cast<long>(seg.values.size())) return seg.values[n];
        long t = seg.cycle->tail, p = seg.cycle->period;
        return seg.values[t + (n - t) % p];
    }
};

}  // namespace

SilvermanTrace silverman_trace(const ProjRatMap& g, const ProjPoint& y0, const ProjPoint& p,
                               const Place& v, long nmax, long precision,
                               const OrbitCaps& caps) {
    if (p.is_infinity()) fail(errc::domain, "silverman_trace needs p in the affine chart");
    if (nmax < 0) fail(errc::domain, "silverman_trace needs nmax >= 0");

    SilvermanTrace trace{g, y0, p, v, precision, {}, {}};
    if (g.degree() >= 2) {
        auto exc = exceptional_set(g);
        if (std::find(exc.rational.begin(), exc.rational.end(), p) != exc.rational.end())
            trace.warnings.push_back("p lies in the exceptional set of g; the decay hypothesis fails");
    }

    ProjOrbitSegment oy = orbit(g, y0, nmax, caps);
    ProjView ys{oy};
    long limit = replay_limit(ys, nmax);
    if (limit < nmax)
        trace.warnings.push_back("orbit truncated by the coordinate size cap at n = " +
                                 std::to_string(limit));

    Rat paff = p.affine();
    mpfr_prec_t bits = working_bits(precision);
    for (long n = 0; n <= limit; ++n) {
        const ProjPoint& yn = ys.at(n);
        SilvermanTerm term;
        term.n = n;
        term.at_infinity = yn.is_infinity();
        if (term.at_infinity) {
            term.capped = 1;
        } else {
            Rat dist = abs_v(yn.affine() - paff, v);
            term.capped = std::min(dist, Rat(1));
        }
        if (term.capped == 0) {
            term.value = std::numeric_limits<double>::infinity();
            term.value_str = "inf";
        } else {
            Real s = Real::log_of_rational(Rat(1) / term.capped, bits);
            s.div_int(pow_int(Int(g.degree()), static_cast<unsigned long>(n)));
            term.value = s.to_double();
            term.value_str = s.decimal(static_cast<int>(precision));
        }
        trace.terms.push_back(std::move(term));
    }
    return trace;
}

BoundaryRow boundary_row(const PlaneCurve& phi, const InfinityData& info, long n, const Rat& x,
                         const ProjPoint& y, const Place& v) {
    BoundaryRow row;
    row.n = n;
    row.x_abs = abs_v(x, v);
    row.y_infinite = y.is_infinity();
    if (row.y_infinite) {
        row.phi_inf_abs = abs_v(phi.coeff(phi.xdeg(), phi.ydeg()), v);
        row.root_dists.assign(info.rational_roots.size(), Rat(1));
    } else {
        Rat yaff = y.affine();
        row.phi_inf_abs = abs_v(info.phi_inf.eval(yaff), v);
        for (const auto& [root, mult] : info.rational_roots)
            row.root_dists.push_back(abs_v(yaff - root, v));
    }
    return row;
}

BoundaryTrace boundary_trace(const AffinePolyMap& f, const ProjRatMap& g, const Rat& x0,
                             const ProjPoint& y0, const PlaneCurve& phi, const Place& v,
                             long nmax, const OrbitCaps& caps) {
    if (nmax < 0) fail(errc::domain, "boundary_trace needs nmax >= 0");

    InfinityData info = curve_infinity_data(phi);
    bool normalized = !info.a_mn_nonzero;
    Normalization norm = normalized ? normalize_at_infinity(phi, g, y0)
                                    : Normalization{phi, g, y0, Mobius::identity()};
    if (normalized) info = curve_infinity_data(norm.curve);

    OrbitSegment ox = orbit(f, x0, nmax, caps);
    ProjOrbitSegment oy = orbit(norm.g, norm.y0, nmax, caps);
    AffView xs{ox};
    ProjView ys{oy};
    long limit = std::min(replay_limit(xs, nmax), replay_limit(ys, nmax));

    BoundaryTrace trace{v, normalized, norm.mobius, norm.g, norm.y0, info, {}, limit};
    for (long n = 0; n <= limit; ++n)
        if (curve_vanishes(norm.curve, xs.at(n), ys.at(n)))
            trace.rows.push_back(boundary_row(norm.curve, info, n, xs.at(n), ys.at(n), v));
    return trace;
}

namespace {

Hypothesis degree_hypothesis(const AffinePolyMap& f, const ProjRatMap& g) {
    long df = f.degree(), dg = g.degree();
    Hypothesis h{"equal degrees >= 2", df == dg && df >= 2,
                 "deg f = " + std::to_string(df) + ", deg g = " + std::to_string(dg)};
    if (!h.holds) h.detail += "; the contradiction needs equal degrees >= 2, report is heuristic";
    return h;
}

Hypothesis wandering_hypothesis(const std::string& name, const PreperiodicityVerdict& verdict) {
    Hypothesis h{name, verdict.kind == PreperiodicityVerdict::Kind::NonPreperiodic, ""};
    switch (verdict.kind) {
        case PreperiodicityVerdict::Kind::NonPreperiodic:
            h.detail = "escape witness at n = " + std::to_string(verdict.witness_index) + ": " +
                       to_string(verdict.witness_arg) + "^(d-1) > " +
                       to_string(verdict.threshold_arg);
            break;
        case PreperiodicityVerdict::Kind::Preperiodic:
            h.detail = "preperiodic with tail " + std::to_string(verdict.tail) + " and period " +
                       std::to_string(verdict.period);
            break;
        case PreperiodicityVerdict::Kind::Unknown:
            h.detail = "undecided within budget " + std::to_string(verdict.budget_spent);
            break;
    }
    return h;
}

Hypothesis conjugacy_hypothesis(const ProjRatMap& g) {
    if (g.degree() < 2)
        return {"no polynomial iterate", false, "conjugacy test needs degree >= 2"};
    switch (polynomial_conjugacy(g).kind) {
        case ConjugacyKind::NoIterate:
            return {"no polynomial iterate", true,
                    "no iterate of g is Mobius conjugate to a polynomial"};
        case ConjugacyKind::GItself:
            return {"no polynomial iterate", false,
                    "g is Mobius conjugate to a polynomial; the split polynomial case applies"};
        case ConjugacyKind::SquareOnly:
        default:
            return {"no polynomial iterate", false,
                    "g^2 is Mobius conjugate to a polynomial; replace (f, g) by (f^2, g^2) "
                    "and apply the split polynomial case"};
    }
}

}  // namespace

ContradictionReport contradiction_report(const AffinePolyMap& f, const ProjRatMap& g,
                                         const Rat& x0, const ProjPoint& y0,
                                         const PlaneCurve& phi, long nmax, long precision,
                                         const OrbitCaps& caps) {
    if (nmax < 0) fail(errc::domain, "contradiction_report needs nmax >= 0");
    ContradictionReport rep;

    rep.hypotheses.push_back(degree_hypothesis(f, g));
    PreperiodicityVerdict vx = is_preperiodic(f, x0, nmax, caps);
    rep.hypotheses.push_back(wandering_hypothesis("x0 wandering", vx));
    rep.hypotheses.push_back(
        wandering_hypothesis("y0 wandering", is_preperiodic(g, y0, nmax, caps)));
    rep.hypotheses.push_back(conjugacy_hypothesis(g));
    for (const Hypothesis& h : rep.hypotheses) rep.heuristic = rep.heuristic || !h.holds;

    if (f.degree() >= 2 && vx.kind != PreperiodicityVerdict::Kind::Preperiodic) {
        try {
            rep.certificate = find_certificate(f, x0, nmax, true, {}, caps);
            if (!rep.certificate)
                rep.notes.push_back("growth certificate search exhausted its budget");
        } catch (const error& e) {
            rep.notes.push_back(std::string("growth certificate search failed: ") + e.what());
        }
    } else if (f.degree() < 2) {
        rep.notes.push_back("no growth certificate: the lower bound needs deg f >= 2");
    } else {
        rep.notes.push_back("no growth certificate: the orbit of x0 is bounded");
    }

    Place v = rep.certificate ? rep.certificate->place : Place::archimedean();
    if (!rep.certificate)
        rep.notes.push_back("traces shown at the archimedean place for lack of a certificate");

    rep.boundary = boundary_trace(f, g, x0, y0, phi, v, nmax, caps);
    rep.vacuous = rep.boundary->rows.empty();
    if (rep.vacuous) rep.notes.push_back("no return indices; contradiction vacuous");

    for (const auto& [root, mult] : rep.boundary->info.rational_roots)
        rep.silverman.push_back(silverman_trace(rep.boundary->g, rep.boundary->y0,
                                                ProjPoint::from_rational(root), v, nmax,
                                                precision, caps));

    if (rep.certificate) {
        long d = f.degree();
        const LogOfRational& c1 = rep.certificate->c1;
        for (const BoundaryRow& row : rep.boundary->rows)
            for (size_t s = 0; s < row.root_dists.size(); ++s) {
                GrowthPair pair;
                pair.n = row.n;
                pair.root_index = s;
                pair.delta = row.root_dists[s];
                Int dn = pow_int(Int(d), static_cast<unsigned long>(row.n));
                pair.bound = c1.approx() * mpz_get_d(dn.get_mpz_t());
                if (pair.delta == 0) {
                    pair.neg_log = std::numeric_limits<double>::infinity();
                    pair.comparison = "exceeds";
                    pair.backing = "y_n equals the root exactly";
                } else {
                    Rat inv = Rat(1) / pair.delta;
                    pair.neg_log = Real::log_of_rational(inv, 64).to_double();
                    switch (compare_scaled_logs(inv, Rat(1), c1.arg, Rat(dn) / Rat(c1.root))) {
                        case Cmp3::Greater: pair.comparison = "exceeds"; break;
                        case Cmp3::Less: pair.comparison = "below"; break;
                        case Cmp3::Equal: pair.comparison = "equal"; break;
                        case Cmp3::Undecided: pair.comparison = "undecided"; break;
                    }
                    pair.backing = "(" + to_string(inv) + ")^" + to_string(c1.root) + " vs (" +
                                   to_string(c1.arg) + ")^" + to_string(dn);
                }
                rep.pairs.push_back(std::move(pair));
            }
    }

    rep.notes.push_back(
        "distances, thresholds and comparisons are exact; log values and decay are observed");
    return rep;
}

}  // namespace dml
