#include "dml/growth.hpp"

#include <set>

#include "dml/real.hpp"

namespace dml {

namespace {

constexpr size_t kBracketBitWork = 1ul << 24;

// rho^(d^shift) with a work cap; shift >= 0
Rat bracket_power(const Rat& rho, long d, long shift) {
    Int e = pow_int(Int(d), static_cast<unsigned long>(shift));
    if (!e.fits_ulong_p() || bit_size(rho) * e.get_ui() > kBracketBitWork)
        fail(errc::budget, "bracket verification exceeds its size cap at shift " +
                               std::to_string(shift));
    return pow_rat(rho, e.get_ui());
}

GrowthCertificate build_certificate(const AffinePolyMap& f, const Rat& xn, const Place& v, long n,
                                    bool in_s, const Rat& cv) {
    long d = f.degree();
    Rat alpha = abs_v(f.leading(), v);
    Rat m0 = abs_v(xn, v);
    Rat md = pow_rat(m0, static_cast<unsigned long>(d - 1));
    Rat rho1 = md * alpha / 2;
    Rat beta1 = alpha / 2;
    Rat rho2 = md * alpha * 3 / 2;
    Rat beta2 = alpha * 3 / 2;
    if (rho1 <= 1) fail(errc::internal, "degenerate lower bracket at an accepted witness");

    GrowthCertificate c;
    c.place = v;
    c.n0 = n;
    c.in_s = in_s;
    c.c_v = cv;
    Int root(d - 1);
    c.a1 = {rho1, root};
    c.b1 = {beta1, root};
    c.a2 = {rho2, root};
    c.b2 = {beta2, root};
    Int dn = pow_int(Int(d), static_cast<unsigned long>(n));
    c.c1 = {rho1, 2 * dn * root};
    // when B2 < 0 the plain A2/d^N quotient undershoots; fold B2 in
    c.c2 = {beta2 >= 1 ? rho2 : rho2 / beta2, dn * root};
    // N'': first n with (A1/2) d^(n-N) >= B1, i.e. rho1^(d^k) >= beta1^2
    Rat b1sq = beta1 * beta1;
    long k = 1;
    while (bracket_power(rho1, d, k) < b1sq) ++k;
    c.n2 = n + k - 1;
    return c;
}

}  // namespace

double LogOfRational::approx() const {
    Real r = Real::log_of_rational(arg, 96);
    r.div_int(root);
    return r.to_double();
}

const Rat* BadPlaceSet::threshold(const Place& v) const {
    for (const auto& [p, c] : thresholds)
        if (p == v) return &c;
    return nullptr;
}

BadPlaceSet bad_places(const AffinePolyMap& f, const FactorBudget& budget) {
    long d = f.degree();
    if (d < 2) fail(errc::domain, "bad place set needs degree >= 2");

    std::set<Place> s;
    s.insert(Place::archimedean());
    auto add_support = [&](const Rat& c, long i, bool denominators_only) {
        if (c == 0) return;
        std::vector<Place> ps;
        try {
            ps = support_places(c, budget);
        } catch (const error& e) {
            if (e.code() != errc::budget) throw;
            fail(errc::budget, std::string("factoring budget exceeded on the coefficient of x^") +
                                   std::to_string(i) + ": " + e.what());
        }
        for (const Place& p : ps)
            if (!denominators_only || valuation(c, p.prime()) < 0) s.insert(p);
    };
    add_support(f.leading(), d, false);
    for (long i = 0; i < d; ++i) add_support(f.coeff(i), i, true);

    BadPlaceSet out;
    for (const Place& v : s) {
        Rat alpha = abs_v(f.leading(), v);
        Rat sum(0);
        for (long i = 0; i < d; ++i) sum += abs_v(f.coeff(i), v);
        out.thresholds.emplace_back(v, Rat(2) / alpha * (1 + sum) + 1);
    }
    return out;
}

std::optional<GrowthCertificate> find_certificate(const AffinePolyMap& f, const Rat& x0,
                                                  long search_budget, bool assume_wandering,
                                                  const FactorBudget& budget,
                                                  const OrbitCaps& caps) {
    long d = f.degree();
    if (d < 2) fail(errc::domain, "certificate search needs degree >= 2");
    if (search_budget < 0) fail(errc::domain, "search budget must be nonnegative");
    if (!assume_wandering) {
        auto verdict = is_preperiodic(f, x0, search_budget, caps);
        if (verdict.kind == PreperiodicityVerdict::Kind::Preperiodic)
            fail(errc::domain, "x0 is preperiodic (tail " + std::to_string(verdict.tail) +
                                   ", period " + std::to_string(verdict.period) +
                                   "); no growth certificate exists");
        if (verdict.kind == PreperiodicityVerdict::Kind::Unknown)
            fail(errc::domain,
                 "could not certify x0 non-preperiodic within the budget; "
                 "assume_wandering overrides");
    }

    BadPlaceSet s = bad_places(f, budget);
    ProjRatMap g = f.homogenized();
    ProjPoint q = ProjPoint::from_rational(x0);
    for (long n = 0; n <= search_budget; ++n) {
        Rat xn = q.affine();
        for (const auto& [v, cv] : s.thresholds)
            if (abs_v(xn, v) > cv) return build_certificate(f, xn, v, n, true, cv);

        Int w = xn.get_den();
        for (const auto& [v, cv] : s.thresholds)
            if (!v.is_archimedean())
                mpz_remove(w.get_mpz_t(), w.get_mpz_t(), v.prime().get_mpz_t());
        if (w > 1) {
            Factorization fz = factor(w, budget);
            for (const auto& [p, k] : fz.factors) {
                // p = 2 with valuation 1 at d = 2 gives a flat lower bracket;
                // the exact power law doubles the valuation one step later
                if (p == 2 && k * static_cast<unsigned long>(d - 1) == 1) continue;
                return build_certificate(f, xn, Place::finite(p), n, false, Rat(1));
            }
        }

        if (n == search_budget) break;
        q = eval(g, q);
        if (std::max(bit_size(q.u()), bit_size(q.w())) > caps.value_bits) break;
    }
    return std::nullopt;
}

VerificationReport verify_certificate(const AffinePolyMap& f, const Rat& x0,
                                      const GrowthCertificate& cert, long n_hi,
                                      const OrbitCaps& caps) {
    long d = f.degree();
    if (d < 2) fail(errc::domain, "certificate verification needs degree >= 2");
    if (n_hi < cert.n0) fail(errc::domain, "n_hi is below the certificate's start index");

    VerificationReport rep;
    auto row = [&](long n, const char* check, bool ok, std::string detail) {
        rep.valid = rep.valid && ok;
        rep.rows.push_back({n, check, ok, std::move(detail)});
    };

    const Place& v = cert.place;
    BadPlaceSet s = bad_places(f);
    const Rat* cv = s.threshold(v);
    if (cert.in_s)
        row(cert.n0, "threshold-constant", cv != nullptr && *cv == cert.c_v,
            cv ? "C_v = " + to_string(*cv) : "place is not in the bad set");
    else
        row(cert.n0, "threshold-constant", cv == nullptr && cert.c_v == 1,
            cv ? "place is in the bad set" : "off the bad set, threshold 1");

    ProjRatMap g = f.homogenized();
    ProjPoint q = ProjPoint::from_rational(x0);
    auto step = [&]() {
        q = eval(g, q);
        if (std::max(bit_size(q.u()), bit_size(q.w())) > caps.value_bits)
            fail(errc::budget, "orbit coordinate size beyond cap during verification");
    };
    for (long i = 0; i < cert.n0; ++i) step();
    std::vector<Rat> m;  // m[j] = |f^(n0+j)(x0)|_v
    for (long n = cert.n0; n <= n_hi + 1; ++n) {
        m.push_back(abs_v(q.affine(), v));
        step();
    }

    Rat alpha = abs_v(f.leading(), v);
    Rat md = pow_rat(m[0], static_cast<unsigned long>(d - 1));
    Int root(d - 1);
    bool consts_ok = cert.a1.arg == md * alpha / 2 && cert.b1.arg == alpha / 2 &&
                     cert.a2.arg == md * alpha * 3 / 2 && cert.b2.arg == alpha * 3 / 2 &&
                     cert.a1.root == root && cert.b1.root == root && cert.a2.root == root &&
                     cert.b2.root == root && cert.a1.arg > 1;
    row(cert.n0, "bracket-constants", consts_ok,
        "rebuilt from |f^N(x0)|_v = " + to_string(m[0]) + " and |a_d|_v = " + to_string(alpha));

    Int dn = pow_int(Int(d), static_cast<unsigned long>(cert.n0));
    bool pure_ok = cert.n2 >= cert.n0 && cert.c1.arg == cert.a1.arg &&
                   cert.c1.root == 2 * dn * root &&
                   cert.c2.arg == (cert.b2.arg >= 1 ? cert.a2.arg : cert.a2.arg / cert.b2.arg) &&
                   cert.c2.root == dn * root &&
                   bracket_power(cert.a1.arg, d, cert.n2 + 1 - cert.n0) >=
                       cert.b1.arg * cert.b1.arg;
    row(cert.n2, "pure-form", pure_ok, "c1, c2 rebuilt; halving threshold checked at N'' + 1");

    for (long n = cert.n0; n <= n_hi; ++n) {
        size_t j = static_cast<size_t>(n - cert.n0);
        row(n, "threshold", m[j] > cert.c_v, to_string(m[j]) + " vs " + to_string(cert.c_v));
        Rat mjd = pow_rat(m[j], static_cast<unsigned long>(d));
        if (cert.in_s) {
            bool ok = alpha * mjd < 2 * m[j + 1] && 2 * m[j + 1] < 3 * alpha * mjd;
            row(n, "ratio", ok,
                mjd == 0 ? "vanishing orbit value" : "ratio = " + to_string(m[j + 1] / mjd));
        } else {
            row(n, "exact-law", m[j + 1] == mjd,
                to_string(m[j + 1]) + " vs " + to_string(mjd));
        }
        if (n > cert.n0) {
            Rat mjr = pow_rat(m[j], static_cast<unsigned long>(d - 1));
            bool lo = bracket_power(cert.a1.arg, d, n - cert.n0) < cert.b1.arg * mjr;
            bool hi = cert.b2.arg * mjr < bracket_power(cert.a2.arg, d, n - cert.n0);
            row(n, "bracket", lo && hi, std::string(lo ? "lower ok" : "lower failed") + ", " +
                                            (hi ? "upper ok" : "upper failed"));
        }
    }
    return rep;
}

}  // namespace dml
