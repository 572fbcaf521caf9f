#include "gz/cyclo.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gz {

namespace {

long poly_deg(const Poly& p) {
    for (long i = (long)p.size() - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void poly_trim(Poly& p) { p.resize(std::max<long>(poly_deg(p) + 1, 1)); }

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    poly_trim(c);
    return c;
}

// Exact division by a monic polynomial; remainder returned in place of a.
Poly poly_divmod_monic(Poly& a, const Poly& b) {
    long db = poly_deg(b);
    Poly q(std::max<long>((long)a.size() - db, 1));
    for (long i = (long)a.size() - 1; i >= db; --i) {
        Int c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (long j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    poly_trim(a);
    poly_trim(q);
    return q;
}

void coeff_mod(Poly& p, const Int& mod) {
    for (auto& c : p) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    }
    poly_trim(p);
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, const Int& mod) {
    Poly c = poly_mul(a, b);
    Poly junk = c;
    poly_divmod_monic(junk, f);
    Poly r = junk;  // remainder comes back in the dividend slot
    coeff_mod(r, mod);
    return r;
}

Poly poly_powmod(Poly base, Int e, const Poly& f, const Int& mod) {
    Poly r{Int(1)};
    Poly junk = base;
    poly_divmod_monic(junk, f);
    base = junk;
    coeff_mod(base, mod);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, base, f, mod);
        base = poly_mulmod(base, base, f, mod);
        e >>= 1;
    }
    return r;
}

Int inv_mod(const Int& a, const Int& mod) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()))
        throw std::runtime_error("inv_mod: not invertible");
    return r;
}

// gcd of polynomials over F_l (l prime), monic output.
Poly poly_gcd_mod(Poly a, Poly b, const Int& l) {
    coeff_mod(a, l);
    coeff_mod(b, l);
    while (poly_deg(b) >= 0) {
        // a mod b
        Int lead = b[poly_deg(b)];
        Int li = inv_mod(lead, l);
        long db = poly_deg(b);
        while (poly_deg(a) >= db) {
            long da = poly_deg(a);
            Int c = (a[da] * li) % l;
            for (long j = 0; j <= db; ++j) {
                a[da - db + j] = (a[da - db + j] - c * b[j]) % l;
                if (a[da - db + j] < 0) a[da - db + j] += l;
            }
            poly_trim(a);
            if (poly_deg(a) < 0) break;
        }
        std::swap(a, b);
    }
    long da = poly_deg(a);
    if (da < 0) return a;
    Int li = inv_mod(a[da], l);
    for (auto& c : a) c = (c * li) % l;
    return a;
}

Poly poly_scale_mod(const Poly& a, const Int& c, const Int& mod) {
    Poly r = a;
    for (auto& x : r) x = ((x * c) % mod + mod) % mod;
    poly_trim(r);
    return r;
}

Poly poly_add_mod(const Poly& a, const Poly& b, const Int& mod) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        Int s = (i < a.size() ? a[i] : Int(0)) + (i < b.size() ? b[i] : Int(0));
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
        r[i] = s;
    }
    poly_trim(r);
    return r;
}

Poly poly_sub_mod(const Poly& a, const Poly& b, const Int& mod) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        Int s = (i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0));
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
        r[i] = s;
    }
    poly_trim(r);
    return r;
}

// Division with remainder mod `mod` by a monic divisor.
std::pair<Poly, Poly> poly_divmod_mod(Poly a, const Poly& b, const Int& mod) {
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    long db = poly_deg(b);
    long da = poly_deg(a);
    Poly q(std::max<long>(da - db + 1, 1));
    for (long i = da; i >= db; --i) {
        Int c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (long j = 0; j <= db; ++j) {
            a[i - db + j] -= c * b[j];
            mpz_fdiv_r(a[i - db + j].get_mpz_t(), a[i - db + j].get_mpz_t(), mod.get_mpz_t());
        }
    }
    poly_trim(a);
    poly_trim(q);
    return {q, a};
}

// All monic irreducible factors of f (squarefree, all of the same degree d)
// over F_l, l odd, sorted by coefficient vector.
std::vector<Poly> equal_degree_factor(const Poly& f, long d, const Int& l) {
    std::vector<Poly> done, work{f};
    Int q;
    mpz_pow_ui(q.get_mpz_t(), l.get_mpz_t(), d);
    Int half = (q - 1) / 2;
    unsigned long seed = 12345;
    auto next_rand = [&]() {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return seed >> 33;
    };
    while (!work.empty()) {
        Poly c = work.back();
        work.pop_back();
        if (poly_deg(c) == d) {
            done.push_back(c);
            continue;
        }
        // split with a^((q-1)/2) - 1 for deterministic trial elements
        bool split = false;
        for (long trial = 0; trial < 256 && !split; ++trial) {
            Poly a;
            if (trial < 32) {
                a = Poly{Int(trial % (long)l.get_si()), Int(1)};  // x + k
            } else {
                long dg = 1 + (long)(next_rand() % (unsigned long)std::max<long>(d, 2));
                a.assign(dg + 1, Int(0));
                for (long i = 0; i <= dg; ++i) a[i] = Int((long)(next_rand() % (unsigned long)l.get_ui()));
                if (poly_deg(a) < 1) continue;
            }
            Poly b = poly_powmod(a, half, c, l);
            if (b.empty()) b = Poly{Int(0)};
            b = poly_sub_mod(b, Poly{Int(1)}, l);
            Poly g = poly_gcd_mod(b, c, l);
            long dg = poly_deg(g);
            if (dg > 0 && dg < poly_deg(c)) {
                Poly rest = c;
                Poly quot = poly_divmod_mod(rest, g, l).first;
                work.push_back(g);
                work.push_back(quot);
                split = true;
            }
        }
        if (!split) throw std::runtime_error("equal_degree_factor: splitting failed");
    }
    std::sort(done.begin(), done.end());
    return done;
}

// Quadratic Hensel lifting of f = g*h from mod l^k to mod l^kcap.
// Self-checks the invariant g*h = f after every step.
Poly hensel_lift_factor(const Poly& f, Poly g, Poly h, const Int& l, long kcap) {
    // initial Bezout: u*g + v*h = 1 mod l via extended Euclid over F_l
    auto ext_gcd = [&](Poly a, Poly b) {
        Poly s0{Int(1)}, s1{Int(0)}, t0{Int(0)}, t1{Int(1)};
        while (poly_deg(b) >= 0) {
            auto [q, r] = poly_divmod_mod(a, poly_scale_mod(b, inv_mod(b[poly_deg(b)], l), l), l);
            // normalize: we divided by monic-scaled b, fix scaling
            Int lead = b[poly_deg(b)];
            Int li = inv_mod(lead, l);
            q = poly_scale_mod(q, li, l);
            Poly s2 = poly_sub_mod(s0, poly_mul(q, s1), l);
            Poly t2 = poly_sub_mod(t0, poly_mul(q, t1), l);
            a = b;
            b = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        Int li = inv_mod(a[poly_deg(a)], l);
        return std::tuple{poly_scale_mod(s0, li, l), poly_scale_mod(t0, li, l)};
    };
    auto [u, v] = ext_gcd(g, h);  // u*g + v*h = 1 mod l

    long k = 1;
    Int mod = l;
    while (k < kcap) {
        long k2 = std::min(2 * k, kcap);
        Int mod2;
        mpz_pow_ui(mod2.get_mpz_t(), l.get_mpz_t(), k2);
        // lift factorization
        Poly e = poly_sub_mod(f, poly_mul(g, h), mod2);
        auto [q1, r1] = poly_divmod_mod(poly_mul(v, e), g, mod2);
        Poly g2 = poly_add_mod(g, r1, mod2);
        Poly h2 = poly_add_mod(h, poly_add_mod(poly_mul(u, e), poly_mul(q1, h), mod2), mod2);
        // lift Bezout
        Poly b = poly_sub_mod(poly_add_mod(poly_mul(u, g2), poly_mul(v, h2), mod2), Poly{Int(1)},
                              mod2);
        auto [q2, r2] = poly_divmod_mod(poly_mul(v, b), g2, mod2);
        Poly v2 = poly_sub_mod(v, r2, mod2);
        Poly u2 = poly_sub_mod(u, poly_add_mod(poly_mul(u, b), poly_mul(q2, h2), mod2), mod2);
        g = g2;
        h = h2;
        u = u2;
        v = v2;
        k = k2;
        mod = mod2;
        Poly check = poly_sub_mod(f, poly_mul(g, h), mod);
        if (poly_deg(check) >= 0) throw std::runtime_error("hensel_lift_factor: drift");
    }
    return g;
}

}  // namespace

long euler_phi(long m) {
    long r = m;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            r -= r / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) r -= r / m;
    return r;
}

long mult_order(const Int& a, long m) {
    if (m == 1) return 1;
    Int mm(m);
    if (gcd(a, mm) != 1) throw std::invalid_argument("mult_order: gcd != 1");
    Int x = ((a % mm) + mm) % mm;
    Int y = x;
    long k = 1;
    while (y != 1) {
        y = (y * x) % mm;
        ++k;
        if (k > m) throw std::runtime_error("mult_order overflow");
    }
    return k;
}

Poly cyclotomic_poly(long m) {
    // x^m - 1 divided by Phi_d for proper divisors d
    Poly num(m + 1);
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d) continue;
        Poly phi_d = cyclotomic_poly(d);
        Poly rem = num;
        Poly q = poly_divmod_monic(rem, phi_d);
        num = q;
    }
    return num;
}

CyclotomicInteger CyclotomicInteger::zero(long m) {
    CyclotomicInteger a;
    a.m = m;
    a.coeffs.assign(euler_phi(m), Int(0));
    return a;
}

CyclotomicInteger CyclotomicInteger::from_int(Int n, long m) {
    CyclotomicInteger a = zero(m);
    a.coeffs[0] = std::move(n);
    return a;
}

CyclotomicInteger CyclotomicInteger::root_of_unity(long m, long k) {
    k %= m;
    if (k < 0) k += m;
    Poly p(k + 1);
    p[k] = 1;
    Poly phi = cyclotomic_poly(m);
    poly_divmod_monic(p, phi);
    CyclotomicInteger a = zero(m);
    for (size_t i = 0; i < p.size(); ++i) a.coeffs[i] = p[i];
    return a;
}

bool CyclotomicInteger::is_zero() const {
    for (auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

std::string CyclotomicInteger::str() const {
    std::ostringstream os;
    os << "[" << m << ":";
    for (size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i].get_str();
    os << "]";
    return os.str();
}

CyclotomicInteger cyc_lift(const CyclotomicInteger& a, long m2) {
    if (a.m == m2) return a;
    if (m2 % a.m) throw std::invalid_argument("cyc_lift: target not a multiple");
    long k = m2 / a.m;
    Poly p(euler_phi(a.m) * k + 1);
    for (size_t i = 0; i < a.coeffs.size(); ++i) p[i * k] = a.coeffs[i];
    Poly phi = cyclotomic_poly(m2);
    poly_divmod_monic(p, phi);
    CyclotomicInteger r = CyclotomicInteger::zero(m2);
    for (size_t i = 0; i < p.size(); ++i) r.coeffs[i] = p[i];
    return r;
}

static std::pair<CyclotomicInteger, CyclotomicInteger> common_level(const CyclotomicInteger& a,
                                                                    const CyclotomicInteger& b) {
    if (a.m == b.m) return {a, b};
    long m = (long)lcm(Int(a.m), Int(b.m)).get_si();
    return {cyc_lift(a, m), cyc_lift(b, m)};
}

CyclotomicInteger cyc_add(const CyclotomicInteger& a0, const CyclotomicInteger& b0) {
    auto [a, b] = common_level(a0, b0);
    for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
}

CyclotomicInteger cyc_sub(const CyclotomicInteger& a0, const CyclotomicInteger& b0) {
    auto [a, b] = common_level(a0, b0);
    for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
    return a;
}

CyclotomicInteger cyc_neg(const CyclotomicInteger& a) {
    CyclotomicInteger r = a;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

CyclotomicInteger cyc_scal(const Int& c, const CyclotomicInteger& a) {
    CyclotomicInteger r = a;
    for (auto& x : r.coeffs) x *= c;
    return r;
}

CyclotomicInteger cyc_mul(const CyclotomicInteger& a0, const CyclotomicInteger& b0) {
    auto [a, b] = common_level(a0, b0);
    Poly p = poly_mul(a.coeffs, b.coeffs);
    Poly phi = cyclotomic_poly(a.m);
    poly_divmod_monic(p, phi);
    CyclotomicInteger r = CyclotomicInteger::zero(a.m);
    for (size_t i = 0; i < p.size(); ++i) r.coeffs[i] = p[i];
    return r;
}

CyclotomicInteger cyc_conj(const CyclotomicInteger& a, const Int& s) {
    if (gcd(s, Int(a.m)) != 1) throw std::invalid_argument("cyc_conj: gcd(s, m) != 1");
    long ss = (long)(((s % a.m) + a.m) % a.m).get_si();
    Poly p(std::max<long>((long)(a.coeffs.size() - 1) * ss + 1, 1));
    for (size_t i = 0; i < a.coeffs.size(); ++i) p[i * ss] += a.coeffs[i];
    Poly phi = cyclotomic_poly(a.m);
    poly_divmod_monic(p, phi);
    CyclotomicInteger r = CyclotomicInteger::zero(a.m);
    for (size_t i = 0; i < p.size(); ++i) r.coeffs[i] = p[i];
    return r;
}

Int cyc_norm(const CyclotomicInteger& a) {
    // resultant(Phi_m, a) via Sylvester determinant
    Poly f = cyclotomic_poly(a.m);
    Poly g = a.coeffs;
    poly_trim(g);
    long df = poly_deg(f), dg = poly_deg(g);
    if (dg < 0) return 0;
    if (dg == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), df);
        return r;
    }
    long n = df + dg;
    IntMatrix s(n, n);
    for (long i = 0; i < dg; ++i)
        for (long j = 0; j <= df; ++j) s.at(i, i + j) = f[df - j];
    for (long i = 0; i < df; ++i)
        for (long j = 0; j <= dg; ++j) s.at(dg + i, i + j) = g[dg - j];
    return s.det();
}

Int LambdaContext::residue_order() const {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), l.get_mpz_t(), f_res);
    return r;
}

LambdaContext lambda_context(const Int& l, long m, long kcap, const Int& p, long factor_index) {
    if (!is_prime(l)) throw std::invalid_argument("lambda_context: l not prime");
    if (l == 2) throw std::runtime_error("lambda_context: l = 2 unsupported");
    if (kcap < 1) throw std::invalid_argument("lambda_context: kcap < 1");
    LambdaContext ctx;
    ctx.l = l;
    ctx.m = m;
    ctx.p = p;
    ctx.kcap = kcap;
    ctx.factor_index = factor_index;

    if (m % (long)l.get_si() == 0) {
        if (p != l)
            throw std::runtime_error(
                "lambda_context: l | M with l != p is an unsupported configuration");
        long t = 0, mu = m;
        long lp = (long)l.get_si();
        while (mu % lp == 0) {
            mu /= lp;
            ++t;
        }
        ctx.m_unram = mu;
        ctx.t = t;
        ctx.e_ram = euler_phi(m / mu);
    } else {
        ctx.m_unram = m;
        ctx.t = 0;
        ctx.e_ram = 1;
    }
    ctx.f_res = mult_order(l, ctx.m_unram);
    ctx.n_factors = euler_phi(ctx.m_unram) / ctx.f_res;
    if (factor_index < 0 || factor_index >= ctx.n_factors)
        throw std::invalid_argument("lambda_context: factor_index out of range");
    Int qm1 = ctx.residue_order() - 1;
    ctx.mu_p_in_residue = (p != 0) && (qm1 % p == 0);

    // the chosen prime: lexicographically least irreducible factor (or the
    // factor_index-th), Hensel-lifted to precision l^kcap
    Poly phi = cyclotomic_poly(ctx.m_unram);
    auto factors = equal_degree_factor([&] {
        Poly f = phi;
        coeff_mod(f, l);
        return f;
    }(), ctx.f_res, l);
    Poly g0 = factors[factor_index];
    if ((long)factors.size() != ctx.n_factors)
        throw std::runtime_error("lambda_context: factor count mismatch");
    if (ctx.n_factors == 1) {
        // whole Phi_{M'} is the factor; lift is just reduction mod l^kcap
        Int mod;
        mpz_pow_ui(mod.get_mpz_t(), l.get_mpz_t(), kcap);
        Poly f = phi;
        coeff_mod(f, mod);
        ctx.unram_factor = f;
    } else {
        Poly f = phi;
        Poly rest = f;
        coeff_mod(rest, l);
        Poly h0 = poly_divmod_mod(rest, g0, l).first;
        ctx.unram_factor = hensel_lift_factor(phi, g0, h0, l, kcap);
    }

    // mixed-basis change matrix for the ramified case
    if (ctx.t > 0) {
        long e = ctx.e_ram, phiu = euler_phi(ctx.m_unram), pm = m / ctx.m_unram;  // pm = p^t
        long phm = euler_phi(m);
        Poly phi_u = cyclotomic_poly(ctx.m_unram);
        // Psi(y) = Phi_{p^t}(1 + y), monic of degree e
        Poly psi;
        {
            Poly phipt = cyclotomic_poly(pm);
            // substitute x = 1 + y
            psi.assign(e + 1, Int(0));
            Poly pw{Int(1)};  // (1+y)^j
            for (long j = 0; j <= e; ++j) {
                for (size_t i = 0; i < pw.size(); ++i) psi[i] += phipt[j] * pw[i];
                pw = poly_mul(pw, Poly{Int(1), Int(1)});
            }
        }
        // CRT exponent pair for zeta_m = zeta_{M'} * zeta_{p^t}
        ctx.mixed_basis.assign(phm, std::vector<Int>(phm, Int(0)));
        for (long k = 0; k < phm; ++k) {
            long ju = k % ctx.m_unram;   // zeta_{M'}^{ju}
            long jr = k % pm;            // zeta_{p^t}^{jr}
            // (1+y)^{jr} mod Psi, coefficients in Z
            Poly yq{Int(1)};
            for (long s = 0; s < jr; ++s) {
                yq = poly_mul(yq, Poly{Int(1), Int(1)});
                poly_divmod_monic(yq, psi);
            }
            Poly uq(ju + 1);
            uq[ju] = 1;
            poly_divmod_monic(uq, phi_u);
            for (long i = 0; i < (long)yq.size(); ++i)
                for (long j = 0; j < (long)uq.size(); ++j)
                    ctx.mixed_basis[k][i * phiu + j] = yq[i] * uq[j];
        }
    }
    return ctx;
}

namespace {

// coordinates of a in the (y^i, zeta_{M'}^j) basis (ramified contexts)
std::vector<Poly> mixed_coords(const CyclotomicInteger& a, const LambdaContext& ctx) {
    long phiu = euler_phi(ctx.m_unram);
    std::vector<Poly> slots(ctx.e_ram, Poly(phiu, Int(0)));
    for (size_t k = 0; k < a.coeffs.size(); ++k) {
        if (a.coeffs[k] == 0) continue;
        const auto& col = ctx.mixed_basis[k];
        for (long i = 0; i < ctx.e_ram; ++i)
            for (long j = 0; j < phiu; ++j) slots[i][j] += a.coeffs[k] * col[i * phiu + j];
    }
    return slots;
}

// min_j ord_l of (poly mod (g, l^kcap)); kcap when the remainder vanishes
long unram_slot_ord(Poly r, const LambdaContext& ctx) {
    Int mod;
    mpz_pow_ui(mod.get_mpz_t(), ctx.l.get_mpz_t(), ctx.kcap);
    auto rem = poly_divmod_mod(std::move(r), ctx.unram_factor, mod).second;
    long best = ctx.kcap;
    for (auto& c : rem) {
        if (c == 0) continue;
        best = std::min(best, valuation(c, ctx.l));
    }
    return best;
}

}  // namespace

Valuation ord_lambda_int(const Int& n, const LambdaContext& ctx) {
    if (n == 0) return {0, true};
    return {ctx.e_ram * valuation(n, ctx.l), false};
}

Valuation ord_lambda(const CyclotomicInteger& a0, const LambdaContext& ctx) {
    CyclotomicInteger a = (a0.m == ctx.m) ? a0 : cyc_lift(a0, ctx.m);
    if (a.is_zero()) return {0, true};
    long cap = ctx.e_ram * ctx.kcap;
    if (ctx.t == 0) {
        Poly r = a.coeffs;
        long v = unram_slot_ord(std::move(r), ctx);
        if (v >= ctx.kcap) return {cap, true};
        return {v, false};
    }
    auto slots = mixed_coords(a, ctx);
    long best = cap;
    for (long i = 0; i < ctx.e_ram; ++i) {
        long vu = unram_slot_ord(slots[i], ctx);
        if (vu >= ctx.kcap) continue;  // slot indistinguishable from 0 at this precision
        best = std::min(best, ctx.e_ram * vu + i);
    }
    if (best >= cap) return {cap, true};
    return {best, false};
}

bool ResidueElement::is_zero() const {
    for (auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

std::string ResidueElement::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i].get_str();
    os << " mod lambda^" << r << ")";
    return os.str();
}

ResidueElement residue_reduce(const CyclotomicInteger& a0, const LambdaContext& ctx, long r) {
    if (r < 1 || r > ctx.e_ram * ctx.kcap)
        throw std::invalid_argument("residue_reduce: r out of precision range");
    CyclotomicInteger a = (a0.m == ctx.m) ? a0 : cyc_lift(a0, ctx.m);
    ResidueElement out;
    out.l = ctx.l;
    out.r = r;
    out.e_ram = ctx.e_ram;
    if (ctx.t == 0) {
        Int mod;
        mpz_pow_ui(mod.get_mpz_t(), ctx.l.get_mpz_t(), r);
        Poly rem = poly_divmod_mod(a.coeffs, ctx.unram_factor, mod).second;
        coeff_mod(rem, mod);
        rem.resize(ctx.f_res, Int(0));
        out.coeffs = rem;
        return out;
    }
    auto slots = mixed_coords(a, ctx);
    out.coeffs.assign(ctx.e_ram * ctx.f_res, Int(0));
    for (long i = 0; i < ctx.e_ram; ++i) {
        long ri = (r - i + ctx.e_ram - 1) / ctx.e_ram;  // ceil((r - i)/e)
        if (ri <= 0) continue;
        Int mod;
        mpz_pow_ui(mod.get_mpz_t(), ctx.l.get_mpz_t(), ri);
        Poly rem = poly_divmod_mod(std::move(slots[i]), ctx.unram_factor, mod).second;
        coeff_mod(rem, mod);
        rem.resize(ctx.f_res, Int(0));
        for (long j = 0; j < ctx.f_res; ++j) out.coeffs[i * ctx.f_res + j] = rem[j];
    }
    return out;
}

ResidueElement residue_add(const ResidueElement& a, const ResidueElement& b) {
    if (a.l != b.l || a.r != b.r || a.e_ram != b.e_ram || a.coeffs.size() != b.coeffs.size())
        throw std::invalid_argument("residue_add: mismatched rings");
    ResidueElement r = a;
    long f = (long)a.coeffs.size() / a.e_ram;
    for (long i = 0; i < a.e_ram; ++i) {
        long ri = (a.r - i + a.e_ram - 1) / a.e_ram;
        if (ri <= 0) continue;
        Int mod;
        mpz_pow_ui(mod.get_mpz_t(), a.l.get_mpz_t(), ri);
        for (long j = 0; j < f; ++j) {
            Int& c = r.coeffs[i * f + j];
            c += b.coeffs[i * f + j];
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
        }
    }
    return r;
}

ResidueElement residue_scal(const Int& c, const ResidueElement& a) {
    ResidueElement r = a;
    long f = (long)a.coeffs.size() / a.e_ram;
    for (long i = 0; i < a.e_ram; ++i) {
        long ri = (a.r - i + a.e_ram - 1) / a.e_ram;
        if (ri <= 0) continue;
        Int mod;
        mpz_pow_ui(mod.get_mpz_t(), a.l.get_mpz_t(), ri);
        for (long j = 0; j < f; ++j) {
            Int& x = r.coeffs[i * f + j];
            x *= c;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
        }
    }
    return r;
}

ResidueElement residue_mul(const ResidueElement& a, const ResidueElement& b,
                           const LambdaContext& ctx) {
    if (ctx.t != 0 || a.r != 1 || b.r != 1)
        throw std::invalid_argument("residue_mul: only r = 1 unramified supported");
    Poly f = ctx.unram_factor;
    coeff_mod(f, ctx.l);
    Poly pr = poly_mulmod(a.coeffs, b.coeffs, f, ctx.l);
    ResidueElement r = a;
    pr.resize(ctx.f_res, Int(0));
    r.coeffs = pr;
    return r;
}

ResidueElement residue_trace(const CyclotomicInteger& a, const LambdaContext& ctx, const Int& q,
                             long d) {
    CyclotomicInteger sum = CyclotomicInteger::zero(ctx.m);
    Int e(1);
    for (long i = 0; i < d; ++i) {
        sum = cyc_add(sum, cyc_conj(cyc_lift(a, ctx.m), e % ctx.m));
        e = (e * q) % ctx.m;
    }
    return residue_reduce(sum, ctx, 1);
}

}  // namespace gz
