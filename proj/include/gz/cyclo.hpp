#pragma once

#include <optional>
#include <vector>

#include "gz/numerics.hpp"

namespace gz {

// Dense integer polynomial, coeff[i] is the x^i coefficient.
using Poly = std::vector<Int>;

Poly cyclotomic_poly(long m);
long euler_phi(long m);
// Multiplicative order of a modulo m (gcd(a, m) = 1).
long mult_order(const Int& a, long m);

// Element of Z[zeta_m] in the power basis mod Phi_m. All arithmetic is exact;
// mixed conductors lift automatically to the lcm.
struct CyclotomicInteger {
    long m = 1;
    std::vector<Int> coeffs;  // length phi(m)

    CyclotomicInteger() : coeffs(1) {}
    static CyclotomicInteger zero(long m);
    static CyclotomicInteger from_int(Int n, long m = 1);
    static CyclotomicInteger root_of_unity(long m, long k);  // zeta_m^k

    bool is_zero() const;
    bool operator==(const CyclotomicInteger&) const = default;
    std::string str() const;
};

CyclotomicInteger cyc_lift(const CyclotomicInteger& a, long m2);  // a.m | m2
CyclotomicInteger cyc_add(const CyclotomicInteger& a, const CyclotomicInteger& b);
CyclotomicInteger cyc_sub(const CyclotomicInteger& a, const CyclotomicInteger& b);
CyclotomicInteger cyc_neg(const CyclotomicInteger& a);
CyclotomicInteger cyc_mul(const CyclotomicInteger& a, const CyclotomicInteger& b);
CyclotomicInteger cyc_scal(const Int& c, const CyclotomicInteger& a);
// Galois conjugation zeta -> zeta^s, gcd(s, m) = 1.
CyclotomicInteger cyc_conj(const CyclotomicInteger& a, const Int& s);
// Absolute norm down to Z (resultant with Phi_m).
Int cyc_norm(const CyclotomicInteger& a);

// Valuation result; bottomed means "zero to working precision" (or exactly 0).
struct Valuation {
    long v = 0;
    bool bottomed = false;
    bool operator==(const Valuation&) const = default;
};

// A fixed prime lambda over l in Z[zeta_m], with a certified-precision
// valuation engine. The distinguished odd prime p marks the (only) allowed
// ramified configuration l = p; for l != p the conductor must be prime to l.
struct LambdaContext {
    Int l;
    long m = 1;
    Int p;
    long m_unram = 1;  // prime-to-l part M' of m
    long t = 0;        // l = p: exponent with m = M' * p^t
    long e_ram = 1;
    long f_res = 1;
    long kcap = 1;
    long factor_index = 0;
    long n_factors = 1;
    bool mu_p_in_residue = false;  // p | l^f_res - 1
    Poly unram_factor;             // monic, mod l^kcap, degree f_res

    // zeta_m^k in the (y^i, zeta_{M'}^j) basis; column-major per power k.
    std::vector<std::vector<Int>> mixed_basis;  // size phi(m), each of length phi(m)

    Int residue_order() const;  // l^f_res
};

LambdaContext lambda_context(const Int& l, long m, long kcap, const Int& p = Int(0),
                             long factor_index = 0);

Valuation ord_lambda(const CyclotomicInteger& a, const LambdaContext& ctx);
Valuation ord_lambda_int(const Int& n, const LambdaContext& ctx);

// Element of E_l / lambda^r in canonical coordinates.
struct ResidueElement {
    Int l;
    long r = 1;
    long e_ram = 1;
    std::vector<Int> coeffs;
    bool operator==(const ResidueElement&) const = default;
    bool is_zero() const;
    std::string str() const;
};

ResidueElement residue_reduce(const CyclotomicInteger& a, const LambdaContext& ctx, long r);
ResidueElement residue_add(const ResidueElement& a, const ResidueElement& b);
ResidueElement residue_scal(const Int& c, const ResidueElement& a);
// Multiplication in the residue field (r = 1, unramified contexts only).
ResidueElement residue_mul(const ResidueElement& a, const ResidueElement& b,
                           const LambdaContext& ctx);

// Frobenius-orbit trace sum_{i<d} a^(zeta -> zeta^{q^i}) reduced mod lambda;
// q is the order of the base residue field, d the extension degree.
ResidueElement residue_trace(const CyclotomicInteger& a, const LambdaContext& ctx, const Int& q,
                             long d);

}  // namespace gz
