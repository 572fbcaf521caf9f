#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gz {

using Int = mpz_class;
using Rat = mpq_class;

// Kronecker symbol (a|n), n != 0.
int kronecker_symbol(const Int& a, const Int& n);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
// Largest e with p^e | n (n != 0).
long valuation(Int n, const Int& p);
// Floor of sqrt(n), n >= 0.
Int isqrt(const Int& n);
// Exact integer k-th root; throws if n is not a perfect k-th power.
Int exact_root(const Int& n, unsigned k);
// Nearest integer to x (ties toward +infinity).
Int round_nearest(const Rat& x);
Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);
// floor(c + sqrt(q)) and ceil(c - sqrt(q)) for rational q >= 0, exact.
Int floor_plus_sqrt(const Rat& c, const Rat& q);
Int ceil_minus_sqrt(const Rat& c, const Rat& q);

bool is_prime(const Int& n);
Int next_prime(const Int& n);
std::vector<std::pair<Int, long>> factorize(Int n);

// Dense integer matrix, row major.
struct IntMatrix {
    long rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(long r, long c) : rows(r), cols(c), a(r * c) {}
    static IntMatrix identity(long n);

    Int& at(long r, long c) { return a[r * cols + c]; }
    const Int& at(long r, long c) const { return a[r * cols + c]; }
    bool operator==(const IntMatrix&) const = default;

    IntMatrix transpose() const;
    IntMatrix mul(const IntMatrix& rhs) const;
    Int det() const;  // square matrices only, exact expansion via fraction-free elimination
    std::string str() const;
};

// Row Hermite normal form: same row lattice, pivots positive, entries above
// each pivot reduced into [0, pivot). Zero rows sink to the bottom.
IntMatrix hnf(const IntMatrix& m);
// HNF with zero rows dropped.
IntMatrix hnf_trim(const IntMatrix& m);

struct SnfResult {
    IntMatrix d, u, v;  // d = u*m*v, u and v unimodular, d diagonal with d1 | d2 | ...
};
SnfResult snf(const IntMatrix& m);

// Membership of an integer row vector in the row lattice of an HNF basis.
bool in_row_lattice(const IntMatrix& hnf_basis, const std::vector<Int>& v);

// 4x4 symmetric positive definite Gram matrix, entries = twice the quadratic
// form values (diagonal = 2*Q(b_i)).
struct GramMatrix {
    std::array<Int, 16> g{};
    Int& at(int r, int c) { return g[r * 4 + c]; }
    const Int& at(int r, int c) const { return g[r * 4 + c]; }
    bool is_symmetric() const;
    bool is_positive_definite() const;  // leading principal minors > 0
};

// All v in Z^4 with v^T G v / 2 <= bound (includes the zero vector),
// deterministic lexicographic order. With half = true only one vector per
// +/- pair is kept (first nonzero coordinate positive).
std::vector<std::array<Int, 4>> short_vectors(const GramMatrix& g, const Int& bound,
                                              bool half = false);

// General engine behind short_vectors: all v in Z^r with
// (v - center)^T Q (v - center) <= bound for a rational PD form Q (r <= 8).
std::vector<std::vector<Int>> enumerate_ellipsoid(const std::vector<std::vector<Rat>>& q_form,
                                                  const std::vector<Rat>& center,
                                                  const Rat& bound);

}  // namespace gz
