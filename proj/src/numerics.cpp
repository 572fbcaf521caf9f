#include "gz/numerics.hpp"

#include <algorithm>
#include <sstream>

namespace gz {

int kronecker_symbol(const Int& a, const Int& n) {
    if (n == 0) throw std::invalid_argument("kronecker_symbol: n = 0");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

long valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of 0");
    long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int exact_root(const Int& n, unsigned k) {
    Int r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (!exact) throw std::runtime_error("exact_root: not a perfect power");
    return r;
}

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Int round_nearest(const Rat& x) { return floor_rat(x + Rat(1, 2)); }

Int floor_plus_sqrt(const Rat& c, const Rat& q) {
    if (q < 0) throw std::invalid_argument("floor_plus_sqrt: q < 0");
    // start above the answer, then walk down; q's sqrt is overestimated by
    // isqrt(ceil(q)) + 1
    Int t = floor_rat(c) + isqrt(ceil_rat(q)) + 2;
    auto ok = [&](const Int& s) {
        Rat d = Rat(s) - c;
        if (d <= 0) return true;
        return d * d <= q;
    };
    while (!ok(t)) --t;
    return t;
}

Int ceil_minus_sqrt(const Rat& c, const Rat& q) { return -floor_plus_sqrt(-c, q); }

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::vector<std::pair<Int, long>> factorize(Int n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    if (n < 0) n = -n;
    std::vector<std::pair<Int, long>> out;
    Int p = 2;
    while (p * p <= n) {
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            long e = 0;
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p = next_prime(p);
        // desk-scale inputs; anything huge left over is (probably) prime
        if (p > 100000 && n > 1 && is_prime(n)) break;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

IntMatrix IntMatrix::identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols, rows);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& rhs) const {
    if (cols != rhs.rows) throw std::invalid_argument("IntMatrix::mul shape");
    IntMatrix r(rows, rhs.cols);
    for (long i = 0; i < rows; ++i)
        for (long k = 0; k < cols; ++k) {
            if (at(i, k) == 0) continue;
            for (long j = 0; j < rhs.cols; ++j) r.at(i, j) += at(i, k) * rhs.at(k, j);
        }
    return r;
}

Int IntMatrix::det() const {
    if (rows != cols) throw std::invalid_argument("det of non-square");
    long n = rows;
    // Bareiss fraction-free elimination
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (long i = 0; i < rows; ++i) {
        os << (i ? "; " : "[");
        for (long j = 0; j < cols; ++j) os << (j ? "," : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

IntMatrix hnf(const IntMatrix& m) {
    IntMatrix h = m;
    long r = 0;  // next pivot row
    for (long c = 0; c < h.cols && r < h.rows; ++c) {
        // clear column c below row r via gcd row transforms
        for (long i = r + 1; i < h.rows; ++i) {
            if (h.at(i, c) == 0) continue;
            if (h.at(r, c) == 0) {
                for (long j = 0; j < h.cols; ++j) std::swap(h.at(r, j), h.at(i, j));
                continue;
            }
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h.at(r, c).get_mpz_t(),
                       h.at(i, c).get_mpz_t());
            Int u = h.at(r, c) / g, v = h.at(i, c) / g;
            for (long j = 0; j < h.cols; ++j) {
                Int x = h.at(r, j), y = h.at(i, j);
                h.at(r, j) = s * x + t * y;
                h.at(i, j) = u * y - v * x;
            }
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0)
            for (long j = 0; j < h.cols; ++j) h.at(r, j) = -h.at(r, j);
        // reduce entries above the pivot into [0, pivot)
        for (long i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
            if (q != 0)
                for (long j = 0; j < h.cols; ++j) h.at(i, j) -= q * h.at(r, j);
        }
        ++r;
    }
    return h;
}

IntMatrix hnf_trim(const IntMatrix& m) {
    IntMatrix h = hnf(m);
    long nz = 0;
    for (long i = 0; i < h.rows; ++i) {
        bool zero = true;
        for (long j = 0; j < h.cols; ++j)
            if (h.at(i, j) != 0) zero = false;
        if (!zero) nz = i + 1;
    }
    IntMatrix t(nz, h.cols);
    for (long i = 0; i < nz; ++i)
        for (long j = 0; j < h.cols; ++j) t.at(i, j) = h.at(i, j);
    return t;
}

SnfResult snf(const IntMatrix& m) {
    SnfResult res{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.cols)};
    IntMatrix& d = res.d;
    long n = std::min(d.rows, d.cols);

    auto row_op = [&](long i, long k, const Int& q) {  // row_i -= q * row_k
        for (long j = 0; j < d.cols; ++j) d.at(i, j) -= q * d.at(k, j);
        for (long j = 0; j < res.u.cols; ++j) res.u.at(i, j) -= q * res.u.at(k, j);
    };
    auto col_op = [&](long j, long k, const Int& q) {  // col_j -= q * col_k
        for (long i = 0; i < d.rows; ++i) d.at(i, j) -= q * d.at(i, k);
        for (long i = 0; i < res.v.rows; ++i) res.v.at(i, j) -= q * res.v.at(i, k);
    };
    auto row_swap = [&](long i, long k) {
        for (long j = 0; j < d.cols; ++j) std::swap(d.at(i, j), d.at(k, j));
        for (long j = 0; j < res.u.cols; ++j) std::swap(res.u.at(i, j), res.u.at(k, j));
    };
    auto col_swap = [&](long j, long k) {
        for (long i = 0; i < d.rows; ++i) std::swap(d.at(i, j), d.at(i, k));
        for (long i = 0; i < res.v.rows; ++i) std::swap(res.v.at(i, j), res.v.at(i, k));
    };

    for (long t = 0; t < n; ++t) {
        // find a nonzero pivot
        long pi = -1, pj = -1;
        for (long i = t; i < d.rows && pi < 0; ++i)
            for (long j = t; j < d.cols; ++j)
                if (d.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);
        bool again = true;
        while (again) {
            again = false;
            for (long i = t + 1; i < d.rows; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = d.at(i, t) / d.at(t, t);
                row_op(i, t, q);
                if (d.at(i, t) != 0) {
                    row_swap(i, t);
                    again = true;
                }
            }
            for (long j = t + 1; j < d.cols; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = d.at(t, j) / d.at(t, t);
                col_op(j, t, q);
                if (d.at(t, j) != 0) {
                    col_swap(j, t);
                    again = true;
                }
            }
        }
        if (d.at(t, t) < 0) {
            for (long j = 0; j < d.cols; ++j) d.at(t, j) = -d.at(t, j);
            for (long j = 0; j < res.u.cols; ++j) res.u.at(t, j) = -res.u.at(t, j);
        }
    }
    // enforce divisibility chain d1 | d2 | ...
    for (long t = 0; t + 1 < n; ++t) {
        for (long s = t + 1; s < n; ++s) {
            if (d.at(t, t) == 0 && d.at(s, s) == 0) continue;
            if (d.at(s, s) % (d.at(t, t) == 0 ? Int(1) : d.at(t, t)) == 0 && d.at(t, t) != 0)
                continue;
            // fold d_ss into position (t,t) and redo the corner
            col_op(t, s, Int(-1));  // col_t += col_s
            bool again = true;
            while (again) {
                again = false;
                if (d.at(s, t) != 0) {
                    Int q = d.at(s, t) / d.at(t, t);
                    row_op(s, t, q);
                    if (d.at(s, t) != 0) {
                        row_swap(s, t);
                        again = true;
                    }
                }
                if (d.at(t, s) != 0) {
                    Int q = d.at(t, s) / d.at(t, t);
                    col_op(s, t, q);
                    if (d.at(t, s) != 0) {
                        col_swap(s, t);
                        again = true;
                    }
                }
            }
            if (d.at(t, t) < 0) {
                for (long j = 0; j < d.cols; ++j) d.at(t, j) = -d.at(t, j);
                for (long j = 0; j < res.u.cols; ++j) res.u.at(t, j) = -res.u.at(t, j);
            }
            if (d.at(s, s) < 0) {
                for (long j = 0; j < d.cols; ++j) d.at(s, j) = -d.at(s, j);
                for (long j = 0; j < res.u.cols; ++j) res.u.at(s, j) = -res.u.at(s, j);
            }
            s = t;  // re-check the whole chain against the new d_tt
        }
    }
    return res;
}

bool in_row_lattice(const IntMatrix& basis, const std::vector<Int>& v) {
    if ((long)v.size() != basis.cols) throw std::invalid_argument("in_row_lattice size");
    std::vector<Int> w = v;
    long row = 0;
    for (long c = 0; c < basis.cols; ++c) {
        if (row < basis.rows && basis.at(row, c) != 0) {
            if (w[c] % basis.at(row, c) != 0) return false;
            Int q = w[c] / basis.at(row, c);
            for (long j = c; j < basis.cols; ++j) w[j] -= q * basis.at(row, j);
            ++row;
        } else if (w[c] != 0) {
            return false;
        }
    }
    for (auto& x : w)
        if (x != 0) return false;
    return true;
}

bool GramMatrix::is_symmetric() const {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool GramMatrix::is_positive_definite() const {
    if (!is_symmetric()) return false;
    for (int k = 1; k <= 4; ++k) {
        IntMatrix m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m.at(i, j) = at(i, j);
        if (m.det() <= 0) return false;
    }
    return true;
}

std::vector<std::vector<Int>> enumerate_ellipsoid(const std::vector<std::vector<Rat>>& q_form,
                                                  const std::vector<Rat>& center,
                                                  const Rat& bound) {
    const size_t r = q_form.size();
    if (r == 0 || r > 8 || center.size() != r)
        throw std::invalid_argument("enumerate_ellipsoid shape");
    std::vector<std::vector<Int>> out;
    if (bound < 0) return out;

    // Fincke-Pohst quadratic completion: Q(y) = sum_i d_i (y_i + sum_{j>i} l_ij y_j)^2
    std::vector<std::vector<Rat>> q = q_form;
    for (size_t i = 0; i < r; ++i) {
        if (q[i][i] <= 0) throw std::invalid_argument("enumerate_ellipsoid: form not PD");
        for (size_t j = i + 1; j < r; ++j) {
            Rat t = q[i][j] / q[i][i];
            for (size_t k = j; k < r; ++k) q[j][k] -= t * q[i][k];
            q[i][j] = t;
        }
    }

    std::vector<Int> x(r);
    std::vector<Rat> rem(r + 1);  // remaining budget
    rem[r - 1] = bound;

    // recursive descent from the last coordinate
    auto rec = [&](auto&& self, long i) -> void {
        // offset_i = sum_{j>i} l_ij (x_j - c_j)
        Rat off = 0;
        for (size_t j = i + 1; j < r; ++j) off += q[i][j] * (Rat(x[j]) - center[j]);
        Rat radius2 = rem[i] / q[i][i];
        // x_i ranges over integers with (x_i - c_i + off)^2 <= radius2
        Rat mid = center[i] - off;
        Int lo = ceil_minus_sqrt(mid, radius2);
        Int hi = floor_plus_sqrt(mid, radius2);
        for (Int t = lo; t <= hi; ++t) {
            x[i] = t;
            Rat inner = Rat(t) - mid;
            Rat used = q[i][i] * inner * inner;
            if (used > rem[i]) continue;
            if (i == 0) {
                out.push_back(x);
            } else {
                rem[i - 1] = rem[i] - used;
                self(self, i - 1);
            }
        }
    };
    rec(rec, (long)r - 1);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Greedy pairwise (Lagrange-style) reduction of a Gram matrix; returns the
// unimodular transform u with g' = u g u^T.
void pairwise_reduce(std::array<std::array<Int, 4>, 4>& g, IntMatrix& u) {
    u = IntMatrix::identity(4);
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 64) {
        changed = false;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                // b_i -= m b_j with m = round(g_ij / g_jj)
                Int m = round_nearest(Rat(g[i][j]) / Rat(g[j][j]));
                if (m == 0) continue;
                Int new_norm = g[i][i] - 2 * m * g[i][j] + m * m * g[j][j];
                if (new_norm >= g[i][i]) continue;
                for (int c = 0; c < 4; ++c) u.at(i, c) -= m * u.at(j, c);
                for (int c = 0; c < 4; ++c) g[i][c] -= m * g[j][c];
                for (int c = 0; c < 4; ++c) g[c][i] -= m * g[c][j];
                changed = true;
            }
    }
}

}  // namespace

std::vector<std::array<Int, 4>> short_vectors(const GramMatrix& g, const Int& bound, bool half) {
    if (bound < 0) throw std::invalid_argument("short_vectors: bound < 0");
    if (!g.is_positive_definite()) throw std::invalid_argument("short_vectors: Gram not PD");

    std::array<std::array<Int, 4>, 4> gr;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gr[i][j] = g.at(i, j);
    IntMatrix u;
    pairwise_reduce(gr, u);

    std::vector<std::vector<Rat>> q(4, std::vector<Rat>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) q[i][j] = Rat(gr[i][j]) / 2;
    std::vector<Rat> c(4, Rat(0));
    auto raw = enumerate_ellipsoid(q, c, Rat(bound));

    std::vector<std::array<Int, 4>> out;
    out.reserve(raw.size());
    for (auto& v : raw) {
        // map back to the original basis: coords = v * u
        std::array<Int, 4> w{};
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) w[j] += v[i] * u.at(i, j);
        if (half) {
            int s = 0;
            for (int i = 0; i < 4 && s == 0; ++i) s = sgn(w[i]);
            if (s < 0) continue;
        }
        out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gz
