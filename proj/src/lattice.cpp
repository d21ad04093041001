#include "aglat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aglat/errors.hpp"

namespace aglat {

void LatticeBasis::validate() const {
    if (rows.empty()) throw std::domain_error("basis: no rows");
    std::size_t width = rows[0].size();
    if (width == 0) throw std::domain_error("basis: empty rows");
    for (const auto& row : rows)
        if (row.size() != width) throw std::domain_error("basis: inconsistent row widths");
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.size() != b.size()) throw std::domain_error("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int norm_sq(const std::vector<Int>& v) { return dot(v, v); }

Int norm_inf(const std::vector<Int>& v) {
    Int m = 0;
    for (const auto& e : v) {
        Int a = abs(e);
        if (a > m) m = a;
    }
    return m;
}

IntMat mat_mul_int(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat out(n, std::vector<Int>(m, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw std::domain_error("mat_mul_int: shape mismatch");
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    }
    return out;
}

GsoResult gram_schmidt(const LatticeBasis& basis) {
    basis.validate();
    std::size_t n = basis.n(), m = basis.m();
    GsoResult g;
    g.norms_sq.resize(n);
    g.mu.resize(n);
    std::vector<std::vector<Rat>> star(n, std::vector<Rat>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) star[i][j] = Rat(basis.rows[i][j]);
        g.mu[i].resize(i);
        for (std::size_t j = 0; j < i; ++j) {
            Rat num = 0;
            for (std::size_t l = 0; l < m; ++l) num += Rat(basis.rows[i][l]) * star[j][l];
            Rat mu = num / g.norms_sq[j];
            g.mu[i][j] = mu;
            for (std::size_t l = 0; l < m; ++l) star[i][l] -= mu * star[j][l];
        }
        Rat ns = 0;
        for (std::size_t l = 0; l < m; ++l) ns += star[i][l] * star[i][l];
        if (ns == 0)
            throw DegenerateBasisError(i, "gram_schmidt: row " + std::to_string(i) +
                                              " is dependent on earlier rows");
        g.norms_sq[i] = ns;
    }
    return g;
}

bool is_lll_reduced(const LatticeBasis& basis, const Rat& delta) {
    if (delta <= Rat(1, 4) || delta >= 1)
        throw std::domain_error("is_lll_reduced: delta must lie in (1/4, 1)");
    GsoResult g = gram_schmidt(basis);
    Rat half(1, 2);
    for (std::size_t i = 0; i < basis.n(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (abs(g.mu[i][j]) > half) return false;
    for (std::size_t k = 1; k < basis.n(); ++k) {
        // delta*||b*_{k-1}||^2 <= ||b*_k||^2 + mu^2*||b*_{k-1}||^2
        Rat lhs = delta * g.norms_sq[k - 1];
        Rat rhs = g.norms_sq[k] + g.mu[k][k - 1] * g.mu[k][k - 1] * g.norms_sq[k - 1];
        if (lhs > rhs) return false;
    }
    return true;
}

namespace {

// Round to nearest integer of lam/d (d > 0), halves away from zero.
Int round_ratio(const Int& lam, const Int& d) {
    Int two_abs = 2 * abs(lam);
    Int q = (two_abs + d) / (2 * d);
    return lam < 0 ? Int(-q) : q;
}

// All-integer LLL state: d[0..n] are the Gram subdeterminants (d[0] = 1),
// lam[i][j] = d[j] * mu_{i,j} for 1 <= j < i <= n (1-based indices).
struct IntegralLll {
    std::size_t n;
    IntMat b;      // working rows (0-based storage)
    IntMat u;      // transform rows
    std::vector<Int> d;
    IntMat lam;
    long swaps = 0;
    long size_reds = 0;

    explicit IntegralLll(const LatticeBasis& basis)
        : n(basis.n()), b(basis.rows), d(n + 1), lam(n + 1, std::vector<Int>(n + 1, 0)) {
        u.assign(n, std::vector<Int>(n, 0));
        for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
        d[0] = 1;
    }

    std::vector<Int>& row(std::size_t i) { return b[i - 1]; }      // 1-based views
    std::vector<Int>& urow(std::size_t i) { return u[i - 1]; }

    // Fraction-free Gram-Schmidt row k: fills lam[k][1..k-1] and d[k].
    void gso_row(std::size_t k) {
        for (std::size_t j = 1; j <= k; ++j) {
            Int t = dot(row(k), row(j));
            for (std::size_t i = 1; i < j; ++i)
                t = (d[i] * t - lam[k][i] * lam[j][i]) / d[i - 1];
            if (j < k) {
                lam[k][j] = t;
            } else {
                if (t == 0)
                    throw DegenerateBasisError(k - 1, "lll_reduce: row " + std::to_string(k - 1) +
                                                          " is dependent on earlier rows");
                d[k] = t;
            }
        }
    }

    void reduce(std::size_t k, std::size_t l) {
        if (2 * abs(lam[k][l]) <= d[l]) return;
        Int q = round_ratio(lam[k][l], d[l]);
        auto& bk = row(k);
        auto& bl = row(l);
        for (std::size_t j = 0; j < bk.size(); ++j) bk[j] -= q * bl[j];
        auto& uk = urow(k);
        auto& ul = urow(l);
        for (std::size_t j = 0; j < n; ++j) uk[j] -= q * ul[j];
        lam[k][l] -= q * d[l];
        for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
        ++size_reds;
    }

    void swap_step(std::size_t k, std::size_t kmax) {
        std::swap(row(k), row(k - 1));
        std::swap(urow(k), urow(k - 1));
        for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Int lam_bar = lam[k][k - 1];
        Int B = (d[k - 2] * d[k] + lam_bar * lam_bar) / d[k - 1];
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            Int t = lam[i][k];
            lam[i][k] = (d[k] * lam[i][k - 1] - lam_bar * t) / d[k - 1];
            lam[i][k - 1] = (B * t + lam_bar * lam[i][k]) / d[k];
        }
        d[k - 1] = B;
        ++swaps;
    }

    void run(const Rat& delta) {
        const Int& num = delta.get_num();
        const Int& den = delta.get_den();
        if (n == 0) return;
        gso_row(1); // validates the first row is nonzero
        std::size_t k = 2, kmax = 1;
        while (k <= n) {
            if (k > kmax) {
                kmax = k;
                gso_row(k);
            }
            reduce(k, k - 1);
            // Lovasz with delta = num/den:
            // den*(d[k]*d[k-2] + lam^2) >= num*d[k-1]^2
            Int lhs = den * (d[k] * d[k - 2] + lam[k][k - 1] * lam[k][k - 1]);
            Int rhs = num * d[k - 1] * d[k - 1];
            if (lhs < rhs) {
                swap_step(k, kmax);
                k = (k > 2) ? k - 1 : 2;
            } else {
                for (std::size_t l = k - 2; l >= 1; --l) reduce(k, l);
                ++k;
            }
        }
    }
};

} // namespace

ReductionOutcome lll_reduce(const LatticeBasis& basis, const Rat& delta) {
    basis.validate();
    if (delta <= Rat(1, 4) || delta >= 1)
        throw std::domain_error("lll_reduce: delta must lie in (1/4, 1)");
    IntegralLll state(basis);
    state.run(delta);
    ReductionOutcome out;
    out.basis.rows = std::move(state.b);
    out.transform = std::move(state.u);
    out.swaps = state.swaps;
    out.size_reductions = state.size_reds;
    out.delta = delta;
    return out;
}

namespace {

struct EnumState {
    const IntMat& rows;
    std::size_t n, m;
    long bound;
    // double GSO for pruning
    std::vector<double> star_norm;
    std::vector<std::vector<double>> mu;
    std::vector<long> cur, best_coeffs;
    Int best_norm;
    double best_norm_d;
    bool found = false;

    EnumState(const IntMat& r, std::size_t n_, std::size_t m_, long b)
        : rows(r), n(n_), m(m_), bound(b), cur(n_, 0) {}

    Int exact_norm(const std::vector<long>& z) const {
        Int s = 0;
        for (std::size_t j = 0; j < m; ++j) {
            Int e = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (z[i] != 0) e += z[i] * rows[i][j];
            s += e * e;
        }
        return s;
    }

    void consider(const std::vector<long>& z) {
        bool all_zero = true;
        for (long v : z)
            if (v != 0) { all_zero = false; break; }
        if (all_zero) return;
        Int nrm = exact_norm(z);
        if (nrm == 0) return; // cannot happen for independent rows, kept for safety
        if (!found || nrm < best_norm) {
            found = true;
            best_norm = nrm;
            best_coeffs = z;
            best_norm_d = best_norm.get_d();
        }
    }

    // Depth-first over levels i = n-1 .. 0 in Gram-Schmidt coordinates;
    // partial holds the cost of the already-fixed levels.
    void dfs(std::size_t level, double partial) {
        double limit = found ? best_norm_d * (1.0 + 1e-9) + 1e-9
                             : std::numeric_limits<double>::infinity();
        if (partial > limit) return;
        std::size_t i = level - 1;
        double center = 0; // -sum_{j>i} z_j mu_{j,i}
        for (std::size_t j = level; j < n; ++j) center -= cur[j] * mu[j][i];
        for (long z = -bound; z <= bound; ++z) {
            double diff = z - center;
            double cost = partial + diff * diff * star_norm[i];
            if (cost > limit) continue;
            cur[i] = z;
            if (i == 0)
                consider(cur);
            else
                dfs(level - 1, cost);
            limit = found ? best_norm_d * (1.0 + 1e-9) + 1e-9 : limit;
        }
        cur[i] = 0;
    }
};

} // namespace

EnumResult enumerate_shortest(const LatticeBasis& basis, long coeff_bound) {
    basis.validate();
    std::size_t n = basis.n();
    if (coeff_bound < 1) throw std::domain_error("enumerate_shortest: bound must be >= 1");
    if (n > 8 || std::pow(static_cast<double>(coeff_bound), static_cast<double>(n)) > 1e8)
        throw GuardError("enumerate_shortest: refused (n <= 8 and bound^n <= 1e8 required)");

    GsoResult g = gram_schmidt(basis); // also rejects dependent rows
    EnumState st(basis.rows, n, basis.m(), coeff_bound);
    st.star_norm.resize(n);
    st.mu.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        st.star_norm[i] = g.norms_sq[i].get_d();
        for (std::size_t j = 0; j < i; ++j) st.mu[i][j] = g.mu[i][j].get_d();
    }

    // Seed with the first basis row so pruning bites from the start.
    std::vector<long> seed(n, 0);
    seed[0] = 1;
    st.consider(seed);

    st.dfs(n, 0.0);

    EnumResult res;
    res.coeffs = st.best_coeffs;
    res.norm_sq = st.best_norm;
    res.vec.assign(basis.m(), 0);
    for (std::size_t j = 0; j < basis.m(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (res.coeffs[i] != 0) res.vec[j] += res.coeffs[i] * basis.rows[i][j];
    // canonical sign: first nonzero entry positive
    for (const auto& e : res.vec) {
        if (e == 0) continue;
        if (e < 0) {
            for (auto& v : res.vec) v = -v;
            for (auto& z : res.coeffs) z = -z;
        }
        break;
    }
    return res;
}

Int bareiss_det(const IntMat& input) {
    std::size_t n = input.size();
    if (n == 0) throw std::domain_error("bareiss_det: empty matrix");
    for (const auto& row : input)
        if (row.size() != n) throw std::domain_error("bareiss_det: matrix must be square");
    IntMat a = input;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

VolumeResult volume(const LatticeBasis& basis) {
    basis.validate();
    std::size_t n = basis.n();
    IntMat gram(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            gram[i][j] = dot(basis.rows[i], basis.rows[j]);
            gram[j][i] = gram[i][j];
        }
    VolumeResult res;
    res.gram_det = bareiss_det(gram);
    if (res.gram_det == 0) gram_schmidt(basis); // throws with the offending row
    if (mpz_perfect_square_p(res.gram_det.get_mpz_t())) {
        res.is_square = true;
        mpz_sqrt(res.root.get_mpz_t(), res.gram_det.get_mpz_t());
    }
    return res;
}

LatticeBasis random_basis(std::size_t n, std::size_t m, long entry_bits, Rng& rng) {
    if (n == 0 || m < n) throw std::domain_error("random_basis: need 1 <= n <= m");
    LatticeBasis basis;
    while (true) {
        basis.rows.assign(n, std::vector<Int>(m));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                Int v = rng.bits(entry_bits);
                basis.rows[i][j] = rng.coin() ? v : Int(-v);
            }
        try {
            gram_schmidt(basis);
            return basis;
        } catch (const DegenerateBasisError&) {
            continue; // vanishing probability; resample
        }
    }
}

} // namespace aglat
