#pragma once

// Real symmetric banded matrices plus the LAPACK calls backing them:
// banded LU for shift-invert solves, dense symmetric eigensolves for
// small problems, and eigenvalue counting below a shift through a
// block-tridiagonal Schur-complement recursion (Haynsworth inertia
// additivity, Bunch-Kaufman factorizations per diagonal block).

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

extern "C" {
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab,
             const int* ldab, int* ipiv, int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku,
             const int* nrhs, const double* ab, const int* ldab, const int* ipiv,
             double* b, const int* ldb, int* info);
void dsyev_(const char* jobz, const char* uplo, const int* n, double* a,
            const int* lda, double* w, double* work, const int* lwork, int* info);
void dsytrf_(const char* uplo, const int* n, double* a, const int* lda, int* ipiv,
             double* work, const int* lwork, int* info);
void dsytrs_(const char* uplo, const int* n, const int* nrhs, const double* a,
             const int* lda, const int* ipiv, double* b, const int* ldb, int* info);
}

namespace sectordirac {

// Symmetric banded storage, LAPACK 'L' layout: entry (i, j) with
// j <= i <= j + kd lives at ab[j * (kd + 1) + (i - j)].
class BandedSymMatrix {
public:
    BandedSymMatrix(int n, int kd)
        : n_(n), kd_(kd), ab_(size_t(n) * (kd + 1), 0.0)
    {
        if (n < 1 || kd < 0) throw std::invalid_argument("BandedSymMatrix: bad shape");
    }

    int size() const { return n_; }
    int bandwidth() const { return kd_; }

    double at(int i, int j) const
    {
        if (i < j) std::swap(i, j);
        if (i - j > kd_) return 0.0;
        return ab_[size_t(j) * (kd_ + 1) + (i - j)];
    }

    void set(int i, int j, double v)
    {
        if (i < j) std::swap(i, j);
        if (i - j > kd_) throw std::out_of_range("BandedSymMatrix::set outside band");
        ab_[size_t(j) * (kd_ + 1) + (i - j)] = v;
    }

    void add(int i, int j, double v)
    {
        if (i < j) std::swap(i, j);
        if (i - j > kd_) throw std::out_of_range("BandedSymMatrix::add outside band");
        ab_[size_t(j) * (kd_ + 1) + (i - j)] += v;
    }

    void matvec(const std::vector<double>& x, std::vector<double>& y) const
    {
        y.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            const double xj = x[j];
            const int imax = std::min(n_ - 1, j + kd_);
            const double* col = &ab_[size_t(j) * (kd_ + 1)];
            y[j] += col[0] * xj;
            for (int i = j + 1; i <= imax; ++i) {
                const double v = col[i - j];
                y[i] += v * xj;
                y[j] += v * x[i];
            }
        }
    }

    std::vector<double> dense() const
    {
        std::vector<double> d(size_t(n_) * n_, 0.0);
        for (int j = 0; j < n_; ++j)
            for (int i = j; i <= std::min(n_ - 1, j + kd_); ++i) {
                d[size_t(i) * n_ + j] = at(i, j);
                d[size_t(j) * n_ + i] = at(i, j);
            }
        return d;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (double v : ab_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    int n_, kd_;
    std::vector<double> ab_;
};

// LU factorization of (M - shift I) in general band storage.
class BandLU {
public:
    BandLU(const BandedSymMatrix& m, double shift) : n_(m.size()), kl_(m.bandwidth()), ku_(m.bandwidth())
    {
        const int ldab = 2 * kl_ + ku_ + 1;
        lu_.assign(size_t(ldab) * n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            for (int i = std::max(0, j - ku_); i <= std::min(n_ - 1, j + kl_); ++i) {
                double v = m.at(i, j);
                if (i == j) v -= shift;
                lu_[size_t(j) * ldab + (kl_ + ku_ + i - j)] = v;
            }
        }
        ipiv_.assign(n_, 0);
        int info = 0;
        dgbtrf_(&n_, &n_, &kl_, &ku_, lu_.data(), &ldab, ipiv_.data(), &info);
        singular_ = info != 0;
    }

    bool singular() const { return singular_; }

    void solve(std::vector<double>& x) const
    {
        if (singular_) throw std::runtime_error("BandLU: factorization is singular");
        const char trans = 'N';
        const int nrhs = 1, ldab = 2 * kl_ + ku_ + 1;
        int info = 0;
        dgbtrs_(&trans, &n_, &kl_, &ku_, &nrhs, lu_.data(), &ldab, ipiv_.data(),
                x.data(), &n_, &info);
        if (info != 0) throw std::runtime_error("BandLU: solve failed");
    }

private:
    int n_, kl_, ku_;
    std::vector<double> lu_;
    std::vector<int> ipiv_;
    bool singular_ = false;
};

// Eigen-decomposition of a dense symmetric matrix (column-major input,
// destroyed; eigenvectors returned in-place when requested).
inline void dense_sym_eig(std::vector<double>& a, int n, std::vector<double>& w,
                          bool vectors)
{
    w.assign(n, 0.0);
    const char jobz = vectors ? 'V' : 'N';
    const char uplo = 'L';
    int lwork = -1, info = 0;
    double wk = 0.0;
    dsyev_(&jobz, &uplo, &n, a.data(), &n, w.data(), &wk, &lwork, &info);
    lwork = int(wk);
    std::vector<double> work(lwork);
    dsyev_(&jobz, &uplo, &n, a.data(), &n, w.data(), work.data(), &lwork, &info);
    if (info != 0) throw std::runtime_error("dsyev failed");
}

namespace detail {

// Inertia (negative-eigenvalue count) of a dense symmetric matrix after
// an in-place Bunch-Kaufman factorization.  Returns -1 on breakdown.
inline int dense_inertia_neg(std::vector<double>& a, int n,
                             std::vector<int>& ipiv)
{
    ipiv.assign(n, 0);
    const char uplo = 'L';
    int lwork = std::max(64 * n, 1), info = 0;
    std::vector<double> work(lwork);
    dsytrf_(&uplo, &n, a.data(), &n, ipiv.data(), work.data(), &lwork, &info);
    if (info != 0) return -1;
    int neg = 0;
    for (int k = 0; k < n;) {
        if (ipiv[k] > 0) {
            const double d = a[size_t(k) * n + k];
            if (d == 0.0) return -1;
            if (d < 0.0) ++neg;
            ++k;
        } else {
            const double d1 = a[size_t(k) * n + k];
            const double d2 = a[size_t(k + 1) * n + (k + 1)];
            const double e = a[size_t(k) * n + (k + 1)];
            const double det = d1 * d2 - e * e;
            if (det < 0.0)
                ++neg;  // one negative, one positive
            else if (d1 + d2 < 0.0)
                neg += 2;
            k += 2;
        }
    }
    return neg;
}

}  // namespace detail

// Number of eigenvalues of M strictly below x.  The band is treated as a
// block tridiagonal matrix with blocks of the bandwidth size; block
// Schur complements accumulate the inertia.  Near-singular pivots are
// dodged by re-running at a jittered shift.
inline int count_eigenvalues_below(const BandedSymMatrix& m, double x)
{
    const int n = m.size();
    const int b = std::max(1, m.bandwidth());
    const double scale = std::max(m.max_abs(), std::abs(x)) + 1.0;

    for (int attempt = 0; attempt < 8; ++attempt) {
        const double xs = x + attempt * 3.1e-13 * scale;
        int neg = 0;
        bool failed = false;

        std::vector<double> d;       // current diagonal block (factored in place)
        std::vector<double> coupling;  // B_j, rows = next block, cols = current
        std::vector<int> ipiv;
        int pos = 0;
        int bs = std::min(b, n - pos);
        d.assign(size_t(bs) * bs, 0.0);
        for (int j = 0; j < bs; ++j)
            for (int i = j; i < bs; ++i) {
                const double v = m.at(pos + i, pos + j) - (i == j ? xs : 0.0);
                d[size_t(j) * bs + i] = v;
            }

        while (true) {
            const int next = pos + bs;
            const int bs_next = std::min(b, n - next);

            std::vector<double> dcopy;
            if (bs_next > 0) dcopy = d;  // dsytrf destroys d; keep for the solve

            const int local_neg = detail::dense_inertia_neg(d, bs, ipiv);
            if (local_neg < 0) { failed = true; break; }
            neg += local_neg;
            if (bs_next == 0) break;

            // coupling block B: (bs_next x bs), entries m(next + i, pos + j)
            coupling.assign(size_t(bs) * bs_next, 0.0);  // stored as B^T, col-major bs x bs_next
            for (int j = 0; j < bs_next; ++j)
                for (int i = 0; i < bs; ++i)
                    coupling[size_t(j) * bs + i] = m.at(next + j, pos + i);

            // solve D * Y = B^T, then Schur complement A_next - B Y
            {
                const char uplo = 'L';
                int info = 0;
                dsytrs_(&uplo, &bs, &bs_next, d.data(), &bs, ipiv.data(),
                        coupling.data(), &bs, &info);
                if (info != 0) { failed = true; break; }
            }
            std::vector<double> d_next(size_t(bs_next) * bs_next, 0.0);
            for (int j = 0; j < bs_next; ++j)
                for (int i = j; i < bs_next; ++i) {
                    double v = m.at(next + i, next + j) - (i == j ? xs : 0.0);
                    // subtract B (row i) . Y (col j); B row i = dcopy-free form
                    double s = 0.0;
                    for (int k = 0; k < bs; ++k)
                        s += m.at(next + i, pos + k) * coupling[size_t(j) * bs + k];
                    d_next[size_t(j) * bs_next + i] = v - s;
                }
            d.swap(d_next);
            pos = next;
            bs = bs_next;
        }

        if (!failed) return neg;
    }
    throw std::runtime_error("count_eigenvalues_below: repeated factorization breakdown");
}

inline int count_eigenvalues_in(const BandedSymMatrix& m, double lo, double hi)
{
    if (!(lo <= hi)) throw std::invalid_argument("count_eigenvalues_in: bad window");
    return count_eigenvalues_below(m, hi) - count_eigenvalues_below(m, lo);
}

}  // namespace sectordirac
