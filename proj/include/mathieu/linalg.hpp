// Small dense and tridiagonal linear algebra over Complex<R>.
#pragma once

#include "mathieu/complex.hpp"
#include "mathieu/eigenclass.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/precision.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace mathieu {



template <class R>
struct TridiagonalOperator {
    std::vector<Complex<R>> diag;
    std::vector<Complex<R>> offdiag;  // symmetric: one off-diagonal stored
    std::optional<EigenClass> class_tag;

    int dim() const { return static_cast<int>(diag.size()); }

    std::vector<Complex<R>> apply(const std::vector<Complex<R>>& x) const {
        int n = dim();
        std::vector<Complex<R>> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Complex<R> s = diag[i] * x[i];
            if (i > 0) s += offdiag[i - 1] * x[i - 1];
            if (i + 1 < n) s += offdiag[i] * x[i + 1];
            y[i] = s;
        }
        return y;
    }

    R norm_inf() const {
        R m = 0;
        int n = dim();
        for (int i = 0; i < n; ++i) {
            R s = abs(diag[i]);
            if (i > 0) s += abs(offdiag[i - 1]);
            if (i + 1 < n) s += abs(offdiag[i]);
            if (s > m) m = s;
        }
        return m;
    }

    bool is_real() const {
        for (auto& d : diag) if (d.im != R(0)) return false;
        for (auto& e : offdiag) if (e.im != R(0)) return false;
        return true;
    }
};

template <class R>
struct EigenPair {
    Complex<R> value;
    std::vector<Complex<R>> vector;
};

template <class R>
R norm2(const std::vector<Complex<R>>& v) {
    using std::sqrt;
    R s = 0;
    for (auto& x : v) s += norm(x);
    return sqrt(s);
}

// Sum of x_i y_i without conjugation.
template <class R>
Complex<R> dot_bilinear(const std::vector<Complex<R>>& x, const std::vector<Complex<R>>& y) {
    Complex<R> s(R(0));
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) s += x[i] * y[i];
    return s;
}

// Sum of conj(x_i) y_i.
template <class R>
Complex<R> dot_hermitian(const std::vector<Complex<R>>& x, const std::vector<Complex<R>>& y) {
    Complex<R> s(R(0));
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) s += conj(x[i]) * y[i];
    return s;
}

namespace linalg_detail {

// Solve (T - shift I) x = b for tridiagonal T by Gaussian elimination with
// partial pivoting (a second superdiagonal appears from row swaps).
template <class R>
std::vector<Complex<R>> tridiag_solve(const TridiagonalOperator<R>& T, const Complex<R>& shift,
                                      std::vector<Complex<R>> b, const R& pivot_floor) {
    using C = Complex<R>;
    int n = T.dim();
    std::vector<C> d(n), du(n, C(R(0))), du2(n, C(R(0))), dl(n, C(R(0)));
    for (int i = 0; i < n; ++i) d[i] = T.diag[i] - shift;
    for (int i = 0; i + 1 < n; ++i) {
        du[i] = T.offdiag[i];
        dl[i] = T.offdiag[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (abs(dl[i]) > abs(d[i])) {
            // swap rows i and i+1
            std::swap(d[i], dl[i]);
            C t = du[i];
            du[i] = d[i + 1];
            d[i + 1] = t;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = C(R(0));
            }
            std::swap(b[i], b[i + 1]);
            // after the swap the old diagonal sits in dl[i]
            C f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            if (i + 2 < n) du[i + 1] -= f * du2[i];
            b[i + 1] -= f * b[i];
        } else {
            if (abs(d[i]) < pivot_floor) d[i] = C(pivot_floor);
            C f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            b[i + 1] -= f * b[i];
        }
    }
    if (abs(d[n - 1]) < pivot_floor) d[n - 1] = C(pivot_floor);
    std::vector<C> x(n);
    for (int i = n - 1; i >= 0; --i) {
        C s = b[i];
        if (i + 1 < n) s -= du[i] * x[i + 1];
        if (i + 2 < n) s -= du2[i] * x[i + 2];
        x[i] = s / d[i];
    }
    return x;
}

template <class R>
void normalize_phase(std::vector<Complex<R>>& v) {
    R nrm = norm2(v);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (abs(v[i]) > abs(v[imax])) imax = i;
    Complex<R> ph = v[imax] / abs(v[imax]);
    Complex<R> f = conj(ph) / nrm;
    for (auto& x : v) x = x * f;
}

// Implicit QL for real symmetric tridiagonal matrices, with eigenvectors.
template <class R>
void tql2(std::vector<R>& d, std::vector<R> e, std::vector<std::vector<R>>& z) {
    using std::abs;
    using std::sqrt;
    int n = static_cast<int>(d.size());
    z.assign(n, std::vector<R>(n, R(0)));
    for (int i = 0; i < n; ++i) z[i][i] = 1;
    e.push_back(R(0));
    R eps = RealTraits<R>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                R dd = abs(d[m]) + abs(d[m + 1]);
                if (abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (++iter > 60) throw ConvergenceError("tridiag_eigen: QL did not converge at index " + std::to_string(l));
                R g = (d[l + 1] - d[l]) / (R(2) * e[l]);
                R r = sqrt(g * g + R(1));
                g = d[m] - d[l] + e[l] / (g + (g >= R(0) ? r : -r));
                R s = 1, c = 1, p = 0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    R f = s * e[i], b = c * e[i];
                    r = sqrt(f * f + g * g);
                    e[i + 1] = r;
                    if (r == R(0)) {
                        d[i + 1] -= p;
                        e[m] = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + R(2) * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z[k][i + 1];
                        z[k][i + 1] = s * z[k][i] + c * f;
                        z[k][i] = c * z[k][i] - s * f;
                    }
                }
                if (r == R(0) && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0;
            }
        } while (m != l);
    }
}

// Eigenvalues of a complex upper Hessenberg matrix by single-shift QR with
// unitary Givens rotations (Wilkinson shifts, exceptional shifts on stalls).
template <class R>
std::vector<Complex<R>> hessenberg_qr_eigenvalues(std::vector<std::vector<Complex<R>>> H) {
    using C = Complex<R>;
    using std::sqrt;
    int n = static_cast<int>(H.size());
    std::vector<C> ev(n);
    R eps = RealTraits<R>::epsilon();
    int hi = n - 1;
    int iter = 0, total = 0;
    while (hi >= 0) {
        if (hi == 0) {
            ev[0] = H[0][0];
            break;
        }
        int lo = hi;
        while (lo > 0) {
            R s = abs(H[lo][lo]) + abs(H[lo - 1][lo - 1]);
            if (abs(H[lo][lo - 1]) <= eps * s) {
                H[lo][lo - 1] = C(R(0));
                break;
            }
            --lo;
        }
        if (lo == hi) {
            ev[hi] = H[hi][hi];
            --hi;
            iter = 0;
            continue;
        }
        if (++total > 60 * n) throw ConvergenceError("tridiag_eigen: QR did not converge at index " + std::to_string(hi));
        ++iter;
        // Wilkinson shift from the trailing 2x2 block
        C a = H[hi - 1][hi - 1], b = H[hi - 1][hi], c = H[hi][hi - 1], d = H[hi][hi];
        C tr = a + d, det = a * d - b * c;
        C disc = sqrt(tr * tr - C(R(4)) * det);
        C l1 = (tr + disc) / R(2), l2 = (tr - disc) / R(2);
        C shift = abs(l1 - d) < abs(l2 - d) ? l1 : l2;
        if (iter % 11 == 10) shift = d + C(abs(H[hi][hi - 1]) * R(0.75), abs(H[hi][hi - 1]) * R(0.25));
        for (int i = lo; i <= hi; ++i) H[i][i] -= shift;
        std::vector<C> cs(hi - lo), sn(hi - lo);
        for (int k = lo; k < hi; ++k) {
            C x = H[k][k], y = H[k + 1][k];
            R r = sqrt(norm(x) + norm(y));
            C cc = r == R(0) ? C(R(1)) : x / r, ss = r == R(0) ? C(R(0)) : y / r;
            cs[k - lo] = cc;
            sn[k - lo] = ss;
            for (int j = k; j < n; ++j) {
                C t1 = H[k][j], t2 = H[k + 1][j];
                H[k][j] = conj(cc) * t1 + conj(ss) * t2;
                H[k + 1][j] = cc * t2 - ss * t1;
            }
        }
        for (int k = lo; k < hi; ++k) {
            C cc = cs[k - lo], ss = sn[k - lo];
            int top = std::min(k + 2, hi);
            for (int i = 0; i <= top; ++i) {
                C t1 = H[i][k], t2 = H[i][k + 1];
                H[i][k] = t1 * cc + t2 * ss;
                H[i][k + 1] = t2 * conj(cc) - t1 * conj(ss);
            }
        }
        for (int i = lo; i <= hi; ++i) H[i][i] += shift;
    }
    return ev;
}

}  // namespace linalg_detail

// Eigenpairs of a complex-symmetric tridiagonal operator. Real input is
// handled by symmetric QL and returned ascending; complex input by unitary QR
// plus inverse iteration, ordered by real part. Eigenvectors have unit
// 2-norm with the largest entry real and positive.
template <class R>
std::vector<EigenPair<R>> tridiag_eigen(const TridiagonalOperator<R>& M, int count, const PrecisionContext& ctx) {
    using C = Complex<R>;
    int n = M.dim();
    if (n < 1) throw DomainError("tridiag_eigen: empty operator");
    if (count > n || count < 0) throw DomainError("tridiag_eigen: count exceeds dimension");
    std::vector<EigenPair<R>> out;
    if (M.is_real()) {
        std::vector<R> d(n), e(n > 0 ? n - 1 : 0);
        for (int i = 0; i < n; ++i) d[i] = M.diag[i].re;
        for (int i = 0; i + 1 < n; ++i) e[i] = M.offdiag[i].re;
        std::vector<std::vector<R>> z;
        linalg_detail::tql2(d, e, z);
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
        for (int k = 0; k < count; ++k) {
            int j = idx[k];
            EigenPair<R> p;
            p.value = C(d[j]);
            p.vector.resize(n);
            for (int i = 0; i < n; ++i) p.vector[i] = C(z[i][j]);
            linalg_detail::normalize_phase(p.vector);
            out.push_back(std::move(p));
        }
        return out;
    }
    std::vector<std::vector<C>> H(n, std::vector<C>(n, C(R(0))));
    for (int i = 0; i < n; ++i) {
        H[i][i] = M.diag[i];
        if (i + 1 < n) H[i][i + 1] = H[i + 1][i] = M.offdiag[i];
    }
    std::vector<C> ev = linalg_detail::hessenberg_qr_eigenvalues(H);
    std::sort(ev.begin(), ev.end(), [](const C& a, const C& b) {
        return a.re < b.re || (a.re == b.re && a.im < b.im);
    });
    R nrm = M.norm_inf();
    R eps = RealTraits<R>::epsilon();
    for (int k = 0; k < count; ++k) {
        EigenPair<R> p;
        p.value = ev[k];
        std::vector<C> v(n);
        for (int i = 0; i < n; ++i) v[i] = C(R(1) + R(i % 7) / R(13), R(i % 5) / R(17));
        C shift = ev[k] + C(nrm * eps * R(8), nrm * eps * R(3));
        for (int it = 0; it < 3; ++it) {
            v = linalg_detail::tridiag_solve(M, shift, v, nrm * eps);
            linalg_detail::normalize_phase(v);
        }
        p.vector = std::move(v);
        out.push_back(std::move(p));
    }
    return out;
}

// One-sided Jacobi SVD of a dense complex matrix: A = U diag(s) V^H.
template <class R>
void svd_jacobi(std::vector<std::vector<Complex<R>>> A, std::vector<std::vector<Complex<R>>>& U,
                std::vector<R>& s, std::vector<std::vector<Complex<R>>>& V) {
    using C = Complex<R>;
    using std::sqrt;
    using std::abs;
    int m = static_cast<int>(A.size());
    int n = m ? static_cast<int>(A[0].size()) : 0;
    // work on columns
    std::vector<std::vector<C>> a(n, std::vector<C>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a[j][i] = A[i][j];
    V.assign(n, std::vector<C>(n, C(R(0))));
    std::vector<std::vector<C>> v(n, std::vector<C>(n, C(R(0))));
    for (int j = 0; j < n; ++j) v[j][j] = C(R(1));
    R eps = RealTraits<R>::epsilon();
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                R alpha = 0, beta = 0;
                C gamma(R(0));
                for (int k = 0; k < m; ++k) {
                    alpha += norm(a[i][k]);
                    beta += norm(a[j][k]);
                    gamma += conj(a[i][k]) * a[j][k];
                }
                R ag = abs(gamma);
                if (ag == R(0) || ag <= eps * sqrt(alpha * beta)) continue;
                rotated = true;
                C g = gamma / ag;
                R zeta = (alpha - beta) / (R(2) * ag);
                R t = (zeta >= R(0) ? R(-1) : R(1)) / (abs(zeta) + sqrt(R(1) + zeta * zeta));
                R c = R(1) / sqrt(R(1) + t * t);
                R sn = c * t;
                C gc = conj(g);
                // scale column j by conj(g) then rotate
                for (int k = 0; k < m; ++k) {
                    C ai = a[i][k], bj = a[j][k] * gc;
                    a[i][k] = ai * c - bj * sn;
                    a[j][k] = ai * sn + bj * c;
                }
                for (int k = 0; k < n; ++k) {
                    C vi = v[i][k], vj = v[j][k] * gc;
                    v[i][k] = vi * c - vj * sn;
                    v[j][k] = vi * sn + vj * c;
                }
            }
        }
        if (!rotated) break;
    }
    s.assign(n, R(0));
    U.assign(m, std::vector<C>(n, C(R(0))));
    for (int j = 0; j < n; ++j) {
        R sj = 0;
        for (int k = 0; k < m; ++k) sj += norm(a[j][k]);
        sj = sqrt(sj);
        s[j] = sj;
        for (int k = 0; k < m; ++k) U[k][j] = sj > R(0) ? a[j][k] / sj : C(R(0));
        for (int k = 0; k < n; ++k) V[k][j] = v[j][k];
    }
}

// Minimal-norm solution of M x = rhs through the SVD, dropping singular
// values below dim * trim * sigma_max.
template <class R>
std::vector<Complex<R>> solve_singular_dense(const std::vector<std::vector<Complex<R>>>& A,
                                             const std::vector<Complex<R>>& rhs, const PrecisionContext& ctx) {
    using C = Complex<R>;
    int n = static_cast<int>(A.size());
    if (static_cast<int>(rhs.size()) != n) throw DomainError("solve_singular: dimension mismatch");
    std::vector<std::vector<C>> U, V;
    std::vector<R> s;
    svd_jacobi(A, U, s, V);
    R smax = 0;
    for (auto& x : s) if (x > smax) smax = x;
    R cut = R(n) * R(ctx.trim) * smax;
    std::vector<C> x(n, C(R(0)));
    for (int j = 0; j < n; ++j) {
        if (!(s[j] > cut) || s[j] == R(0)) continue;
        C c(R(0));
        for (int k = 0; k < n; ++k) c += conj(U[k][j]) * rhs[k];
        c = c / s[j];
        for (int k = 0; k < n; ++k) x[k] += V[k][j] * c;
    }
    R rn = norm2(rhs);
    std::vector<C> r(n);
    for (int i = 0; i < n; ++i) {
        C acc(R(0));
        for (int k = 0; k < n; ++k) acc += A[i][k] * x[k];
        r[i] = acc - rhs[i];
    }
    if (norm2(r) > R(ctx.tol) * rn)
        throw RangeError("solve_singular: right-hand side is not in the range of the operator");
    return x;
}

template <class R>
std::vector<Complex<R>> solve_singular_tridiagonal(const TridiagonalOperator<R>& M, const std::vector<Complex<R>>& rhs,
                                                   const PrecisionContext& ctx) {
    using C = Complex<R>;
    int n = M.dim();
    std::vector<std::vector<C>> A(n, std::vector<C>(n, C(R(0))));
    for (int i = 0; i < n; ++i) {
        A[i][i] = M.diag[i];
        if (i + 1 < n) A[i][i + 1] = A[i + 1][i] = M.offdiag[i];
    }
    return solve_singular_dense(A, rhs, ctx);
}

}  // namespace mathieu
