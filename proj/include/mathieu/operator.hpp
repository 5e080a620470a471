// The four truncated tridiagonal eigenproblems and labeled eigenvalue lists.
#pragma once

#include "mathieu/contfrac.hpp"
#include "mathieu/eigenclass.hpp"
#include "mathieu/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mathieu {

template <class R>
TridiagonalOperator<R> build_matrix(EigenClass cls, const Complex<R>& q, int N) {
    using C = Complex<R>;
    using std::sqrt;
    if (N < 2) throw DomainError("build_matrix: N must be >= 2");
    TridiagonalOperator<R> M;
    M.class_tag = cls;
    M.diag.resize(N);
    M.offdiag.assign(N - 1, q);
    for (int k = 0; k < N; ++k) {
        R n = R(harmonic(cls, k));
        M.diag[k] = C(n * n);
    }
    if (cls == EigenClass::CE_EVEN) M.offdiag[0] = q * sqrt(R(2));
    if (cls == EigenClass::CE_ODD) M.diag[0] = M.diag[0] + q;
    if (cls == EigenClass::SE_ODD) M.diag[0] = M.diag[0] - q;
    return M;
}

// N >= m/2 + 3 + ceil(1.6 sqrt|q|), plus a little more above double precision.
template <class R>
int truncation_dimension(int order, const Complex<R>& q, const PrecisionContext& ctx) {
    double aq = to_double(abs(q));
    int N = order / 2 + 3 + static_cast<int>(std::ceil(1.6 * std::sqrt(aq)));
    if (ctx.digits > 16) N += static_cast<int>(std::ceil((ctx.digits - 16) / 3.0 * (1.0 + 0.1 * std::sqrt(aq))));
    if (aq == 0.0) N = std::max(N, 4);
    return N;
}

template <class R>
struct LabeledEigenvalue {
    EigenLabel label;
    Complex<R> value;
};

// Plain matrix eigenvalues of one class, sorted (ascending for real q, by
// real part otherwise).
template <class R>
std::vector<Complex<R>> matrix_eigenvalues(EigenClass cls, const Complex<R>& q, int N, const PrecisionContext& ctx) {
    auto pairs = tridiag_eigen(build_matrix(cls, q, N), N, ctx);
    std::vector<Complex<R>> out;
    for (auto& p : pairs) out.push_back(p.value);
    return out;
}

struct MatrixLabelOptions {
    int dim = 0;               // 0: truncation_dimension with refinement
    double match_tol = 1e-6;   // relative distance below which two continued values collide
};

// Eigenvalues of orders first..max_order of a class at q, labeled. Real q:
// ascending order. Complex q: each matrix eigenvalue is matched to the value
// continued from q = 0 along the straight path.
template <class R>
std::vector<LabeledEigenvalue<R>> eigenvalues_matrix(EigenClass cls, int max_order, const Complex<R>& q,
                                                     const PrecisionContext& ctx, const MatrixLabelOptions& opt = {}) {
    using C = Complex<R>;
    int count = max_order >= first_index(cls) ? (max_order - first_index(cls)) / 2 + 1 : 0;
    if (count <= 0) return {};
    int N = opt.dim;
    std::vector<C> ev;
    if (N > 0) {
        if (N < count + 1) throw DomainError("eigenvalues_matrix: dimension too small for requested orders");
        ev = matrix_eigenvalues(cls, q, N, ctx);
    } else {
        N = std::max(truncation_dimension(max_order, q, ctx), count + 2);
        ev = matrix_eigenvalues(cls, q, N, ctx);
        // refine until the wanted eigenvalues are stable under N -> N + 4
        for (int guard = 0; guard < 20; ++guard) {
            std::vector<C> ev2 = matrix_eigenvalues(cls, q, N + 4, ctx);
            bool stable = true;
            for (int k = 0; k < count; ++k) {
                // nearest neighbour, ordering can change for complex q
                R best = abs(ev[k] - ev2[0]);
                for (auto& x : ev2) best = std::min(best, abs(ev[k] - x));
                if (best > R(ctx.tol) * (R(1) + abs(ev[k]))) stable = false;
            }
            N += 4;
            ev = std::move(ev2);
            if (stable) break;
        }
    }
    std::vector<LabeledEigenvalue<R>> out;
    bool real_q = q.im == R(0);
    if (real_q) {
        for (int k = 0; k < count; ++k) out.push_back({EigenLabel{cls, order_at(cls, k), "real"}, C(ev[k].re)});
        return out;
    }
    std::vector<C> cont(count);
    for (int k = 0; k < count; ++k) {
        PrecisionContext cctx = ctx;
        cont[k] = eigenvalue_continuation(cls, order_at(cls, k), q, cctx).a;
    }
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            if (to_double(abs(cont[i] - cont[j])) < opt.match_tol * (1.0 + to_double(abs(cont[i]))))
                throw LabelAmbiguity("eigenvalues_matrix: orders " + std::to_string(order_at(cls, i)) + " and " +
                                     std::to_string(order_at(cls, j)) +
                                     " coincide along the path; use the double-point workflow");
    for (int k = 0; k < count; ++k) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < ev.size(); ++j)
            if (abs(ev[j] - cont[k]) < abs(ev[best] - cont[k])) best = j;
        out.push_back({EigenLabel{cls, order_at(cls, k), "straight"}, ev[best]});
    }
    return out;
}

}  // namespace mathieu
