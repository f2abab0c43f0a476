#pragma once

// Dense complex linear algebra kernel: Kronecker products, partial traces,
// Hermitian eigendecomposition, positive-semidefinite square roots, and the
// spin-flip singular values used by the two-qubit concurrence formulas.
//
// Everything here is sized for the small Hilbert spaces this project works
// with (a few dozen dimensions at most), so the implementations favour
// clarity and numerical robustness over asymptotic speed.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwm {

using cplx = std::complex<double>;

/// Hard cap on total Hilbert-space dimension (guards against runaway
/// allocations from malformed inputs).
inline constexpr std::size_t kMaxDimension = std::size_t(1) << 20;

// ---------------------------------------------------------------------------
// ComplexMatrix
// ---------------------------------------------------------------------------

/// Dense row-major complex matrix.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), data(r * c, cplx(0.0, 0.0)) {}

    cplx& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const {
        return data[i * cols + j];
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    bool square() const { return rows == cols; }
};

/// Pure state on a tensor product of subsystems.  `dims[k]` is the local
/// dimension of subsystem k; subsystem 0 is the most significant digit of the
/// flattened index, i.e. index = sum_k digit_k * prod_{k'>k} dims[k'].
struct StateVector {
    std::vector<std::size_t> dims;
    std::vector<cplx> amps;

    std::size_t total_dim() const {
        std::size_t d = 1;
        for (std::size_t x : dims)
            d *= x;
        return d;
    }
};

/// Eigendecomposition of a Hermitian matrix.  `values` are sorted ascending;
/// column j of `vectors` is the eigenvector for values[j].
struct EigenDecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// ---------------------------------------------------------------------------
// Basic matrix helpers
// ---------------------------------------------------------------------------

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("matmul: inner dimensions differ (" +
                                    std::to_string(a.cols) + " vs " +
                                    std::to_string(b.rows) + ")");
    ComplexMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0))
                continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            c(j, i) = std::conj(a(i, j));
    return c;
}

inline ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows * a.cols; ++i)
        c.data[i] = std::conj(a.data[i]);
    return c;
}

inline cplx trace(const ComplexMatrix& a) {
    if (!a.square())
        throw std::invalid_argument("trace: matrix is not square");
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i)
        t += a(i, i);
    return t;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& z : a.data)
        s += std::norm(z);
    return std::sqrt(s);
}

/// Largest absolute entry of A - A^dagger; zero for exactly Hermitian input.
inline double hermiticity_defect(const ComplexMatrix& a) {
    if (!a.square())
        throw std::invalid_argument("hermiticity_defect: matrix is not square");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = i; j < a.cols; ++j)
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    return worst;
}

/// Replaces A by (A + A^dagger)/2, removing roundoff-level asymmetry.
inline void hermitize(ComplexMatrix& a) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < a.cols; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
}

// ---------------------------------------------------------------------------
// Kronecker product
// ---------------------------------------------------------------------------

/// Kronecker product a (x) b.  Rejects results whose row or column count
/// would exceed the global dimension cap.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows == 0 || a.cols == 0 || b.rows == 0 || b.cols == 0)
        throw std::invalid_argument("kron: empty operand");
    if (a.rows > kMaxDimension / b.rows || a.cols > kMaxDimension / b.cols)
        throw std::length_error("kron: product dimension exceeds cap of 2^20");
    ComplexMatrix c(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0))
                continue;
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    c(i * b.rows + k, j * b.cols + l) = aij * b(k, l);
        }
    return c;
}

// ---------------------------------------------------------------------------
// Partial trace
// ---------------------------------------------------------------------------

namespace detail {

/// Strides of each subsystem in the flattened index (subsystem 0 most
/// significant).
inline std::vector<std::size_t> subsystem_strides(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;)
        stride[k - 1] = stride[k] * dims[k];
    return stride;
}

} // namespace detail

/// Partial trace of a density operator over every subsystem NOT listed in
/// `keep`.  `dims` gives the local dimension of each subsystem; `keep` holds
/// 0-based subsystem indices, and the retained subsystems appear in the
/// output in the order listed.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho,
                                   const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep) {
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0)
            throw std::invalid_argument("partial_trace: zero subsystem dimension");
        if (total > kMaxDimension / d)
            throw std::length_error("partial_trace: dimension exceeds cap of 2^20");
        total *= d;
    }
    if (!rho.square() || rho.rows != total)
        throw std::invalid_argument(
            "partial_trace: matrix is " + std::to_string(rho.rows) + "x" +
            std::to_string(rho.cols) + " but dims give total dimension " +
            std::to_string(total));
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size())
            throw std::invalid_argument("partial_trace: keep index " +
                                        std::to_string(k) + " out of range");
        if (kept[k])
            throw std::invalid_argument("partial_trace: duplicate keep index " +
                                        std::to_string(k));
        kept[k] = true;
    }

    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (!kept[k])
            traced.push_back(k);

    const std::vector<std::size_t> stride = detail::subsystem_strides(dims);

    std::size_t dim_keep = 1;
    for (std::size_t k : keep)
        dim_keep *= dims[k];
    std::size_t dim_traced = 1;
    for (std::size_t k : traced)
        dim_traced *= dims[k];

    // Flattened index offset of a multi-index running over `subs`.
    auto offset_of = [&](const std::vector<std::size_t>& subs, std::size_t flat) {
        std::size_t off = 0;
        for (std::size_t k = subs.size(); k-- > 0;) {
            const std::size_t d = dims[subs[k]];
            off += (flat % d) * stride[subs[k]];
            flat /= d;
        }
        return off;
    };

    ComplexMatrix out(dim_keep, dim_keep);
    for (std::size_t i = 0; i < dim_keep; ++i) {
        const std::size_t oi = offset_of(keep, i);
        for (std::size_t j = 0; j < dim_keep; ++j) {
            const std::size_t oj = offset_of(keep, j);
            cplx s(0.0, 0.0);
            for (std::size_t t = 0; t < dim_traced; ++t) {
                const std::size_t ot = offset_of(traced, t);
                s += rho(oi + ot, oj + ot);
            }
            out(i, j) = s;
        }
    }
    return out;
}

/// Reduced density operator of a pure state: keeps the subsystems in `keep`
/// (0-based, output ordered as listed) and traces out the rest.  Works
/// directly on the amplitudes, so the full |psi><psi| projector is never
/// formed.
inline ComplexMatrix partial_trace_pure(const StateVector& psi,
                                        const std::vector<std::size_t>& keep) {
    const std::vector<std::size_t>& dims = psi.dims;
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0)
            throw std::invalid_argument("partial_trace_pure: zero subsystem dimension");
        if (total > kMaxDimension / d)
            throw std::length_error("partial_trace_pure: dimension exceeds cap of 2^20");
        total *= d;
    }
    if (psi.amps.size() != total)
        throw std::invalid_argument(
            "partial_trace_pure: amplitude count " + std::to_string(psi.amps.size()) +
            " does not match dims total " + std::to_string(total));
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size())
            throw std::invalid_argument("partial_trace_pure: keep index " +
                                        std::to_string(k) + " out of range");
        if (kept[k])
            throw std::invalid_argument("partial_trace_pure: duplicate keep index " +
                                        std::to_string(k));
        kept[k] = true;
    }
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (!kept[k])
            traced.push_back(k);

    const std::vector<std::size_t> stride = detail::subsystem_strides(dims);
    auto offset_of = [&](const std::vector<std::size_t>& subs, std::size_t flat) {
        std::size_t off = 0;
        for (std::size_t k = subs.size(); k-- > 0;) {
            const std::size_t d = dims[subs[k]];
            off += (flat % d) * stride[subs[k]];
            flat /= d;
        }
        return off;
    };

    std::size_t dim_keep = 1;
    for (std::size_t k : keep)
        dim_keep *= dims[k];
    std::size_t dim_traced = 1;
    for (std::size_t k : traced)
        dim_traced *= dims[k];

    // rho(i,j) = sum_t psi[i,t] conj(psi[j,t]) — a Gram matrix of the rows of
    // the (kept x traced) amplitude matrix.
    ComplexMatrix out(dim_keep, dim_keep);
    for (std::size_t i = 0; i < dim_keep; ++i) {
        const std::size_t oi = offset_of(keep, i);
        for (std::size_t j = i; j < dim_keep; ++j) {
            const std::size_t oj = offset_of(keep, j);
            cplx s(0.0, 0.0);
            for (std::size_t t = 0; t < dim_traced; ++t) {
                const std::size_t ot = offset_of(traced, t);
                s += psi.amps[oi + ot] * std::conj(psi.amps[oj + ot]);
            }
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic complex Jacobi)
// ---------------------------------------------------------------------------

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Input must be Hermitian within 1e-10 (largest entry of A - A^dagger);
/// eigenvalues are returned ascending with matching eigenvector columns.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
    if (!h.square())
        throw std::invalid_argument("hermitian_eig: matrix is not square");
    const std::size_t n = h.rows;
    if (n == 0)
        throw std::invalid_argument("hermitian_eig: empty matrix");
    const double defect = hermiticity_defect(h);
    if (defect > 1e-10)
        throw std::domain_error("hermitian_eig: input not Hermitian (defect " +
                                std::to_string(defect) + ")");

    ComplexMatrix a = h;
    hermitize(a);
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(frobenius_norm(a), 1.0);
    const double stop = 1e-15 * scale;
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += std::norm(a(p, q));
        off = std::sqrt(2.0 * off);
        if (off <= stop)
            break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= 1e-300)
                    continue;
                // Phase that makes the pivot real, then a standard real
                // Jacobi rotation on the (p,q) block.
                const cplx phase = a(p, q) / apq;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Combined unitary G: G(p,p)=phase*c, G(p,q)=phase*s,
                // G(q,p)=-s, G(q,q)=c; apply A <- G^dagger A G, V <- V G.
                const cplx gpp = phase * c;
                const cplx gpq = phase * s;
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * gpp - akq * s;
                    a(k, q) = akp * gpq + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk - s * aqk;
                    a(q, k) = std::conj(gpq) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp - vkq * s;
                    v(k, q) = vkp * gpq + vkq * c;
                }
                a(p, q) = cplx(0.0, 0.0);
                a(q, p) = cplx(0.0, 0.0);
            }
        }
    }

    // Sort ascending, permuting eigenvector columns in step.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i)
            out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PSD square root
// ---------------------------------------------------------------------------

/// Hermitian positive-semidefinite square root.  Eigenvalues below -1e-8 are
/// a domain error; small negative eigenvalues (roundoff) are clamped to zero.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
    const EigenDecomposition eig = hermitian_eig(h);
    const std::size_t n = h.rows;
    if (!eig.values.empty() && eig.values.front() < -1e-8)
        throw std::domain_error("psd_sqrt: eigenvalue " +
                                std::to_string(eig.values.front()) +
                                " below -1e-8; input is not PSD");
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = std::max(eig.values[k], 0.0);
        const double root = std::sqrt(lam);
        if (root == 0.0)
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = eig.vectors(i, k);
            if (vik == cplx(0.0, 0.0))
                continue;
            const cplx w = root * vik;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += w * std::conj(eig.vectors(j, k));
        }
    }
    hermitize(out);
    return out;
}

// ---------------------------------------------------------------------------
// Spin-flip singular values (two-qubit concurrence machinery)
// ---------------------------------------------------------------------------

/// The four singular values of sqrt(sqrt(rho) rho~ sqrt(rho)) for a two-qubit
/// density matrix rho, sorted descending, where
/// rho~ = (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y).
/// These feed both max{z1-z2-z3-z4, 0} and z1+z2+z3+z4.
inline std::array<double, 4> wootters_lambdas(const ComplexMatrix& rho) {
    if (!rho.square() || rho.rows != 4)
        throw std::invalid_argument("wootters_lambdas: expected a 4x4 matrix, got " +
                                    std::to_string(rho.rows) + "x" +
                                    std::to_string(rho.cols));
    if (hermiticity_defect(rho) > 1e-10)
        throw std::domain_error("wootters_lambdas: input not Hermitian");
    const double tr = trace(rho).real();
    if (std::abs(tr - 1.0) > 1e-8)
        throw std::domain_error("wootters_lambdas: trace " + std::to_string(tr) +
                                " differs from 1 by more than 1e-8");

    // sigma_y (x) sigma_y is the anti-diagonal (-1, 1, 1, -1).
    ComplexMatrix yy(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    const ComplexMatrix tilde = matmul(matmul(yy, conjugate(rho)), yy);
    const ComplexMatrix root = psd_sqrt(rho);
    ComplexMatrix m = matmul(matmul(root, tilde), root);
    hermitize(m); // PSD by construction; kill roundoff asymmetry

    EigenDecomposition eig = hermitian_eig(m);
    // Eigenvalues of m are squared singular values in [0, 1].  Roundoff can
    // leave O(eps) junk that would surface as sqrt(eps)-sized singular
    // values, so clamp anything below a relative floor to exact zero.
    const double lam_max = std::max(eig.values.back(), 0.0);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * lam_max;
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) {
        double lam = eig.values[3 - k]; // descending
        if (lam < floor)
            lam = 0.0;
        out[k] = std::sqrt(lam);
    }
    return out;
}

} // namespace gwm
