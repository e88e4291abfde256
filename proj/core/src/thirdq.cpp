#include "skin/thirdq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "skin/errors.hpp"

namespace skin {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct Cluster {
    std::vector<int> members;
    cplx mean;
};

// Greedy grouping of eigenvalues closer than tol to a seed, seeds visited in
// order of decreasing real part.
std::vector<Cluster> cluster_eigenvalues(const Vec& w, double tol) {
    const int n = static_cast<int>(w.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (w(a).real() != w(b).real()) return w(a).real() > w(b).real();
        return w(a).imag() > w(b).imag();
    });
    std::vector<char> used(n, 0);
    std::vector<Cluster> out;
    for (int i : order) {
        if (used[i]) continue;
        Cluster c;
        for (int j : order) {
            if (!used[j] && std::abs(w(j) - w(i)) < tol) {
                used[j] = 1;
                c.members.push_back(j);
            }
        }
        cplx s = 0.0;
        for (int j : c.members) s += w(j);
        c.mean = s / static_cast<double>(c.members.size());
        out.push_back(std::move(c));
    }
    return out;
}

bool is_positive_member(cplx mu, double zero_tol) {
    if (mu.real() > zero_tol) return true;
    if (mu.real() < -zero_tol) return false;
    return mu.imag() > 0.0;
}

// Splits a cluster at λ = 0 into bilinear-dual pairs: returns columns ordered
// (b_0, b̃_0, b_1, b̃_1, …) with bᵢ·bⱼ = 0, b̃ᵢ·b̃ⱼ = 0, bᵢ·b̃ⱼ = δᵢⱼ.
Mat isotropic_pairs(Mat P, double floor) {
    const auto k = P.cols();
    if (k % 2 != 0) throw PairingFailure("thirdq", "zero-eigenvalue cluster of odd size", floor);
    // Bilinear Gram-Schmidt with pivoting on |uᵀu|.
    Mat E(P.rows(), k);
    Eigen::Index filled = 0;
    while (filled < k) {
        const auto rem = k - filled;
        Eigen::Index piv = -1;
        double best = 0.0;
        for (Eigen::Index j = 0; j < rem; ++j) {
            const double v = std::abs(P.col(j).dot(P.col(j).conjugate()));
            if (v > best) {
                best = v;
                piv = j;
            }
        }
        if (best <= floor) {
            // Purely isotropic remainder: mix in a partner with non-zero overlap.
            bool mixed = false;
            for (Eigen::Index i = 0; i < rem && !mixed; ++i)
                for (Eigen::Index j = i + 1; j < rem && !mixed; ++j)
                    if (std::abs(P.col(i).dot(P.col(j).conjugate())) > floor) {
                        P.col(i) += P.col(j);
                        mixed = true;
                    }
            if (!mixed) throw NormalizationFailure("thirdq", "degenerate bilinear form in zero-mode cluster", floor);
            continue;
        }
        Vec e = P.col(piv) / std::sqrt(cplx(P.col(piv).transpose() * P.col(piv)));
        E.col(filled++) = e;
        P.col(piv) = P.col(rem - 1);
        P.conservativeResize(Eigen::NoChange, rem - 1);
        for (Eigen::Index j = 0; j < P.cols(); ++j) P.col(j) -= cplx(e.transpose() * P.col(j)) * e;
    }
    Mat out(E.rows(), k);
    for (Eigen::Index r = 0; r < k / 2; ++r) {
        out.col(2 * r) = (E.col(2 * r) - I * E.col(2 * r + 1)) * kInvSqrt2;
        out.col(2 * r + 1) = (E.col(2 * r) + I * E.col(2 * r + 1)) * kInvSqrt2;
    }
    return out;
}

void sort_modes(RapidityDecomposition& d) {
    const int n = d.n_normal_modes();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const cplx x = d.betas(a);
        const cplx y = d.betas(b);
        if (std::abs(x.real() - y.real()) > 1e-12) return x.real() > y.real();
        if (std::abs(x.imag() - y.imag()) > 1e-12) return x.imag() > y.imag();
        return false;
    });
    RapidityDecomposition s = d;
    for (int i = 0; i < n; ++i) {
        const int o = order[i];
        s.betas(i) = d.betas(o);
        s.zero_mode[i] = d.zero_mode[o];
        s.V.row(2 * i) = d.V.row(2 * o);
        s.V.row(2 * i + 1) = d.V.row(2 * o + 1);
        s.V_scaled.row(2 * i) = d.V_scaled.row(2 * o);
        s.V_scaled.row(2 * i + 1) = d.V_scaled.row(2 * o + 1);
    }
    d = std::move(s);
}

}  // namespace

Mat RapidityDecomposition::b_rows() const {
    Mat out(n_normal_modes(), V.cols());
    for (int m = 0; m < n_normal_modes(); ++m) out.row(m) = V.row(2 * m);
    return out;
}

Mat RapidityDecomposition::bt_rows() const {
    Mat out(n_normal_modes(), V.cols());
    for (int m = 0; m < n_normal_modes(); ++m) out.row(m) = V.row(2 * m + 1);
    return out;
}

StructureMatrix build_structure_matrix(const MajoranaForm& F) {
    const auto n = F.H.rows();
    if (F.M.rows() != n || F.H.cols() != n || F.M.cols() != n)
        throw std::invalid_argument("thirdq: H and M dimensions differ");
    Mat T(2 * n, 2 * n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            T(2 * m, 2 * k) = -2.0 * I * F.H(m, k) + F.M(m, k) - F.M(k, m);
            T(2 * m, 2 * k + 1) = 2.0 * I * F.M(m, k);
            T(2 * m + 1, 2 * k) = -2.0 * I * F.M(k, m);
            T(2 * m + 1, 2 * k + 1) = -2.0 * I * F.H(m, k) - F.M(m, k) + F.M(k, m);
        }
    }
    return {T, 2.0 * F.M.trace()};
}

Mat build_drift_matrix(const MajoranaForm& F) {
    return 2.0 * I * F.H + F.M + F.M.transpose();
}

Mat paired_block_form(const Vec& betas) {
    const auto n = betas.size();
    Mat L = Mat::Zero(2 * n, 2 * n);
    for (Eigen::Index m = 0; m < n; ++m) {
        L(2 * m, 2 * m + 1) = betas(m);
        L(2 * m + 1, 2 * m) = -betas(m);
    }
    return L;
}

RapidityDecomposition rapidity_decompose(const StructureMatrix& S, const DecomposeOptions& opts) {
    const auto dim = S.T.rows();
    if (dim % 4 != 0 || S.T.cols() != dim) throw std::invalid_argument("thirdq: T must be 4N×4N");
    if ((S.T + S.T.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, S.T.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("thirdq: T is not antisymmetric");
    const int nmodes = static_cast<int>(dim / 2);

    Eigen::ComplexEigenSolver<Mat> es(S.T);
    if (es.info() != Eigen::Success) throw PairingFailure("thirdq", "eigensolver did not converge");
    const Vec& w = es.eigenvalues();
    const Mat& v = es.eigenvectors();
    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    const double tol = opts.pairing_tol * scale;
    auto clusters = cluster_eigenvalues(w, tol);

    RapidityDecomposition d;
    d.betas.resize(nmodes);
    d.V.resize(dim, dim);
    d.zero_mode.assign(nmodes, false);
    d.T0 = S.T0;
    int filled = 0;
    std::vector<char> done(clusters.size(), 0);

    auto emit = [&](const Vec& b, const Vec& bt, cplx beta) {
        if (filled >= nmodes) throw PairingFailure("thirdq", "more pairs than modes", opts.pairing_tol);
        d.V.row(2 * filled) = b.transpose();
        d.V.row(2 * filled + 1) = bt.transpose();
        d.betas(filled) = beta;
        d.zero_mode[filled] = std::abs(beta.real()) < opts.zero_mode_tol;
        ++filled;
    };

    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        if (done[ci]) continue;
        const auto& c = clusters[ci];
        const auto k = static_cast<Eigen::Index>(c.members.size());
        Mat P(dim, k);
        for (Eigen::Index j = 0; j < k; ++j) P.col(j) = v.col(c.members[j]);

        if (std::abs(c.mean) < tol) {
            const Mat pairs = isotropic_pairs(P, opts.normalization_floor);
            for (Eigen::Index r = 0; r < k / 2; ++r) emit(pairs.col(2 * r), pairs.col(2 * r + 1), 0.0);
            done[ci] = 1;
            continue;
        }
        if (!is_positive_member(c.mean, opts.zero_mode_tol)) continue;

        std::size_t partner = clusters.size();
        for (std::size_t cj = 0; cj < clusters.size(); ++cj) {
            if (cj == ci || done[cj]) continue;
            if (std::abs(clusters[cj].mean + c.mean) < tol &&
                clusters[cj].members.size() == c.members.size()) {
                partner = cj;
                break;
            }
        }
        if (partner == clusters.size())
            throw PairingFailure("thirdq", "no partner for eigenvalue of T", opts.pairing_tol);
        Mat Pm(dim, k);
        for (Eigen::Index j = 0; j < k; ++j) Pm.col(j) = v.col(clusters[partner].members[j]);
        const Mat W = P.transpose() * Pm;
        Eigen::JacobiSVD<Mat> svd(W);
        const double smin = svd.singularValues()(k - 1);
        if (smin < opts.normalization_floor || smin < 1.0 / opts.max_condition)
            throw NormalizationFailure("thirdq", "bilinear normalisation vanishes (exceptional point?)",
                                       opts.normalization_floor);
        Pm = Pm * W.inverse();
        for (Eigen::Index j = 0; j < k; ++j) emit(P.col(j), Pm.col(j), w(c.members[j]));
        done[ci] = 1;
        done[partner] = 1;
    }
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        if (!done[ci]) throw PairingFailure("thirdq", "unpaired eigenvalue of T", opts.pairing_tol);
    }
    if (filled != nmodes) throw PairingFailure("thirdq", "pair count differs from mode count", opts.pairing_tol);

    d.V_scaled = d.V;
    d.column_scale = RVec::Ones(dim);
    d.pump_free = false;
    {
        // T's (odd, even) block is 2iM and T_{odd,odd} + T_{even,even} = −4iH,
        // so M − Mᵀ is recoverable from the diagonal blocks.
        const auto n = dim / 2;
        Mat diff(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) diff(a, b) = S.T(2 * a, 2 * b) - S.T(2 * a + 1, 2 * b + 1);
        d.pump_free = diff.cwiseAbs().maxCoeff() <= 1e-12;
    }
    sort_modes(d);
    return d;
}

RVec balance_scaling(const Mat& K, int sweeps) {
    const auto n = K.rows();
    RMat A = K.cwiseAbs();
    A.diagonal().setZero();
    // Round-off entries are not couplings; balancing against them would scale
    // a Jordan block into a spuriously diagonal one.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * K.cwiseAbs().maxCoeff();
    A = (A.array() > noise).select(A, 0.0);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> ld(static_cast<std::size_t>(n), nan);
    // Seed: exact edge balancing along a breadth-first spanning forest of the
    // two-way edges; exact for chain-like graphs.
    for (Eigen::Index s = 0; s < n; ++s) {
        if (!std::isnan(ld[s])) continue;
        ld[s] = 0.0;
        std::deque<Eigen::Index> q{s};
        while (!q.empty()) {
            const auto i = q.front();
            q.pop_front();
            for (Eigen::Index j = 0; j < n; ++j) {
                if (std::isnan(ld[j]) && A(i, j) > 0.0 && A(j, i) > 0.0) {
                    ld[j] = ld[i] + 0.5 * std::log(A(j, i) / A(i, j));
                    q.push_back(j);
                }
            }
        }
    }
    const double mean = std::accumulate(ld.begin(), ld.end(), 0.0) / static_cast<double>(n);
    RVec d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(std::clamp(ld[i] - mean, -300.0, 300.0));
    for (int it = 0; it < sweeps; ++it) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                c += A(j, i) * d(i) / d(j);
                r += A(i, j) * d(j) / d(i);
            }
            if (c > 0.0 && r > 0.0) d(i) *= std::sqrt(r / c);
        }
    }
    return d;
}

RapidityDecomposition rapidity_decompose(const MajoranaForm& F, const DecomposeOptions& opts) {
    const Mat K = build_drift_matrix(F);
    const auto n = K.rows();  // 2N Majorana indices
    const Mat P = F.M - F.M.transpose();
    const bool pump_free = P.cwiseAbs().maxCoeff() <= 1e-12;

    const RVec d = balance_scaling(K);
    const Mat Kb = d.cwiseInverse().asDiagonal() * K * d.asDiagonal();
    Eigen::ComplexEigenSolver<Mat> es(Kb);
    if (es.info() != Eigen::Success) throw PairingFailure("thirdq", "drift eigensolver did not converge");
    Vec w = es.eigenvalues();
    Mat Rb = es.eigenvectors();
    Eigen::PartialPivLU<Mat> lu(Rb);
    Mat Lb = lu.inverse();
    if (!Lb.allFinite()) throw NormalizationFailure("thirdq", "drift eigenvectors are singular");

    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    for (Eigen::Index m = 0; m < n; ++m) {
        if (w(m).real() < -std::max(opts.zero_mode_tol, opts.pairing_tol * scale))
            throw PairingFailure("thirdq", "drift eigenvalue with negative real part", opts.pairing_tol);
        const double kappa = Lb.row(m).norm() * Rb.col(m).norm();
        if (!(kappa < opts.max_condition) || 1.0 / kappa < opts.normalization_floor)
            throw NormalizationFailure("thirdq", "ill-conditioned normal mode (exceptional point?)",
                                       1.0 / opts.max_condition);
    }

    // Charge superoperator ad[N̂] = C†ΩC in balanced coordinates.
    Mat Omb = Mat::Zero(n, n);
    for (Eigen::Index j = 0; j < n / 2; ++j) {
        Omb(2 * j, 2 * j + 1) = -I * d(2 * j + 1) / d(2 * j);
        Omb(2 * j + 1, 2 * j) = I * d(2 * j) / d(2 * j + 1);
    }
    Mat Omx = Omb;
    for (Eigen::Index j = 0; j < n / 2; ++j) Omx.middleRows(2 * j, 2) *= static_cast<double>(j + 1);
    for (auto c : cluster_eigenvalues(w, opts.pairing_tol * scale)) {
        const auto k = static_cast<Eigen::Index>(c.members.size());
        if (k < 2) continue;
        std::sort(c.members.begin(), c.members.end());
        Mat Rc(n, k);
        Mat Lc(k, n);
        for (Eigen::Index j = 0; j < k; ++j) {
            Rc.col(j) = Rb.col(c.members[j]);
            Lc.row(j) = Lb.row(c.members[j]);
        }
        // A semisimple cluster acts as λ̄·1 on its invariant subspace; a Jordan
        // block (exceptional point) leaves a nilpotent part of order the couplings.
        const Mat Qc = Rc.householderQr().householderQ() * Mat::Identity(n, k);
        const Mat Kc = Qc.adjoint() * Kb * Qc - c.mean * Mat::Identity(k, k);
        if (Kc.norm() > opts.defect_tol * scale)
            throw NormalizationFailure("thirdq", "defective eigenvalue cluster (exceptional point)", opts.defect_tol);
        const Mat Zq = Lc * Omb * Rc;
        const double resid = (Omb * Rc - Rc * Zq).norm() / std::max(1e-300, Rc.norm());
        if (resid > opts.charge_tol) continue;
        Eigen::ComplexEigenSolver<Mat> qs(Zq);
        const Mat& W = qs.eigenvectors();
        Eigen::PartialPivLU<Mat> wlu(W);
        if (std::abs(wlu.determinant()) < 1e-10) continue;
        // Order the rotated vectors by charge so output is deterministic.
        std::vector<int> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return qs.eigenvalues()(a).real() > qs.eigenvalues()(b).real(); });
        Mat Ws(k, k);
        for (Eigen::Index j = 0; j < k; ++j) Ws.col(j) = W.col(order[j]);
        // Equal charges leave the basis free (left/right edge modes of a long
        // chain are degenerate to machine precision); pin it with the site
        // position superoperator ad[Σ_m m n̂_m] compressed to the sub-block.
        for (Eigen::Index lo = 0; lo < k;) {
            Eigen::Index hi = lo + 1;
            const cplx q = qs.eigenvalues()(order[lo]);
            while (hi < k && std::abs(qs.eigenvalues()(order[hi]) - q) < opts.charge_tol) ++hi;
            if (hi - lo > 1) {
                const Mat Rs = Rc * Ws.middleCols(lo, hi - lo);
                const Mat Ls = Ws.partialPivLu().solve(Lc).middleRows(lo, hi - lo);
                Eigen::ComplexEigenSolver<Mat> xs(Ls * Omx * Rs);
                if (std::abs(xs.eigenvectors().determinant()) > 1e-10) {
                    std::vector<int> xo(hi - lo);
                    std::iota(xo.begin(), xo.end(), 0);
                    std::stable_sort(xo.begin(), xo.end(), [&](int a, int b) {
                        return xs.eigenvalues()(a).real() < xs.eigenvalues()(b).real();
                    });
                    Mat Wx(hi - lo, hi - lo);
                    for (Eigen::Index j = 0; j < hi - lo; ++j) Wx.col(j) = xs.eigenvectors().col(xo[j]);
                    Ws.middleCols(lo, hi - lo) = Ws.middleCols(lo, hi - lo) * Wx;
                }
            }
            lo = hi;
        }
        const Mat Rn = Rc * Ws;
        const Mat Ln = Ws.partialPivLu().solve(Lc);
        for (Eigen::Index j = 0; j < k; ++j) {
            Rb.col(c.members[j]) = Rn.col(j);
            Lb.row(c.members[j]) = Ln.row(j);
            w(c.members[j]) = c.mean;
        }
    }

    // C† admixture of B_m, needed when the pump term is present.
    Mat Yb = Mat::Zero(n, n);  // row m: balanced C† coefficients of B_m
    if (!pump_free) {
        const Mat Pb = d.cwiseInverse().asDiagonal() * P * d.cwiseInverse().asDiagonal();
        const Mat num = 2.0 * Lb * Pb * Lb.transpose();
        Mat Z(n, n);
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                const cplx den = w(a) + w(b);
                if (std::abs(den) < opts.zero_mode_tol) {
                    if (std::abs(num(a, b)) > opts.charge_tol)
                        throw UnsupportedRegime("thirdq", "pump term couples a pair of zero modes", opts.zero_mode_tol);
                    Z(a, b) = 0.0;
                } else {
                    Z(a, b) = num(a, b) / den;
                }
            }
        }
        const Mat RZ = Rb * Z;
        for (Eigen::Index m = 0; m < n; ++m)
            for (Eigen::Index i = 0; i < n; ++i) Yb(m, i) = RZ(i, m) * d(i) * d(i);
    }

    RapidityDecomposition out;
    out.betas = w;
    out.zero_mode.resize(n);
    out.T0 = 2.0 * F.M.trace();
    out.pump_free = pump_free;
    out.V_scaled.resize(2 * n, 2 * n);
    out.column_scale.resize(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.column_scale(2 * i) = d(i);
        out.column_scale(2 * i + 1) = d(i);
    }
    for (Eigen::Index m = 0; m < n; ++m) {
        out.zero_mode[m] = std::abs(w(m).real()) < opts.zero_mode_tol;
        for (Eigen::Index i = 0; i < n; ++i) {
            const cplx x = Lb(m, i);
            const cplx y = Yb(m, i);
            const cplx r = Rb(i, m);
            out.V_scaled(2 * m, 2 * i) = (x + y) * kInvSqrt2;
            out.V_scaled(2 * m, 2 * i + 1) = -I * (x - y) * kInvSqrt2;
            out.V_scaled(2 * m + 1, 2 * i) = r * kInvSqrt2;
            out.V_scaled(2 * m + 1, 2 * i + 1) = I * r * kInvSqrt2;
        }
    }
    out.V = out.V_scaled;
    for (Eigen::Index m = 0; m < n; ++m) {
        out.V.row(2 * m).array() /= out.column_scale.transpose().array();
        out.V.row(2 * m + 1).array() *= out.column_scale.transpose().array();
    }
    sort_modes(out);
    return out;
}

std::vector<cplx> liouvillian_eigenvalues(const RapidityDecomposition& dec, int max_enumerated_modes) {
    const int n = dec.n_normal_modes();
    std::vector<cplx> out;
    if (n > max_enumerated_modes || n >= 31) {
        out.reserve(n);
        for (int m = 0; m < n; ++m) out.push_back(-2.0 * dec.betas(m));
        return out;
    }
    const std::size_t total = std::size_t{1} << n;
    out.resize(total);
    out[0] = 0.0;
    for (std::size_t mask = 1; mask < total; ++mask) {
        const int top = static_cast<int>(std::bit_width(mask)) - 1;
        out[mask] = out[mask ^ (std::size_t{1} << top)] - 2.0 * dec.betas(top);
    }
    return out;
}

}  // namespace skin
