#include "skin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "skin/errors.hpp"

namespace skin::linalg {

namespace {

constexpr double kPade13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                              1187353796428800.0,  129060195264000.0,   10559470521600.0,
                              670442572800.0,      33522128640.0,       1323241920.0,
                              40840800.0,          960960.0,            16380.0,
                              182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Mat expm(const Mat& A) {
    const auto n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("expm: matrix must be square");
    const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm > kTheta13) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    const Mat X = A / std::ldexp(1.0, s);
    const Mat Id = Mat::Identity(n, n);
    const Mat X2 = X * X;
    const Mat X4 = X2 * X2;
    const Mat X6 = X4 * X2;
    const double* b = kPade13;
    Mat U = X * (X6 * (b[13] * X6 + b[11] * X4 + b[9] * X2) + b[7] * X6 + b[5] * X4 + b[3] * X2 + b[1] * Id);
    Mat V = X6 * (b[12] * X6 + b[10] * X4 + b[8] * X2) + b[6] * X6 + b[4] * X4 + b[2] * X2 + b[0] * Id;
    Mat R = (V - U).partialPivLu().solve(V + U);
    for (int i = 0; i < s; ++i) R = R * R;
    return R;
}

Mat lyapunov(const Mat& X, const Mat& S, double stability_margin) {
    const auto n = X.rows();
    Eigen::ComplexSchur<Mat> schur(X);
    const Mat& T = schur.matrixT();
    const Mat& U = schur.matrixU();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (T(i, i).real() >= -stability_margin)
            throw UnstableDrift("damping", "damping matrix has an eigenvalue with non-negative real part",
                                stability_margin);
    }
    // With X = U T U†, Y = U† G U solves T Y + Y T† = −U† S U. Column j of that
    // equation couples to columns k > j through the upper triangle of T†.
    const Mat C = -(U.adjoint() * S * U);
    Mat Y = Mat::Zero(n, n);
    Mat A = T.triangularView<Eigen::Upper>();
    const Vec diag = T.diagonal();
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        const Eigen::Index tail = n - j - 1;
        Vec rhs = C.col(j);
        if (tail > 0) rhs.noalias() -= Y.rightCols(tail) * T.row(j).tail(tail).adjoint();
        A.diagonal() = diag.array() + std::conj(diag(j));
        Y.col(j) = A.triangularView<Eigen::Upper>().solve(rhs);
    }
    return U * Y * U.adjoint();
}

std::vector<int> hungarian(const RMat& cost) {
    const int n = static_cast<int>(cost.rows());
    if (cost.cols() != n) throw std::invalid_argument("hungarian: cost must be square");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> assign(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] > 0) assign[p[j] - 1] = j - 1;
    }
    return assign;
}

double submultiset_distance(std::span<const cplx> sub, std::span<const cplx> super) {
    const auto m = sub.size();
    const auto n = super.size();
    if (m > n) throw std::invalid_argument("submultiset_distance: subset larger than superset");
    if (n == 0) return 0.0;
    // Padding rows cost nothing, so they absorb the unmatched superset entries.
    RMat cost = RMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) cost(i, j) = std::abs(sub[i] - super[j]);
    const auto assign = hungarian(cost);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, cost(i, assign[i]));
    return worst;
}

double multiset_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    return submultiset_distance(a, b);
}

}  // namespace skin::linalg
