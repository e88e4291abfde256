#include "skin/oracle.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "skin/errors.hpp"
#include "skin/linalg.hpp"

namespace skin::oracle {

namespace {

void require_sites(int n, int limit, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string("oracle: ") + what + " needs at least one site");
    if (n > limit)
        throw SizeLimit("oracle", std::string(what) + " is limited to " + std::to_string(limit) + " sites",
                        static_cast<double>(limit));
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vec vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unvec(const Vec& v, int dim) { return Eigen::Map<const Mat>(v.data(), dim, dim); }

// Physical Majoranas w_{2m} = d + d†, w_{2m+1} = i(d − d†).
std::vector<Mat> majoranas(const std::vector<Mat>& d) {
    std::vector<Mat> w;
    for (const Mat& dm : d) {
        w.push_back(dm + dm.adjoint());
        w.push_back(I * (dm - dm.adjoint()));
    }
    return w;
}

}  // namespace

std::vector<Mat> annihilators(int n_sites) {
    require_sites(n_sites, kMaxDenseSites, "the dense Fock space");
    const int dim = 1 << n_sites;
    std::vector<Mat> d;
    for (int m = 0; m < n_sites; ++m) {
        Mat op = Mat::Zero(dim, dim);
        const int bit = 1 << (n_sites - 1 - m);
        for (int s = 0; s < dim; ++s) {
            if (!(s & bit)) continue;
            const int before = std::popcount(static_cast<unsigned>(s >> (n_sites - m)));
            op(s ^ bit, s) = (before % 2 == 0) ? 1.0 : -1.0;
        }
        d.push_back(op);
    }
    return d;
}

DenseLindbladian dense_lindbladian(const ModelSpec& model) {
    model.validate();
    const int n = model.n_modes();
    const auto d = annihilators(n);
    const int dim = 1 << n;
    Mat H = Mat::Zero(dim, dim);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            if (model.hamiltonian.h(m, k) != 0.0) H += model.hamiltonian.h(m, k) * d[m].adjoint() * d[k];
    const Mat Id = Mat::Identity(dim, dim);
    Mat L = -I * (kron(Id, H) - kron(H.transpose(), Id));
    for (const auto& j : model.jumps) {
        Mat Lop = Mat::Zero(dim, dim);
        for (int m = 0; m < n; ++m) Lop += j.c_minus(m) * d[m] + j.c_plus(m) * d[m].adjoint();
        const Mat LdL = Lop.adjoint() * Lop;
        L += 2.0 * kron(Lop.conjugate(), Lop) - kron(Id, LdL) - kron(LdL.transpose(), Id);
    }
    return {dim, L};
}

Mat dense_evolve(const ModelSpec& model, const Mat& rho0, double t) {
    const auto L = dense_lindbladian(model);
    if (rho0.rows() != L.dim || rho0.cols() != L.dim) throw std::invalid_argument("oracle: ρ₀ has the wrong size");
    if (!(t >= 0.0)) throw std::invalid_argument("oracle: t must be ≥ 0");
    return unvec(linalg::expm(L.superop * t) * vec(rho0), L.dim);
}

Mat dense_steady_state(const ModelSpec& model) {
    const auto L = dense_lindbladian(model);
    // Replace one equation by Tr ρ = 1; the kernel is one-dimensional when the
    // steady state is unique.
    Mat A = L.superop;
    Vec rhs = Vec::Zero(A.rows());
    A.row(0).setZero();
    for (int i = 0; i < L.dim; ++i) A(0, i * L.dim + i) = 1.0;
    rhs(0) = 1.0;
    Eigen::FullPivLU<Mat> lu(A);
    if (!lu.isInvertible())
        throw UnsupportedRegime("oracle", "the steady state is not unique", lu.threshold());
    Mat rho = unvec(lu.solve(rhs), L.dim);
    return 0.5 * (rho + rho.adjoint());
}

RVec steady_state_occupations(const ModelSpec& model) {
    return correlation_from_rho(dense_steady_state(model)).diagonal().real();
}

Mat product_state(const RVec& occupations) {
    const int n = static_cast<int>(occupations.size());
    require_sites(n, kMaxDenseSites, "product_state");
    const int dim = 1 << n;
    Mat rho = Mat::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        double p = 1.0;
        for (int m = 0; m < n; ++m) {
            const bool occ = s & (1 << (n - 1 - m));
            p *= occ ? occupations(m) : 1.0 - occupations(m);
        }
        rho(s, s) = p;
    }
    return rho;
}

Mat correlation_from_rho(const Mat& rho) {
    const int n = std::countr_zero(static_cast<unsigned>(rho.rows()));
    const auto d = annihilators(n);
    Mat G(n, n);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) G(m, k) = (d[m].adjoint() * d[k] * rho).trace();
    return G;
}

DenseAdjointSpace dense_adjoint_build(int n_sites) {
    require_sites(n_sites, kMaxAdjointSites, "the dense adjoint space");
    DenseAdjointSpace s;
    s.n_sites = n_sites;
    const int nm = 2 * n_sites;
    const int dim = 1 << nm;
    for (int j = 0; j < nm; ++j) {
        const int bit = 1 << (nm - 1 - j);
        Mat c = Mat::Zero(dim, dim);
        for (int a = 0; a < dim; ++a) {
            if (!(a & bit)) continue;
            // w_j P_α: w_j passes the set bits before position j, then w_j² = 1.
            const int before = std::popcount(static_cast<unsigned>(a >> (nm - j)));
            c(a ^ bit, a) = (before % 2 == 0) ? 1.0 : -1.0;
        }
        s.C.push_back(c);
        s.Cd.push_back(c.adjoint());
        s.A.push_back((c + c.adjoint()) / std::sqrt(2.0));
        s.A.push_back(I * (c - c.adjoint()) / std::sqrt(2.0));
    }
    return s;
}

Mat DenseAdjointSpace::parity() const {
    const int d = dim();
    Mat p = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a) p(a, a) = (std::popcount(static_cast<unsigned>(a)) % 2 == 0) ? 1.0 : -1.0;
    return p;
}

std::vector<int> DenseAdjointSpace::even_indices() const {
    std::vector<int> out;
    for (int a = 0; a < dim(); ++a)
        if (std::popcount(static_cast<unsigned>(a)) % 2 == 0) out.push_back(a);
    return out;
}

namespace {

std::vector<Mat> monomials(int n_sites) {
    const auto w = majoranas(annihilators(n_sites));
    const int nm = 2 * n_sites;
    const int fock = 1 << n_sites;
    std::vector<Mat> P;
    for (int a = 0; a < (1 << nm); ++a) {
        Mat p = Mat::Identity(fock, fock);
        for (int j = 0; j < nm; ++j)
            if (a & (1 << (nm - 1 - j))) p = p * w[j];
        P.push_back(p);
    }
    return P;
}

}  // namespace

Vec DenseAdjointSpace::to_coordinates(const Mat& op) const {
    const auto P = monomials(n_sites);
    Vec x(dim());
    for (int a = 0; a < dim(); ++a) x(a) = (P[a].adjoint() * op).trace();
    return x;
}

Mat DenseAdjointSpace::from_coordinates(const Vec& x) const {
    const auto P = monomials(n_sites);
    const int fock = 1 << n_sites;
    Mat op = Mat::Zero(fock, fock);
    for (int a = 0; a < dim(); ++a) op += x(a) * P[a];
    return op / static_cast<double>(fock);
}

Mat DenseAdjointSpace::liouvillian_plus(const MajoranaForm& F) const {
    const int nm = 2 * n_sites;
    if (F.H.rows() != nm) throw std::invalid_argument("oracle: Majorana form size differs from the adjoint space");
    const Mat K = 2.0 * I * F.H + F.M + F.M.transpose();
    const Mat P = F.M - F.M.transpose();
    Mat L = Mat::Zero(dim(), dim());
    for (int j = 0; j < nm; ++j)
        for (int k = 0; k < nm; ++k) {
            if (K(j, k) != 0.0) L -= 2.0 * K(j, k) * Cd[j] * C[k];
            if (P(j, k) != 0.0) L += 2.0 * P(j, k) * Cd[j] * Cd[k];
        }
    return L;
}

Mat DenseAdjointSpace::physical_liouvillian(const ModelSpec& model) const {
    if (model.n_modes() != n_sites) throw std::invalid_argument("oracle: model size differs from the adjoint space");
    const auto L = dense_lindbladian(model);
    const auto P = monomials(n_sites);
    const int fock = 1 << n_sites;
    Mat out(dim(), dim());
    for (int a = 0; a < dim(); ++a) {
        const Mat image = unvec(L.superop * vec(P[a]), fock);
        for (int b = 0; b < dim(); ++b) out(b, a) = (P[b].adjoint() * image).trace() / static_cast<double>(fock);
    }
    return out;
}

std::vector<Mat> DenseAdjointSpace::normal_mode_operators(const RapidityDecomposition& dec) const {
    if (dec.V.cols() != static_cast<Eigen::Index>(A.size()))
        throw std::invalid_argument("oracle: decomposition size differs from the adjoint space");
    std::vector<Mat> out;
    for (Eigen::Index r = 0; r < dec.V.rows(); ++r) {
        Mat op = Mat::Zero(dim(), dim());
        for (Eigen::Index a = 0; a < dec.V.cols(); ++a) op += dec.V(r, a) * A[a];
        out.push_back(op);
    }
    return out;
}

}  // namespace skin::oracle
