#include "projlab/linalg.hpp"

#include <cmath>
#include <complex>

#include "projlab/errors.hpp"

namespace projlab {

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return max_abs(m - m.adjoint()) <= tol;
}

ProjectionMatrix ProjectionMatrix::from_matrix(ComplexMatrix m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvalidDimension("projection matrix must be square and non-empty");
    }
    if (!is_hermitian(m, 1e-12)) {
        throw ContractError("projection matrix is not self-adjoint (tol 1e-12)");
    }
    if (max_abs(m * m - m) > 1e-10) {
        throw ContractError("projection matrix is not idempotent (tol 1e-10)");
    }
    const double tr = m.trace().real();
    const int rank = static_cast<int>(std::lround(tr));
    if (std::abs(tr - rank) > 1e-8 || rank < 0 || rank > m.rows()) {
        throw ContractError("projection trace is not an admissible integer rank");
    }
    return ProjectionMatrix(std::move(m), rank);
}

ProjectionMatrix ProjectionMatrix::unchecked(ComplexMatrix m, int rank) {
    return ProjectionMatrix(std::move(m), rank);
}

TangentVector::TangentVector(const ProjectionMatrix& base, ComplexMatrix x)
    : base_(base), mat_(std::move(x)) {
    if (mat_.rows() != base_.dim() || mat_.cols() != base_.dim()) {
        throw InvalidDimension("tangent vector dimension does not match base point");
    }
    if (!is_hermitian(mat_, 1e-12)) {
        throw ContractError("tangent vector is not self-adjoint (tol 1e-12)");
    }
    const ComplexMatrix& p = base_.matrix();
    if (max_abs(mat_ - (p * mat_ + mat_ * p)) > 1e-10) {
        throw ContractError("matrix is not tangent at the base point: X != PX + XP");
    }
}

ComplexMatrix sample_haar_unitary(int n, SplitMix64& rng) {
    if (n < 1) {
        throw InvalidDimension("sample_haar_unitary requires N >= 1");
    }
    ComplexMatrix a(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            a(i, j) = rng.next_complex_normal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    ComplexMatrix q = qr.householderQ();
    const auto r_diag = qr.matrixQR().diagonal();
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r_diag(j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw InvalidDimension("hermitian_eigen requires a square matrix");
    }
    const double scale = std::max(1.0, max_abs(m));
    if (max_abs(m - m.adjoint()) > 1e-10 * scale) {
        throw ContractError("hermitian_eigen: input is not self-adjoint (tol 1e-10)");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("hermitian_eigen: eigensolver failed", 0.0, 0.0);
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

ProjectionMatrix grassmann_geodesic(const ProjectionMatrix& p, const TangentVector& x, double t) {
    if (x.base().dim() != p.dim() || max_abs(x.base().matrix() - p.matrix()) > 1e-10) {
        throw ContractError("grassmann_geodesic: tangent vector is not based at P");
    }
    const ComplexMatrix& pm = p.matrix();
    const ComplexMatrix& xm = x.matrix();
    const ComplexMatrix a = xm * pm - pm * xm;  // skew-adjoint generator
    // exp(tA) = V exp(-it L) V* with iA = V L V* Hermitian.
    const std::complex<double> iunit(0.0, 1.0);
    EigenDecomposition ed = hermitian_eigen(iunit * a);
    Eigen::VectorXcd phases(ed.values.size());
    for (int i = 0; i < ed.values.size(); ++i) {
        phases(i) = std::exp(std::complex<double>(0.0, -t * ed.values(i)));
    }
    const ComplexMatrix e = ed.vectors * phases.asDiagonal() * ed.vectors.adjoint();
    ComplexMatrix c = e * pm * e.adjoint();
    c = (c + ComplexMatrix(c.adjoint())) / 2.0;  // kill rounding asymmetry
    return ProjectionMatrix::unchecked(std::move(c), p.rank());
}

TangentVector tangent_project(const ProjectionMatrix& p, const ComplexMatrix& h) {
    if (h.rows() != p.dim() || h.cols() != p.dim()) {
        throw InvalidDimension("tangent_project: dimension mismatch");
    }
    if (!is_hermitian(h, 1e-10 * std::max(1.0, max_abs(h)))) {
        throw ContractError("tangent_project: H is not self-adjoint");
    }
    const ComplexMatrix& pm = p.matrix();
    const ComplexMatrix id = ComplexMatrix::Identity(p.dim(), p.dim());
    ComplexMatrix x = pm * h * (id - pm) + (id - pm) * h * pm;
    x = (x + ComplexMatrix(x.adjoint())) / 2.0;
    return TangentVector(p, std::move(x));
}

ComplexMatrix sample_hermitian(int n, SplitMix64& rng) {
    if (n < 1) {
        throw InvalidDimension("sample_hermitian requires N >= 1");
    }
    ComplexMatrix a(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            a(i, j) = rng.next_complex_normal();
        }
    }
    return (a + ComplexMatrix(a.adjoint())) / 2.0;
}

ComplexMatrix apply_spectral(const ComplexMatrix& m, const std::function<double(double)>& f) {
    EigenDecomposition ed = hermitian_eigen(m);
    RealVector fv(ed.values.size());
    for (int i = 0; i < ed.values.size(); ++i) {
        fv(i) = f(ed.values(i));
    }
    return ed.vectors * fv.asDiagonal() * ed.vectors.adjoint();
}

double trace_function(const ComplexMatrix& m, const std::function<double(double)>& f) {
    EigenDecomposition ed = hermitian_eigen(m);
    double s = 0.0;
    for (int i = 0; i < ed.values.size(); ++i) {
        s += f(ed.values(i));
    }
    return s;
}

}  // namespace projlab
