#pragma once

#include <Eigen/Dense>
#include <functional>

#include "projlab/rng.hpp"

namespace projlab {

using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Rank-k orthogonal projection matrix, validated on construction:
/// self-adjoint to 1e-12, idempotent to 1e-10, integer trace to 1e-8.
class ProjectionMatrix {
public:
    static ProjectionMatrix from_matrix(ComplexMatrix m);

    /// Trusted constructor for matrices produced by exact constructions
    /// (unitary conjugation of a diagonal 0/1 matrix). Skips validation.
    static ProjectionMatrix unchecked(ComplexMatrix m, int rank);

    int dim() const { return static_cast<int>(mat_.rows()); }
    int rank() const { return rank_; }
    const ComplexMatrix& matrix() const { return mat_; }

private:
    ProjectionMatrix(ComplexMatrix m, int rank) : mat_(std::move(m)), rank_(rank) {}
    ComplexMatrix mat_;
    int rank_;
};

/// Tangent vector at a projection P: self-adjoint X with X = PX + XP,
/// i.e. purely off-diagonal in the range/kernel block decomposition of P.
class TangentVector {
public:
    TangentVector(const ProjectionMatrix& base, ComplexMatrix x);

    const ProjectionMatrix& base() const { return base_; }
    const ComplexMatrix& matrix() const { return mat_; }
    double hs_norm() const { return mat_.norm(); }

private:
    ProjectionMatrix base_;
    ComplexMatrix mat_;
};

struct EigenDecomposition {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // unitary, columns match values
};

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);

/// Haar-distributed unitary: QR of an i.i.d. complex Ginibre matrix with the
/// columns rephased so diag(R) > 0 (plain QR alone is not Haar).
ComplexMatrix sample_haar_unitary(int n, SplitMix64& rng);

/// Eigendecomposition of a self-adjoint matrix, eigenvalues ascending.
/// Throws ContractError when the input is not self-adjoint to 1e-10.
EigenDecomposition hermitian_eigen(const ComplexMatrix& m);

/// Geodesic on the projection manifold: exp(t[X,P]) P exp(-t[X,P]), computed
/// through the spectral exponential of the normal generator [X,P].
ProjectionMatrix grassmann_geodesic(const ProjectionMatrix& p, const TangentVector& x, double t);

/// Orthogonal projection of a self-adjoint H onto the tangent space at P:
/// PH(I-P) + (I-P)HP.
TangentVector tangent_project(const ProjectionMatrix& p, const ComplexMatrix& h);

/// Random self-adjoint matrix with i.i.d. N(0,1)-scale entries (GUE-type).
ComplexMatrix sample_hermitian(int n, SplitMix64& rng);

/// Functional calculus f(M) for self-adjoint M.
ComplexMatrix apply_spectral(const ComplexMatrix& m, const std::function<double(double)>& f);

/// Sum of f over the spectrum of a self-adjoint matrix.
double trace_function(const ComplexMatrix& m, const std::function<double(double)>& f);

}  // namespace projlab
