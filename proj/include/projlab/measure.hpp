#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace projlab {

/// How the interior support of an IntervalMeasure is to be read:
///  - DensityGrid: quadrature nodes of a smooth density (cell widths matter),
///  - Samples:     raw sample atoms standing in for an unknown smooth law,
///  - Atoms:       a genuinely atomic measure.
/// Log-energy evaluation branches on this.
enum class MeasureKind { DensityGrid, Samples, Atoms };

/// Finite positive measure on [0,1]: weights at the endpoints plus strictly
/// increasing interior support points with positive weights.
class IntervalMeasure {
public:
    static IntervalMeasure zero(MeasureKind kind = MeasureKind::Atoms);
    static IntervalMeasure density_grid(std::vector<double> x, std::vector<double> w,
                                        double atom0 = 0.0, double atom1 = 0.0);
    static IntervalMeasure samples(std::vector<double> x, std::vector<double> w,
                                   double atom0 = 0.0, double atom1 = 0.0);
    static IntervalMeasure atoms(std::vector<double> x, std::vector<double> w,
                                 double atom0 = 0.0, double atom1 = 0.0);
    static IntervalMeasure make(MeasureKind kind, std::vector<double> x, std::vector<double> w,
                                double atom0 = 0.0, double atom1 = 0.0);

    MeasureKind kind() const { return kind_; }
    double atom0() const { return atom0_; }
    double atom1() const { return atom1_; }
    const std::vector<double>& support() const { return x_; }
    const std::vector<double>& weights() const { return w_; }
    std::size_t size() const { return x_.size(); }

    double interior_mass() const;
    double total_mass() const { return atom0_ + atom1_ + interior_mass(); }

    /// Integral of f over the interior support only.
    double integrate(const std::function<double(double)>& f) const;
    /// Integral of f over the whole measure, endpoints included.
    double integrate_full(const std::function<double(double)>& f) const;
    /// Interior moment of order r.
    double moment(int r) const;

    /// Image measure under x -> 1-x (endpoint weights swap).
    IntervalMeasure reflected() const;

    /// Sorted (position, weight) pairs over the full measure, endpoints
    /// included; the discrete quantile function is read off this list.
    std::vector<std::pair<double, double>> sorted_atoms() const;

    /// Quadrature cell width around each node, from neighbor gaps. Only
    /// meaningful for DensityGrid measures.
    std::vector<double> cell_widths() const;

private:
    IntervalMeasure(MeasureKind kind, std::vector<double> x, std::vector<double> w,
                    double atom0, double atom1);
    MeasureKind kind_;
    double atom0_, atom1_;
    std::vector<double> x_, w_;
};

/// Scalar field on [0,1] with optional derivative information. The entropy
/// and transport checks need sup-norm bounds on psi' and psi''; samplers only
/// need evaluation.
struct FunctionOnUnitInterval {
    std::function<double(double)> f;
    std::optional<double> d1_bound;
    std::optional<double> d2_bound;
    std::optional<bool> nondecreasing;
    std::function<double(double)> derivative;  // optional, may be empty

    double operator()(double x) const { return f(x); }

    static FunctionOnUnitInterval zero();
    static FunctionOnUnitInterval constant(double c);
    static FunctionOnUnitInterval identity();
    static FunctionOnUnitInterval power(double p);         // x^p on [0,1]
    static FunctionOnUnitInterval affine(double a, double b);  // a + b x
    static FunctionOnUnitInterval scaled(double c);        // c x
    /// Piecewise-linear interpolant through (x_i, y_i), clamped outside.
    static FunctionOnUnitInterval interpolant(std::vector<double> x, std::vector<double> y);
};

/// Divided quotient (psi(x)-psi(y))/(x-y), extended across the diagonal by
/// the derivative (analytic if supplied, centered difference otherwise).
double divided_quotient(const FunctionOnUnitInterval& psi, double x, double y);

/// Throws InvalidField unless psi is finite at the probe points and
/// nondecreasing along the given support.
void check_increasing_on(const FunctionOnUnitInterval& psi, const std::vector<double>& support);

}  // namespace projlab
