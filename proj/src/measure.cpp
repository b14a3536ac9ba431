#include "projlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "projlab/errors.hpp"

namespace projlab {

IntervalMeasure::IntervalMeasure(MeasureKind kind, std::vector<double> x, std::vector<double> w,
                                 double atom0, double atom1)
    : kind_(kind), atom0_(atom0), atom1_(atom1), x_(std::move(x)), w_(std::move(w)) {
    if (x_.size() != w_.size()) {
        throw ContractError("IntervalMeasure: support/weight length mismatch");
    }
    if (atom0_ < 0 || atom1_ < 0) {
        throw ContractError("IntervalMeasure: negative endpoint weight");
    }
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!(x_[i] > 0.0 && x_[i] < 1.0)) {
            throw ContractError("IntervalMeasure: interior support point outside (0,1)");
        }
        if (!(w_[i] > 0.0) || !std::isfinite(w_[i])) {
            throw ContractError("IntervalMeasure: interior weight must be positive and finite");
        }
    }
    // sort and merge coincident points so the support is strictly increasing
    std::vector<std::size_t> order(x_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x_[a] < x_[b]; });
    std::vector<double> xs, ws;
    xs.reserve(x_.size());
    ws.reserve(w_.size());
    for (std::size_t idx : order) {
        if (!xs.empty() && x_[idx] == xs.back()) {
            ws.back() += w_[idx];
        } else {
            xs.push_back(x_[idx]);
            ws.push_back(w_[idx]);
        }
    }
    x_ = std::move(xs);
    w_ = std::move(ws);
}

IntervalMeasure IntervalMeasure::zero(MeasureKind kind) {
    return IntervalMeasure(kind, {}, {}, 0.0, 0.0);
}
IntervalMeasure IntervalMeasure::density_grid(std::vector<double> x, std::vector<double> w,
                                              double atom0, double atom1) {
    return IntervalMeasure(MeasureKind::DensityGrid, std::move(x), std::move(w), atom0, atom1);
}
IntervalMeasure IntervalMeasure::samples(std::vector<double> x, std::vector<double> w,
                                         double atom0, double atom1) {
    return IntervalMeasure(MeasureKind::Samples, std::move(x), std::move(w), atom0, atom1);
}
IntervalMeasure IntervalMeasure::atoms(std::vector<double> x, std::vector<double> w,
                                       double atom0, double atom1) {
    return IntervalMeasure(MeasureKind::Atoms, std::move(x), std::move(w), atom0, atom1);
}
IntervalMeasure IntervalMeasure::make(MeasureKind kind, std::vector<double> x,
                                      std::vector<double> w, double atom0, double atom1) {
    return IntervalMeasure(kind, std::move(x), std::move(w), atom0, atom1);
}

double IntervalMeasure::interior_mass() const {
    return std::accumulate(w_.begin(), w_.end(), 0.0);
}

double IntervalMeasure::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
        s += w_[i] * f(x_[i]);
    }
    return s;
}

double IntervalMeasure::integrate_full(const std::function<double(double)>& f) const {
    double s = integrate(f);
    if (atom0_ > 0) s += atom0_ * f(0.0);
    if (atom1_ > 0) s += atom1_ * f(1.0);
    return s;
}

double IntervalMeasure::moment(int r) const {
    return integrate([r](double x) { return std::pow(x, r); });
}

IntervalMeasure IntervalMeasure::reflected() const {
    std::vector<double> x(x_.size()), w(w_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
        x[x_.size() - 1 - i] = 1.0 - x_[i];
        w[x_.size() - 1 - i] = w_[i];
    }
    return IntervalMeasure(kind_, std::move(x), std::move(w), atom1_, atom0_);
}

std::vector<std::pair<double, double>> IntervalMeasure::sorted_atoms() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(x_.size() + 2);
    if (atom0_ > 0) out.emplace_back(0.0, atom0_);
    for (std::size_t i = 0; i < x_.size(); ++i) {
        out.emplace_back(x_[i], w_[i]);
    }
    if (atom1_ > 0) out.emplace_back(1.0, atom1_);
    return out;
}

std::vector<double> IntervalMeasure::cell_widths() const {
    const std::size_t n = x_.size();
    std::vector<double> d(n, 0.0);
    if (n == 1) {
        d[0] = std::min(x_[0], 1.0 - x_[0]);
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = (x_[i + 1] - x_[i - 1]) / 2.0;
    }
    if (n >= 2) {
        d[0] = x_[1] - x_[0];
        d[n - 1] = x_[n - 1] - x_[n - 2];
    }
    return d;
}

FunctionOnUnitInterval FunctionOnUnitInterval::zero() {
    return {[](double) { return 0.0; }, 0.0, 0.0, true, [](double) { return 0.0; }};
}
FunctionOnUnitInterval FunctionOnUnitInterval::constant(double c) {
    return {[c](double) { return c; }, 0.0, 0.0, true, [](double) { return 0.0; }};
}
FunctionOnUnitInterval FunctionOnUnitInterval::identity() {
    return {[](double x) { return x; }, 1.0, 0.0, true, [](double) { return 1.0; }};
}
FunctionOnUnitInterval FunctionOnUnitInterval::power(double p) {
    if (!(p > 0)) {
        throw InvalidField("power field requires a positive exponent");
    }
    FunctionOnUnitInterval g;
    g.f = [p](double x) { return std::pow(x, p); };
    g.nondecreasing = true;
    g.derivative = [p](double x) { return p * std::pow(x, p - 1.0); };
    if (p >= 1.0) {
        g.d1_bound = p;
        if (p >= 2.0) g.d2_bound = p * (p - 1.0);
    }
    return g;
}
FunctionOnUnitInterval FunctionOnUnitInterval::affine(double a, double b) {
    return {[a, b](double x) { return a + b * x; }, std::abs(b), 0.0, b >= 0.0,
            [b](double) { return b; }};
}
FunctionOnUnitInterval FunctionOnUnitInterval::scaled(double c) {
    return affine(0.0, c);
}
FunctionOnUnitInterval FunctionOnUnitInterval::interpolant(std::vector<double> x,
                                                           std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidField("interpolant needs at least two nodes");
    }
    FunctionOnUnitInterval g;
    g.f = [x = std::move(x), y = std::move(y)](double t) {
        if (t <= x.front()) return y.front();
        if (t >= x.back()) return y.back();
        const auto it = std::upper_bound(x.begin(), x.end(), t);
        const std::size_t j = static_cast<std::size_t>(it - x.begin());
        const double s = (t - x[j - 1]) / (x[j] - x[j - 1]);
        return y[j - 1] + s * (y[j] - y[j - 1]);
    };
    return g;
}

double divided_quotient(const FunctionOnUnitInterval& psi, double x, double y) {
    if (std::abs(x - y) >= 1e-7) {
        return (psi(x) - psi(y)) / (x - y);
    }
    const double m = (x + y) / 2.0;
    if (psi.derivative) {
        return psi.derivative(m);
    }
    const double h = std::min({1e-6, m / 2.0, (1.0 - m) / 2.0});
    if (h <= 0) {
        // midpoint pinned to an endpoint; fall back to a one-sided difference
        const double hh = 1e-6;
        return m < 0.5 ? (psi(m + hh) - psi(m)) / hh : (psi(m) - psi(m - hh)) / hh;
    }
    return (psi(m + h) - psi(m - h)) / (2.0 * h);
}

void check_increasing_on(const FunctionOnUnitInterval& psi, const std::vector<double>& support) {
    if (psi.nondecreasing.has_value() && !*psi.nondecreasing) {
        throw InvalidField("field is declared non-monotone");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (double x : support) {
        const double v = psi(x);
        if (!std::isfinite(v)) {
            throw InvalidField("field is not finite on the support");
        }
        if (v < prev) {
            throw InvalidField("field is not nondecreasing on the support");
        }
        prev = v;
    }
}

}  // namespace projlab
