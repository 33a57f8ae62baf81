#pragma once

#include <cmath>
#include <complex>

namespace mobius {

/// Neumaier's variant of Kahan summation. Keeps the running sum and a
/// correction term; also tracks the sum of magnitudes so callers can
/// state an a-posteriori rounding bound.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double initial) : sum_(initial), abs_sum_(std::fabs(initial)) {}

    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_sum_ += std::fabs(x);
        ++count_;
    }

    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }

    double value() const { return sum_ + comp_; }

    /// Sum of |terms| seen so far.
    double magnitude() const { return abs_sum_; }

    /// Bound on the accumulated rounding error of the compensated sum,
    /// assuming each term was exact on entry.
    double rounding_bound() const {
        constexpr double u = 0x1p-53;
        return 2.0 * u * std::fabs(value()) + 2.0 * static_cast<double>(count_) * u * u * abs_sum_;
    }

    /// rounding_bound() plus `term_ulps` units of roundoff per term for
    /// terms that were themselves computed in floating point.
    double error_bound(double term_ulps) const {
        constexpr double u = 0x1p-53;
        return rounding_bound() + term_ulps * u * abs_sum_;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_sum_ = 0.0;
    long long count_ = 0;
};

/// Componentwise compensated sum for complex terms.
class ComplexCompensatedSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }

    ComplexCompensatedSum& operator+=(std::complex<double> z) {
        add(z);
        return *this;
    }

    std::complex<double> value() const { return {re_.value(), im_.value()}; }
    double magnitude() const { return re_.magnitude() + im_.magnitude(); }
    double rounding_bound() const { return re_.rounding_bound() + im_.rounding_bound(); }
    double error_bound(double term_ulps) const {
        return re_.error_bound(term_ulps) + im_.error_bound(term_ulps);
    }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

}  // namespace mobius
