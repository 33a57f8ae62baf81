#pragma once

#include <complex>

namespace mobius {

using cplx = std::complex<double>;

/// A floating-point value together with an upper bound on its absolute error.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

struct ComplexEstimate {
    cplx value{};
    double error = 0.0;
};

}  // namespace mobius
