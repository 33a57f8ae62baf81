#pragma once

#include <charconv>
#include <complex>
#include <string>

namespace mobius {

/// Shortest decimal string that reads back to the same double.
inline std::string format_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// a, or a+bi / a-bi.
inline std::string format_complex(std::complex<double> z) {
    if (z.imag() == 0.0) return format_real(z.real());
    std::string im = format_real(z.imag());
    if (im[0] != '-') im = "+" + im;
    return format_real(z.real()) + im + "i";
}

}  // namespace mobius
