#include "mobius/identity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mobius/analytic.hpp"
#include "mobius/error.hpp"
#include "mobius/summation.hpp"
#include "mobius/sums.hpp"

namespace mobius {

namespace {

constexpr double kUnit = 0x1p-53;

cplx phi1(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx term = 1.0, sum = 1.0;
        for (int k = 1; k < 30; ++k) {
            term *= z / double(k + 1);
            sum += term;
        }
        return sum;
    }
    return expm1(z) / z;
}

// integral_0^1 x e^{zx} dx
cplx psi1(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx power = 1.0, sum = 0.5;
        double fact = 1.0;
        for (int k = 1; k < 30; ++k) {
            power *= z;
            fact *= k;
            sum += power / (fact * (k + 2));
        }
        return sum;
    }
    return ((z - 1.0) * std::exp(z) + 1.0) / (z * z);
}

cplx term_value(const PowerLogTerm& term, double t) {
    const double L = std::log(t);
    cplx v = term.coef * std::exp(term.power * L);
    if (term.log_power == 1) v *= L;
    return v;
}

cplx sum_terms(const std::vector<PowerLogTerm>& terms, double t) {
    cplx v = 0.0;
    for (const auto& term : terms) v += term_value(term, t);
    return v;
}

double arithmetic_value(const ArithmeticTable& table, ArithmeticKind kind, std::uint64_t n) {
    switch (kind) {
        case ArithmeticKind::mobius: return table.mu(n);
        case ArithmeticKind::mobius_over_id: return table.mu(n) / double(n);
        case ArithmeticKind::liouville: return table.liouville(n);
        case ArithmeticKind::liouville_over_id: return table.liouville(n) / double(n);
        case ArithmeticKind::mangoldt: return table.mangoldt(n);
    }
    return 0.0;
}

double weight_value(WeightKind kind, std::uint64_t n) {
    const double sign = n % 2 ? 1.0 : -1.0;
    switch (kind) {
        case WeightKind::one: return 1.0;
        case WeightKind::alternating: return sign;
        case WeightKind::alternating_over_id: return sign / double(n);
    }
    return 0.0;
}

std::string fmt(cplx z) {
    char buf[64];
    if (z.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%g", z.real());
    else
        std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
    return buf;
}

// Running values of M, m and the Liouville prefix on 0..N.
struct Prefixes {
    std::vector<double> M, m, L;
};

Prefixes prefixes(const ArithmeticTable& table, std::uint64_t N) {
    Prefixes p;
    p.M.assign(N + 1, 0.0);
    p.m.assign(N + 1, 0.0);
    p.L.assign(N + 1, 0.0);
    CompensatedSum m;
    for (std::uint64_t n = 1; n <= N; ++n) {
        p.M[n] = p.M[n - 1] + table.mu(n);
        p.L[n] = p.L[n - 1] + table.liouville(n);
        m += table.mu(n) / double(n);
        p.m[n] = m.value();
    }
    return p;
}

std::uint64_t floor_mid(double a, double b) { return static_cast<std::uint64_t>(std::floor(0.5 * (a + b))); }

IdentityRow make_row(std::string name, double X, cplx lhs, cplx rhs, double ofd_residual) {
    return {std::move(name), X, lhs, rhs, std::abs(lhs - rhs), ofd_residual};
}

}  // namespace

Kernel Kernel::dirac_at_1() { return {"dirac_at_1", true, {}}; }
Kernel Kernel::one() { return {"one", false, {{1.0, 0.0, 0}}}; }
Kernel Kernel::two_id() { return {"two_id", false, {{2.0, 1.0, 0}}}; }
Kernel Kernel::inverse_id() { return {"inverse_id", false, {{1.0, -1.0, 0}}}; }
Kernel Kernel::power(cplx coef, cplx exponent) {
    return {"power(" + fmt(coef) + "*u^" + fmt(exponent) + ")", false, {{coef, exponent, 0}}};
}

cplx Kernel::operator()(double u) const {
    if (dirac) throw DomainError("the Dirac kernel has no pointwise values");
    return sum_terms(terms, u);
}

Primitive Primitive::id() { return {"id", {{1.0, 1.0, 0}}}; }
Primitive Primitive::power(cplx exponent) { return {"power(t^" + fmt(exponent) + ")", {{1.0, exponent, 0}}}; }
Primitive Primitive::id_log_variant() {
    return {"id_log_variant", {{1.0, 1.0, 1}, {-1.0, 0.0, 1}, {std::numbers::egamma, 1.0, 0}}};
}
Primitive Primitive::power_log(cplx exponent) {
    return {"power_log(t^" + fmt(exponent) + " log t)", {{1.0, exponent, 1}}};
}

cplx Primitive::operator()(double t) const { return sum_terms(terms, t); }

cplx integral_power_log(cplx p, int j, double t0, double t1) {
    if (j != 0 && j != 1) throw DomainError("integral_power_log supports log powers 0 and 1");
    if (t1 == t0) return 0.0;
    if (t1 < t0) return -integral_power_log(p, j, t1, t0);
    const cplx w = p + 1.0;
    const double L0 = std::log(t0);
    const double D = std::log(t1 / t0);
    const cplx base = std::exp(w * L0);
    const cplx z = w * D;
    if (j == 0) return base * D * phi1(z);
    return base * (L0 * D * phi1(z) + D * D * psi1(z));
}

std::vector<double> ofd_breakpoints(double X) {
    const auto N = floor_cut(X);
    std::vector<double> pts;
    pts.reserve(2 * N + 2);
    pts.push_back(1.0);
    for (std::uint64_t k = 2; k <= N; ++k) pts.push_back(double(k));
    for (std::uint64_t m = 1; m <= N; ++m) pts.push_back(X / double(m));
    pts.push_back(X);
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    out.reserve(pts.size());
    for (double t : pts) {
        if (t < 1.0 || t > X) continue;
        if (!out.empty() && t - out.back() <= 4.0 * kUnit * t) continue;
        out.push_back(t);
    }
    if (out.back() != X) out.back() = X;
    return out;
}

OfdEvaluator::OfdEvaluator(const ArithmeticTable& table, IdentitySpec spec, double max_X,
                           std::size_t piece_cap)
    : spec_(std::move(spec)), limit_(floor_cut(max_X)), piece_cap_(piece_cap) {
    table.require(limit_);
    if (2 * limit_ + 2 > piece_cap_)
        throw CapacityError("identity evaluation at X = " + std::to_string(limit_) +
                            " exceeds the breakpoint cap " + std::to_string(piece_cap_));
    const auto N = limit_;
    f_.assign(N + 1, 0.0);
    g_.assign(N + 1, 0.0);
    Sf_.assign(N + 1, 0.0);
    Sfg_.assign(N + 1, 0.0);
    CompensatedSum running;
    for (std::uint64_t n = 1; n <= N; ++n) {
        double v = arithmetic_value(table, spec_.f, n);
        if (spec_.q && !spec_.q->coprime_to(n)) v = 0.0;
        f_[n] = v;
        g_[n] = weight_value(spec_.g, n);
        running += v;
        Sf_[n] = running.value();
    }
    std::vector<double> conv(N + 1, 0.0);
    for (std::uint64_t d = 1; d <= N; ++d) {
        if (f_[d] == 0.0) continue;
        for (std::uint64_t e = 1; e <= N / d; ++e) conv[d * e] += f_[d] * g_[e];
    }
    CompensatedSum cs;
    for (std::uint64_t n = 1; n <= N; ++n) {
        cs += conv[n];
        Sfg_[n] = cs.value();
    }
}

OfdResult OfdEvaluator::evaluate(double X) const {
    if (!(X >= 1.0)) throw DomainError("identity evaluation needs X >= 1");
    const auto N = floor_cut(X);
    if (N > limit_)
        throw CapacityError("X = " + std::to_string(N) + " exceeds the evaluator limit " + std::to_string(limit_));
    const auto& H = spec_.H;
    const auto& h = spec_.h;

    ComplexCompensatedSum lhs;
    for (std::uint64_t n = 1; n <= N; ++n)
        if (f_[n] != 0.0) lhs += f_[n] * H(X / double(n));
    lhs += -H(1.0) * Sf_[N];

    ComplexCompensatedSum first;
    if (h.dirac) {
        first += Sfg_[N];
    } else {
        for (std::uint64_t m = 1; m <= N; ++m) {
            const double t1 = X / double(m);
            const double t0 = std::max(1.0, X / double(m + 1));
            if (!(t1 > t0) || Sfg_[m] == 0.0) continue;
            cplx piece = 0.0;
            for (const auto& term : h.terms) {
                const cplx I = integral_power_log(-term.power - 1.0, term.log_power, t0, t1);
                piece += term.coef * (term.log_power ? -I : I);
            }
            first += Sfg_[m] * piece;
        }
    }

    const auto bps = ofd_breakpoints(X);
    ComplexCompensatedSum second;
    // Running prefixes G0 = sum g(n) n^a, G1 = sum g(n) n^a log n per kernel term.
    std::vector<cplx> G0(h.terms.size(), 0.0), G1(h.terms.size(), 0.0);
    std::uint64_t nf_cur = 0;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double t0 = bps[i], t1 = bps[i + 1];
        const auto nf = floor_mid(t0, t1);
        const auto m = static_cast<std::uint64_t>(std::floor(X / (0.5 * (t0 + t1))));
        if (!h.dirac) {
            while (nf_cur < nf) {
                ++nf_cur;
                const double L = std::log(double(nf_cur));
                for (std::size_t k = 0; k < h.terms.size(); ++k) {
                    const cplx v = g_[nf_cur] * std::exp(h.terms[k].power * L);
                    G0[k] += v;
                    G1[k] += v * L;
                }
            }
        }
        const double S = Sf_[std::min(m, N)];
        if (S == 0.0) continue;
        cplx piece = H(t1) - H(t0);
        if (!h.dirac) {
            for (std::size_t k = 0; k < h.terms.size(); ++k) {
                const auto& term = h.terms[k];
                const cplx p = -term.power - 1.0;
                const cplx I0 = integral_power_log(p, 0, t0, t1);
                if (term.log_power == 0) {
                    piece -= term.coef * G0[k] * I0;
                } else {
                    const cplx I1 = integral_power_log(p, 1, t0, t1);
                    piece -= term.coef * (G1[k] * I0 - G0[k] * I1);
                }
            }
        }
        second += S * piece;
    }
    if (h.dirac)
        for (std::uint64_t n = 1; n <= N; ++n) second += -g_[n] * Sf_[N / n];

    OfdResult r;
    r.lhs = lhs.value();
    r.rhs_first = first.value();
    r.rhs_second = second.value();
    r.rhs = r.rhs_first + r.rhs_second;
    r.residual = std::abs(r.lhs - r.rhs);
    r.budget = 256.0 * kUnit * (lhs.magnitude() + first.magnitude() + second.magnitude()) + 1e-300;
    r.pieces = bps.size() - 1;
    return r;
}

OfdResult evaluate_ofd(const ArithmeticTable& table, const IdentitySpec& spec, double X) {
    return OfdEvaluator(table, spec, X).evaluate(X);
}

IdentitySpec catalog_spec(CatalogName name, const Kernel& h) {
    switch (name) {
        case CatalogName::meissel:
            return {"meissel", ArithmeticKind::mobius, std::nullopt, WeightKind::one, Kernel::dirac_at_1(), Primitive::id()};
        case CatalogName::elmarraki:
            return {"elmarraki", ArithmeticKind::mobius, std::nullopt, WeightKind::one, Kernel::one(), Primitive::id()};
        case CatalogName::macleod:
            return {"macleod", ArithmeticKind::mobius, std::nullopt, WeightKind::one, Kernel::two_id(), Primitive::id()};
        case CatalogName::euler_gamma:
            return {"euler_gamma", ArithmeticKind::mobius, std::nullopt, WeightKind::one, Kernel::inverse_id(),
                    Primitive::id_log_variant()};
        case CatalogName::liouville:
            return {"liouville", ArithmeticKind::liouville, std::nullopt, WeightKind::one, Kernel::one(), Primitive::id()};
        case CatalogName::daval_general:
            return {"daval_general[" + h.label + "]", ArithmeticKind::mobius, std::nullopt, WeightKind::one, h,
                    Primitive::id()};
    }
    throw DomainError("unknown catalog entry");
}

std::vector<IdentityRow> catalog_check(const ArithmeticTable& table, CatalogName name, double X, const Kernel& h) {
    if (!(X >= 1.0)) throw DomainError("catalog_check needs X >= 1");
    const auto spec = catalog_spec(name, h);
    const auto raw = evaluate_ofd(table, spec, X);
    const auto N = floor_cut(X);
    const auto P = prefixes(table, N);
    const double M = P.M[N], m = P.m[N];
    std::vector<IdentityRow> rows;

    switch (name) {
        case CatalogName::meissel: {
            CompensatedSum lhs;
            for (std::uint64_t n = 1; n <= N; ++n) {
                if (!table.mu(n)) continue;
                const double y = X / double(n);
                lhs += table.mu(n) * (y - std::floor(y));
            }
            rows.push_back(make_row("meissel", X, lhs.value(), -1.0 + X * m, raw.residual));
            break;
        }
        case CatalogName::elmarraki: {
            const auto bps = ofd_breakpoints(X);
            CompensatedSum lhs;
            for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
                const double t0 = bps[i], t1 = bps[i + 1];
                const double mid = 0.5 * (t0 + t1);
                const double fl = std::floor(X / mid);
                lhs += fl * P.M[floor_mid(t0, t1)] * std::log(t1 / t0);
            }
            rows.push_back(make_row("elmarraki", X, lhs.value(), std::log(X), raw.residual));
            break;
        }
        case CatalogName::macleod: {
            CompensatedSum lhs;
            for (std::uint64_t n = 1; n <= N; ++n) {
                if (!table.mu(n)) continue;
                const double y = X / double(n);
                const double fr = y - std::floor(y);
                lhs += table.mu(n) * (fr * fr - fr) / y;
            }
            rows.push_back(make_row("macleod", X, lhs.value(), X * m - M - 2.0 + 2.0 / X, raw.residual));
            break;
        }
        case CatalogName::euler_gamma: {
            constexpr double g = std::numbers::egamma;
            CompensatedSum lhs;
            for (std::uint64_t n = 1; n <= N; ++n)
                if (table.mu(n)) lhs += table.mu(n) / double(n) * std::log(X / double(n));
            lhs += g * (m - M / X);
            const auto bps = ofd_breakpoints(X);
            CompensatedSum integral;
            CompensatedSum harmonic;
            std::uint64_t nf_cur = 0;
            for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
                const double t0 = bps[i], t1 = bps[i + 1];
                const auto nf = floor_mid(t0, t1);
                while (nf_cur < nf) harmonic += 1.0 / double(++nf_cur);
                const auto k = static_cast<std::uint64_t>(std::floor(X / (0.5 * (t0 + t1))));
                const double Mv = P.M[std::min(k, N)];
                if (Mv == 0.0) continue;
                const double logs = (t1 * std::log(t1) - t1) - (t0 * std::log(t0) - t0);
                integral += Mv * (logs + (g - harmonic.value()) * (t1 - t0));
            }
            CompensatedSum printed = integral, corrected = integral;
            for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
                const double t0 = bps[i], t1 = bps[i + 1];
                const auto k = static_cast<std::uint64_t>(std::floor(X / (0.5 * (t0 + t1))));
                const double Mv = P.M[std::min(k, N)];
                printed += Mv * std::log(t1 / t0);
                corrected += Mv * (t1 - t0);
            }
            rows.push_back(make_row("euler_gamma (printed)", X, lhs.value(), 1.0 - 1.0 / X + printed.value() / X,
                                    raw.residual));
            rows.push_back(make_row("euler_gamma (corrected)", X, lhs.value(),
                                    1.0 - 1.0 / X + corrected.value() / X, raw.residual));
            break;
        }
        case CatalogName::liouville: {
            CompensatedSum lhs;
            for (std::uint64_t n = 1; n <= N; ++n) lhs += table.liouville(n) / double(n);
            lhs += -P.L[N] / X;
            CompensatedSum A;  // integral of {X/t} dt/t
            for (std::uint64_t k = 1; k <= N; ++k) {
                const double t1 = X / double(k);
                const double t0 = std::max(1.0, X / double(k + 1));
                if (t1 > t0) A += X * (1.0 / t0 - 1.0 / t1) - double(k) * std::log(t1 / t0);
            }
            const auto bps = ofd_breakpoints(X);
            CompensatedSum B;  // integral of L(X/t) {t} dt/t
            for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
                const double t0 = bps[i], t1 = bps[i + 1];
                const auto k = static_cast<std::uint64_t>(std::floor(X / (0.5 * (t0 + t1))));
                const double Lv = P.L[std::min(k, N)];
                if (Lv != 0.0) B += Lv * ((t1 - t0) - double(floor_mid(t0, t1)) * std::log(t1 / t0));
            }
            CompensatedSum Q;  // integral of floor(sqrt(X/t)) dt/t
            for (std::uint64_t k = 1; double(k) * double(k) <= X; ++k) Q += std::log(X / (double(k) * double(k)));
            const double a = A.value() / X, b = B.value() / X;
            rows.push_back(make_row("liouville (printed)", X, lhs.value(), 2.0 / std::sqrt(X) - 1.0 / X - a + b,
                                    raw.residual));
            rows.push_back(make_row("liouville (square-indicator reading)", X, lhs.value(), Q.value() / X + b,
                                    raw.residual));
            rows.push_back(make_row("liouville (floor reading)", X, lhs.value(), 1.0 - 1.0 / X - a + b, raw.residual));
            break;
        }
        case CatalogName::daval_general: {
            const cplx lhs = m - M / X;
            cplx first = 0.0;
            if (h.dirac) {
                first = 1.0 / X;
            } else {
                for (const auto& term : h.terms)
                    first += term.coef * integral_power_log(term.power - 1.0, term.log_power, 1.0 / X, 1.0);
                first /= X;
            }
            const cplx second = raw.rhs_second / X;
            rows.push_back(make_row(spec.name + " (printed)", X, lhs, first - second, raw.residual));
            rows.push_back(make_row(spec.name + " (sign-corrected)", X, lhs, first + second, raw.residual));
            break;
        }
    }
    return rows;
}

IdentitySpec mqdex_kernel(cplx s, const Modulus& q) {
    const cplx C = eta(s, 1e-12).value;
    IdentitySpec spec{"mqdex_kernel(s=" + fmt(s) + ",q=" + std::to_string(q.value()) + ")",
                      ArithmeticKind::mobius_over_id, q, WeightKind::alternating_over_id,
                      Kernel::power((s - 1.0) / C, 1.0 - s), Primitive::power(s - 1.0)};
    return spec;
}

IdentitySpec mcheckqdex_kernel(cplx s, const Modulus& q) {
    const cplx C = eta(s, 1e-12).value;
    const cplx Cp = eta_prime(s, 1e-12).value;
    const cplx K1 = -(s - 1.0) / C;
    const cplx K2 = (C + (s - 1.0) * Cp) / (C * C);
    Kernel h{"K1 u^{1-s} log u + K2 u^{1-s}", false, {{K1, 1.0 - s, 1}, {K2, 1.0 - s, 0}}};
    return {"mcheckqdex_kernel(s=" + fmt(s) + ",q=" + std::to_string(q.value()) + ")",
            ArithmeticKind::mobius_over_id, q, WeightKind::alternating_over_id, h, Primitive::power_log(s - 1.0)};
}

std::vector<IdentitySpec> ofd_catalog() {
    std::vector<IdentitySpec> out;
    for (auto name : {CatalogName::meissel, CatalogName::elmarraki, CatalogName::macleod, CatalogName::euler_gamma,
                      CatalogName::liouville})
        out.push_back(catalog_spec(name));
    out.push_back({"mangoldt", ArithmeticKind::mangoldt, std::nullopt, WeightKind::one, Kernel::one(), Primitive::id()});
    for (const auto& h : {Kernel::inverse_id(), Kernel::power(1.5, 0.5)})
        out.push_back(catalog_spec(CatalogName::daval_general, h));
    out.push_back(mqdex_kernel(1.5, Modulus::from_value(1)));
    out.push_back(mqdex_kernel(cplx(1.0, 2.0), Modulus::from_value(6)));
    out.push_back(mcheckqdex_kernel(1.0, Modulus::from_value(1)));
    out.push_back(mcheckqdex_kernel(1.5, Modulus::from_value(1)));
    out.push_back(mcheckqdex_kernel(cplx(0.8, 5.0), Modulus::from_value(2)));
    out.push_back({"coprime_alternating(q=6)", ArithmeticKind::mobius, Modulus::from_value(6), WeightKind::alternating,
                   Kernel::one(), Primitive::id()});
    out.push_back({"liouville_over_id", ArithmeticKind::liouville_over_id, std::nullopt, WeightKind::one,
                   Kernel::power(1.0, 0.5), Primitive::power(0.5)});
    return out;
}

}  // namespace mobius
