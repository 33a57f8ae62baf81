#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobius/arith_table.hpp"
#include "mobius/estimate.hpp"
#include "mobius/modulus.hpp"

namespace mobius {

enum class ArithmeticKind { mobius, mobius_over_id, liouville, liouville_over_id, mangoldt };
enum class WeightKind { one, alternating, alternating_over_id };

/// coef * t^power * log^log_power(t), with log_power in {0, 1}.
struct PowerLogTerm {
    cplx coef;
    cplx power;
    int log_power = 0;
};

/// The kernel h on (0, 1]: either the Dirac mass at 1 or a finite sum of
/// power-log terms.
struct Kernel {
    std::string label;
    bool dirac = false;
    std::vector<PowerLogTerm> terms;

    static Kernel dirac_at_1();
    static Kernel one();
    static Kernel two_id();
    static Kernel inverse_id();
    /// coef * u^exponent.
    static Kernel power(cplx coef, cplx exponent);

    cplx operator()(double u) const;
};

/// The primitive H on [1, infinity).
struct Primitive {
    std::string label;
    std::vector<PowerLogTerm> terms;

    static Primitive id();
    /// t^exponent.
    static Primitive power(cplx exponent);
    /// t log t - log t + gamma t.
    static Primitive id_log_variant();
    /// t^exponent log t.
    static Primitive power_log(cplx exponent);

    cplx operator()(double t) const;
};

struct IdentitySpec {
    std::string name;
    ArithmeticKind f = ArithmeticKind::mobius;
    std::optional<Modulus> q;  // restricts f to (n, q) = 1
    WeightKind g = WeightKind::one;
    Kernel h;
    Primitive H;
};

struct OfdResult {
    cplx lhs;
    cplx rhs;
    cplx rhs_first;   // integral against h(1/t)/t
    cplx rhs_second;  // integral against H'(t) - (1/t) sum g(n) h(n/t)
    double residual = 0.0;
    /// Rounding budget of the piecewise evaluation.
    double budget = 0.0;
    std::size_t pieces = 0;
};

/// Evaluates both sides of the two-integral identity. Every integral is
/// split at the jumps of the step functions and integrated in closed form.
class OfdEvaluator {
public:
    /// Precomputes prefix sums up to floor(max_X). Throws CapacityError
    /// when max_X exceeds the table or the piece cap.
    OfdEvaluator(const ArithmeticTable& table, IdentitySpec spec, double max_X,
                 std::size_t piece_cap = 20'000'000);

    OfdResult evaluate(double X) const;

    double f(std::uint64_t n) const { return f_[n]; }
    double g(std::uint64_t n) const { return g_[n]; }
    /// S_f and S_{f*g} at integer arguments.
    double S_f(std::uint64_t n) const { return Sf_[n]; }
    double S_fg(std::uint64_t n) const { return Sfg_[n]; }
    const IdentitySpec& spec() const { return spec_; }

private:
    IdentitySpec spec_;
    std::uint64_t limit_;
    std::size_t piece_cap_;
    std::vector<double> f_, g_, Sf_, Sfg_;
};

OfdResult evaluate_ofd(const ArithmeticTable& table, const IdentitySpec& spec, double X);

/// Sorted breakpoints {1, X} together with every integer and every X/m
/// inside [1, X].
std::vector<double> ofd_breakpoints(double X);

/// integral_{t0}^{t1} t^p log^j t dt for j in {0, 1}, stable as p -> -1.
cplx integral_power_log(cplx p, int j, double t0, double t1);

enum class CatalogName { meissel, elmarraki, macleod, euler_gamma, liouville, daval_general };

struct IdentityRow {
    std::string name;
    double X = 1.0;
    cplx lhs;
    cplx rhs;
    double residual = 0.0;
    double ofd_residual = 0.0;
};

/// The raw identity instance behind each named corollary.
IdentitySpec catalog_spec(CatalogName name, const Kernel& h = Kernel::one());

/// Printed corollary rows plus the residual of the generating instance.
/// Rows report; they never assert.
std::vector<IdentityRow> catalog_check(const ArithmeticTable& table, CatalogName name, double X,
                                       const Kernel& h = Kernel::one());

/// Every raw instance shipped with the library, including the kernels
/// behind the complex-parameter estimates at a few sample points.
std::vector<IdentitySpec> ofd_catalog();

/// Kernel pairs used for m_q(X; s) and its log-weighted variant.
IdentitySpec mqdex_kernel(cplx s, const Modulus& q);
IdentitySpec mcheckqdex_kernel(cplx s, const Modulus& q);

}  // namespace mobius
