#include "mobius/certified.hpp"

namespace mobius {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict verdict_from_margin(double margin, double error) {
    if (margin > error || (error == 0.0 && margin >= 0.0)) return Verdict::pass;
    if (margin < -error) return Verdict::fail;
    return Verdict::inconclusive;
}

Verdict certify_le(Estimate lhs, Estimate rhs) {
    return verdict_from_margin(rhs.value - lhs.value, lhs.error + rhs.error);
}

Verdict certify_lt(Estimate lhs, Estimate rhs) {
    const double margin = rhs.value - lhs.value;
    const double error = lhs.error + rhs.error;
    if (margin > error && margin > 0.0) return Verdict::pass;
    if (margin < -error || (error == 0.0 && margin == 0.0)) return Verdict::fail;
    return Verdict::inconclusive;
}

Verdict worst(Verdict a, Verdict b) {
    if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::pass;
}

}  // namespace mobius
