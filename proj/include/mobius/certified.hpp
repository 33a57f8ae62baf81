#pragma once

#include <string_view>

#include "mobius/estimate.hpp"

namespace mobius {

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

/// Three-way verdict for a claim whose slack is `margin` (>= 0 means the
/// claim holds) computed with absolute error at most `error`.
Verdict verdict_from_margin(double margin, double error);

/// Claim lhs <= rhs.
Verdict certify_le(Estimate lhs, Estimate rhs);

/// Claim lhs < rhs. An exact tie is a failure.
Verdict certify_lt(Estimate lhs, Estimate rhs);

/// fail beats inconclusive beats pass.
Verdict worst(Verdict a, Verdict b);

}  // namespace mobius
