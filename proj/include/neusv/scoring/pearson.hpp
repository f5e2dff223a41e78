#pragma once

#include <span>

namespace neusv::scoring {

/// Sample Pearson correlation coefficient, clamped to [-1, 1].
///
/// Throws ErrorCode::LengthMismatch unless both spans have the same length
/// of at least two, and ErrorCode::ZeroVariance if either is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

} // namespace neusv::scoring
