#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "tbma/error_estimation.hpp"

namespace tbma::harness {

/// Fixed-precision rendering used in every CSV column; "nan" for missing.
std::string format_number(std::optional<double> value);

void write_error_prob_header(std::ostream& out);
void write_error_prob_row(std::ostream& out, DetectionMode mode, const ErrorProbEstimate& estimate,
                          std::uint64_t seed);

}  // namespace tbma::harness
