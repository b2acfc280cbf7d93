#include "csv.hpp"

#include <cmath>
#include <cstdio>

namespace tbma::harness {

std::string format_number(std::optional<double> value) {
  if (!value || std::isnan(*value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", *value);
  return buf;
}

void write_error_prob_header(std::ostream& out) { out << "mode,L,trials,p_hat,ci_lo,ci_hi,seed\n"; }

void write_error_prob_row(std::ostream& out, DetectionMode mode, const ErrorProbEstimate& estimate,
                          std::uint64_t seed) {
  out << to_string(mode) << ',' << estimate.L << ',' << estimate.trials << ','
      << format_number(estimate.p_hat) << ',' << format_number(estimate.ci_lo) << ','
      << format_number(estimate.ci_hi) << ',' << seed << '\n';
}

}  // namespace tbma::harness
