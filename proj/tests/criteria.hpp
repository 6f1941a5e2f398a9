#pragma once

#include <optional>
#include <string>

#include "support.hpp"

namespace fps::testing {

/// Each check returns a failure description, or nothing on success.
using Failure = std::optional<std::string>;

Failure check_de_case(const DeCase& c, double budget_seconds);
Failure check_sin5();
Failure check_re_case(const ReCase& c);
Failure check_retode_example();
Failure check_series_case(const SeriesCase& c);
Failure check_initial_value_trace();
Failure check_findrec_case(const FindrecCase& c, unsigned seed);
Failure check_convert_case(const ConvertCase& c);

Failure check_oracle_fidelity(const std::string& f, const std::string& x0 = "0");
Failure check_de_re_round_trip(const DeCase& c);
Failure check_differentiation(const std::string& f);
Failure check_random_sum(const std::string& term, unsigned seed);

/// CLI output of every golden case in text and json form.
std::string full_suite_transcript();

}  // namespace fps::testing
