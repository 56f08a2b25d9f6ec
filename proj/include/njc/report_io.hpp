#pragma once

#include <string>

#include <json.hpp>

#include "njc/analyzer.hpp"
#include "njc/closed_forms.hpp"
#include "njc/hadamard.hpp"
#include "njc/optimizer.hpp"

namespace njc {

// Bumped whenever a field is renamed or removed.
inline constexpr const char* kReportSchema = "njc-report/1";

using Json = nlohmann::ordered_json;

// p as a JSON value: a number, or the string "inf".
Json exponent_json(const Exponent& p);
Exponent exponent_from_json(const Json& j);

Json estimate_json(const ConstantEstimate& est);
Json closed_form_json(const ClosedFormValue& cf);
Json checks_json(const CheckReport& report);
Json matrix_json(const SignMatrix& m);

// Fixed column order:
//   type,name,n,p,d,kind,expected_lo,expected_hi,observed,gap,tolerance,status,provenance
// `type` is "row" for table rows and "check" for checks; `observed` joins
// several values with ';'; `status` is pass, fail or skip.
std::string checks_csv(const CheckReport& report);
inline constexpr const char* kChecksCsvHeader =
    "type,name,n,p,d,kind,expected_lo,expected_hi,observed,gap,tolerance,status,provenance";

// kind,n,p,d,value,bound_status,method,provenance
std::string estimate_csv(const ConstantEstimate& est, int n, const Space& space);
inline constexpr const char* kEstimateCsvHeader = "kind,n,p,d,value,bound_status,method,provenance";

std::string matrix_csv(const SignMatrix& m);

std::string checks_text(const CheckReport& report);

// 17 significant digits, as used in CSV.
std::string format_exact(double x);
// 7 significant digits, for text output.
std::string format_display(double x);

}  // namespace njc
