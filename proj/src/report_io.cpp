#include "njc/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace njc {

namespace {

std::string format_digits(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// JSON has no infinities; they are written as strings.
Json number_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json vector_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number_json(x));
  return out;
}

std::string status(bool skipped, bool pass) { return skipped ? "skip" : (pass ? "pass" : "fail"); }

}  // namespace

std::string format_exact(double x) { return format_digits(x, 17); }
std::string format_display(double x) { return format_digits(x, 7); }

Json exponent_json(const Exponent& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

Exponent exponent_from_json(const Json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  return Exponent(j.get<double>());
}

Json estimate_json(const ConstantEstimate& est) {
  Json out;
  out["kind"] = to_string(est.kind);
  out["value"] = number_json(est.value);
  out["provenance"] = "estimate: " + to_string(est.method);
  out["method"] = to_string(est.method);
  out["bound_status"] = to_string(est.bound_status);
  Json cert = Json::array();
  for (Index j = 0; j < est.certificate.cols(); ++j) {
    Json col = Json::array();
    for (Index i = 0; i < est.certificate.rows(); ++i) col.push_back(est.certificate(i, j));
    cert.push_back(std::move(col));
  }
  out["certificate"] = std::move(cert);
  out["restarts_used"] = est.restarts_used;
  out["iterations_total"] = est.iterations_total;
  out["best_index"] = est.best_index;
  return out;
}

Json closed_form_json(const ClosedFormValue& cf) {
  Json out;
  out["kind"] = to_string(cf.kind);
  out["lo"] = number_json(cf.lo);
  out["hi"] = number_json(cf.hi);
  out["applicability"] = cf.applicability;
  out["provenance"] = "oracle: " + cf.provenance;
  return out;
}

Json checks_json(const CheckReport& report) {
  Json out;
  Json summary;
  summary["passed"] = report.passed();
  summary["failed"] = report.failed();
  summary["skipped"] = report.skipped();
  out["summary"] = std::move(summary);

  Json suite = Json::object();
  for (const auto& [key, value] : report.config) {
    std::visit([&](const auto& v) {
      using V = std::decay_t<decltype(v)>;
      if constexpr (std::is_same_v<V, double>) {
        suite[key] = number_json(v);
      } else {
        suite[key] = v;
      }
    }, value);
  }
  out["suite_config"] = std::move(suite);

  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["name"] = c.name;
    j["status"] = status(c.skipped, c.passed);
    j["observed"] = vector_json(c.observed);
    j["expected"] = {{"lo", number_json(c.expected_lo)}, {"hi", number_json(c.expected_hi)}};
    j["tolerance"] = number_json(c.tolerance);
    j["provenance"] = c.provenance;
    j["note"] = c.note;
    if (!c.verdict.empty()) j["verdict"] = c.verdict;
    checks.push_back(std::move(j));
  }
  out["checks"] = std::move(checks);

  Json table = Json::array();
  for (const auto& r : report.table) {
    Json j;
    j["n"] = r.n;
    j["p"] = exponent_json(r.p);
    j["d"] = r.d;
    j["kind"] = to_string(r.kind);
    j["status"] = status(r.skipped, r.pass);
    if (r.skipped) {
      j["skip_reason"] = r.skip_reason;
    } else {
      j["oracle"] = {{"lo", number_json(r.oracle_lo)},
                     {"hi", number_json(r.oracle_hi)},
                     {"provenance", r.oracle_provenance}};
      j["estimate"] = {{"value", number_json(r.estimate)},
                       {"provenance", r.estimate_provenance},
                       {"bound_status", to_string(r.bound_status)}};
      j["gap"] = number_json(r.gap);
      j["tolerance"] = number_json(r.tolerance);
    }
    table.push_back(std::move(j));
  }
  out["table"] = std::move(table);
  return out;
}

Json matrix_json(const SignMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.n(); ++j) row.push_back(int{m(i, j)});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string checks_csv(const CheckReport& report) {
  std::ostringstream os;
  os << kChecksCsvHeader << '\n';
  for (const auto& r : report.table) {
    os << "row," << csv_field("table row") << ',' << r.n << ',' << r.p.to_string() << ',' << r.d
       << ',' << to_string(r.kind) << ',';
    if (r.skipped) {
      os << ",,,,," << status(true, true) << ',' << csv_field(r.skip_reason) << '\n';
      continue;
    }
    os << format_exact(r.oracle_lo) << ',' << format_exact(r.oracle_hi) << ','
       << format_exact(r.estimate) << ',' << format_exact(r.gap) << ',' << format_exact(r.tolerance)
       << ',' << status(false, r.pass) << ','
       << csv_field(r.oracle_provenance + "; " + r.estimate_provenance) << '\n';
  }
  for (const auto& c : report.checks) {
    std::string observed;
    for (std::size_t i = 0; i < c.observed.size(); ++i) {
      if (i) observed += ';';
      observed += format_exact(c.observed[i]);
    }
    os << "check," << csv_field(c.name) << ",,,,,";
    if (c.skipped) {
      os << ",,,,," << status(true, true) << ',' << csv_field(c.provenance) << '\n';
      continue;
    }
    os << format_exact(c.expected_lo) << ',' << format_exact(c.expected_hi) << ','
       << csv_field(observed) << ",," << format_exact(c.tolerance) << ','
       << status(false, c.passed) << ',' << csv_field(c.provenance) << '\n';
  }
  return os.str();
}

std::string estimate_csv(const ConstantEstimate& est, int n, const Space& space) {
  std::ostringstream os;
  os << kEstimateCsvHeader << '\n'
     << to_string(est.kind) << ',' << n << ',' << space.exponent().to_string() << ','
     << space.dim() << ',' << format_exact(est.value) << ',' << to_string(est.bound_status) << ','
     << to_string(est.method) << ',' << csv_field("estimate: " + to_string(est.method)) << '\n';
  return os.str();
}

std::string matrix_csv(const SignMatrix& m) {
  std::ostringstream os;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.n(); ++j) os << (j ? "," : "") << int{m(i, j)};
    os << '\n';
  }
  return os.str();
}

std::string checks_text(const CheckReport& report) {
  std::ostringstream os;
  for (const auto& r : report.table) {
    os << '[' << status(r.skipped, r.pass) << "] n=" << r.n << " p=" << r.p.to_string()
       << " d=" << r.d << ' ' << to_string(r.kind);
    if (r.skipped) {
      os << ": " << r.skip_reason << '\n';
      continue;
    }
    os << ": estimate " << format_display(r.estimate) << ", oracle ";
    if (r.oracle_lo == r.oracle_hi) {
      os << format_display(r.oracle_lo);
    } else {
      os << '[' << format_display(r.oracle_lo) << ", " << format_display(r.oracle_hi) << ']';
    }
    os << ", gap " << format_display(r.gap) << '\n';
  }
  for (const auto& c : report.checks) {
    os << '[' << status(c.skipped, c.passed) << "] " << c.name;
    if (!c.verdict.empty()) os << " -> " << c.verdict;
    if (!c.observed.empty()) {
      os << ':';
      for (double x : c.observed) os << ' ' << format_display(x);
    }
    if (!c.note.empty()) os << " (" << c.note << ')';
    os << '\n';
  }
  os << report.passed() << " passed, " << report.failed() << " failed, " << report.skipped()
     << " skipped\n";
  return os.str();
}

}  // namespace njc
