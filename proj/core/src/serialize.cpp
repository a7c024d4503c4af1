#include "speclab/serialize.hpp"

#include <charconv>
#include <cmath>

#include "speclab/error.hpp"

namespace speclab {

namespace {

// JSON has no infinities; non-finite values travel as strings.
json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json numbers(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

std::string method_name(MeasureMethod m) {
  return m == MeasureMethod::MonteCarlo ? "monte-carlo" : "grid-quadrature";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void to_json(json& j, const MeasureEstimate& m) {
  j = json{{"value", m.value},
           {"std_error", m.std_error},
           {"method", method_name(m.method)},
           {"samples", m.samples},
           {"seed", m.seed}};
}

void to_json(json& j, const DecayFit& f) {
  j = json{{"constant", number(f.constant)},
           {"exponent", number(f.exponent)},
           {"distances", f.distances},
           {"omegas", f.omegas}};
}

void to_json(json& j, const ThinnessReport& r) {
  j = json{{"M", r.level},
           {"r", r.r},
           {"ell", r.ell},
           {"radii", r.radii},
           {"partial_integrals", numbers(r.partial_integrals)},
           {"std_errors", numbers(r.std_errors)},
           {"tail_ratios", numbers(r.tail_ratios)},
           {"verdict", to_string(r.verdict)},
           {"shell_samples", r.options.shell_samples},
           {"inner_budget", r.options.inner_budget},
           {"max_points_per_shell", r.options.max_points_per_shell},
           {"seed", r.options.seed}};
}

void to_json(json& j, const GrowthReport& r) {
  j = json{{"radii", r.radii},
           {"minima", numbers(r.minima)},
           {"increasing", r.increasing},
           {"evidence", "sampling evidence only; not a proof that V grows without bound"}};
}

void to_json(json& j, const DegeneracyVerdict& v) {
  std::string kind = "nondegenerate";
  if (v.kind == DegeneracyVerdict::Kind::Degenerate) kind = "degenerate";
  if (v.kind == DegeneracyVerdict::Kind::AllDirections) kind = "all-directions";
  j = json{{"kind", kind}, {"direction", v.direction}, {"singular_values", v.singular_values}};
}

void to_json(json& j, const InequalityReport& r) {
  j = json{{"name", r.name},
           {"form", r.form == InequalityReport::Form::Inequality ? "inequality" : "equality"},
           {"lhs", number(r.lhs)},
           {"rhs", number(r.rhs)},
           {"margin", number(r.margin)},
           {"tol_rel", r.tol_rel},
           {"pass", r.pass},
           {"seed", r.seed},
           {"dimension", r.dimension}};
}

void to_json(json& j, const ProductSpectrumReport& r) {
  j = json{{"route", r.route},
           {"spectrum_cd", r.spectrum_cd},
           {"spectrum_dc", r.spectrum_dc},
           {"traces_cd", r.traces_cd},
           {"traces_dc", r.traces_dc},
           {"max_deviation", r.max_deviation},
           {"allowed", r.allowed},
           {"spectral_radius_cd", r.spectral_radius_cd},
           {"norm_dc", r.norm_dc},
           {"pass", r.pass}};
}

void to_json(json& j, const TrotterSequence& t) {
  j = json{{"n", t.indices},
           {"values", t.values},
           {"limit", t.limit_reference},
           {"cap", t.cap_reference},
           {"capped", t.capped},
           {"final_gap", t.final_gap}};
}

void to_json(json& j, const WedgeChainReport& r) {
  j = json{{"inequality", r.inequality}, {"multiplicativity", r.multiplicativity}, {"pass", r.pass()}};
}

void to_json(json& j, const BatchSummaryRow& r) {
  j = json{{"name", r.name}, {"trials", r.trials}, {"min_margin", number(r.min_margin)}, {"pass_rate", r.pass_rate}};
}

void to_json(json& j, const BoundCheck& b) {
  j = json{{"name", b.name},
           {"lhs", number(b.lhs)},
           {"rhs", number(b.rhs)},
           {"tolerance", number(b.tolerance)},
           {"pass", b.pass}};
}

void to_json(json& j, const CompactnessDiagnostics& d) {
  j = json{{"singular_values", d.singular_values},
           {"hs_norm", d.hs_norm},
           {"constant", number(d.constant)},
           {"checks", d.checks},
           {"pass", d.all_pass()}};
}

void to_json(json& j, const SplitTail& s) {
  std::size_t count = 0;
  for (char c : s.mask) count += c ? 1 : 0;
  j = json{{"m", s.level},
           {"mask_points", count},
           {"norm_c", s.norm_c},
           {"norm_c_m", s.norm_c_m},
           {"norm_d_m", s.norm_d_m},
           {"bound", s.bound},
           {"check", s.check}};
}

void to_json(json& j, const TruncatedConvolution& t) {
  j = json{{"R", t.radius},
           {"lattice_tail", t.lattice_tail},
           {"analytic_tail", t.analytic_tail},
           {"tail", t.tail},
           {"difference_norm", t.difference_norm},
           {"check", t.check}};
}

void to_json(json& j, const SpectrumReport& r) {
  json gaps = json::array();
  for (double g : r.mean_gaps) gaps.push_back(number(g));
  j = json{{"potential", r.potential},
           {"nu", r.dimension},
           {"h", r.spacing},
           {"schedule", r.schedule},
           {"eigenvalues", r.eigenvalues},
           {"residuals", r.residuals},
           {"drift", r.drift},
           {"count_at", r.count_at},
           {"counting", r.counting},
           {"mean_gaps", gaps},
           {"max_drift_last", r.max_drift_last},
           {"max_residual", r.max_residual},
           {"stabilized", r.stabilized},
           {"converged", r.converged},
           {"status", r.status}};
}

void to_json(json& j, const MonotonicityTable& t) {
  j = json{{"levels", numbers(t.levels)},
           {"eigenvalues", t.eigenvalues},
           {"max_residual", t.max_residual},
           {"worst_decrease", t.worst_decrease},
           {"monotone", t.monotone}};
}

void write_eigen_csv(std::ostream& out, const SpectrumReport& r) {
  out << "L,index,lambda,residual\n";
  for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) {
    for (std::size_t i = 0; i < r.eigenvalues[j].size(); ++i) {
      out << format_double(r.schedule[j]) << ',' << (i + 1) << ',' << format_double(r.eigenvalues[j][i]) << ','
          << format_double(r.residuals[j][i]) << '\n';
    }
  }
}

void write_batch_csv(std::ostream& out, const BatchResult& r) {
  out << "name,trials,min_margin,pass_rate\n";
  for (const auto& row : r.summary) {
    out << row.name << ',' << row.trials << ',' << format_double(row.min_margin) << ','
        << format_double(row.pass_rate) << '\n';
  }
}

void write_thinness_csv(std::ostream& out, const ThinnessReport& r) {
  out << "R,partial_integral,std_error,tail_ratio\n";
  for (std::size_t j = 0; j < r.radii.size(); ++j) {
    out << format_double(r.radii[j]) << ',' << format_double(r.partial_integrals[j]) << ','
        << format_double(r.std_errors[j]) << ',';
    // tail_ratios[i] compares shell i+2 with shell i+1.
    if (j >= 2 && j - 2 < r.tail_ratios.size()) out << format_double(r.tail_ratios[j - 2]);
    out << '\n';
  }
}

void write_series(std::ostream& out, const std::string& x_name, const std::string& y_name,
                  const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("write_series: column lengths differ");
  out << "# " << x_name << ' ' << y_name << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) out << format_double(x[i]) << ' ' << format_double(y[i]) << '\n';
}

}  // namespace speclab
