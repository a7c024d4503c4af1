#pragma once

#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "speclab/inequalities.hpp"
#include "speclab/kernels.hpp"
#include "speclab/polynomial.hpp"
#include "speclab/spectrum.hpp"
#include "speclab/sublevel.hpp"

namespace speclab {

using json = nlohmann::json;

void to_json(json& j, const MeasureEstimate& m);
void to_json(json& j, const DecayFit& f);
void to_json(json& j, const ThinnessReport& r);
void to_json(json& j, const GrowthReport& r);
void to_json(json& j, const DegeneracyVerdict& v);
void to_json(json& j, const InequalityReport& r);
void to_json(json& j, const ProductSpectrumReport& r);
void to_json(json& j, const TrotterSequence& t);
void to_json(json& j, const WedgeChainReport& r);
void to_json(json& j, const BatchSummaryRow& r);
void to_json(json& j, const BoundCheck& b);
void to_json(json& j, const CompactnessDiagnostics& d);
void to_json(json& j, const SplitTail& s);
void to_json(json& j, const TruncatedConvolution& t);
void to_json(json& j, const SpectrumReport& r);
void to_json(json& j, const MonotonicityTable& t);

/// Shortest round-trip decimal for a double ("inf", "-inf", "nan" for non-finite).
std::string format_double(double x);

/// Columns: L,index,lambda,residual
void write_eigen_csv(std::ostream& out, const SpectrumReport& r);
/// Columns: name,trials,min_margin,pass_rate
void write_batch_csv(std::ostream& out, const BatchResult& r);
/// Columns: R,partial_integral,std_error,tail_ratio (ratio empty where undefined)
void write_thinness_csv(std::ostream& out, const ThinnessReport& r);
/// Two columns, '#'-prefixed header.
void write_series(std::ostream& out, const std::string& x_name, const std::string& y_name,
                  const std::vector<double>& x, const std::vector<double>& y);

}  // namespace speclab
