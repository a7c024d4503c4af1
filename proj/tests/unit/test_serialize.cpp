#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "speclab/serialize.hpp"
#include "speclab/potential.hpp"

using namespace speclab;

TEST(Serialize, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(format_double(3.0), "3");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Serialize, InequalityReportFields) {
  const auto r = InequalityReport::make("segal", 0.5, 0.75, 1e-10, InequalityReport::Form::Inequality, 42, 3);
  const json j = r;
  EXPECT_EQ(j.at("name"), "segal");
  EXPECT_EQ(j.at("lhs").get<double>(), 0.5);
  EXPECT_EQ(j.at("rhs").get<double>(), 0.75);
  EXPECT_EQ(j.at("margin").get<double>(), 0.25);
  EXPECT_EQ(j.at("pass"), true);
  EXPECT_EQ(j.at("form"), "inequality");
  EXPECT_EQ(j.at("tol_rel").get<double>(), 1e-10);
  EXPECT_EQ(j.at("seed"), 42);
  EXPECT_EQ(j.at("dimension"), 3);
}

TEST(Serialize, ThinnessReportAndCsv) {
  ThinnessReport r;
  r.level = 1;
  r.r = 2;
  r.ell = 1;
  r.radii = {10, 20, 40};
  r.partial_integrals = {1, 1.5, 1.75};
  r.std_errors = {0.1, 0.1, 0.1};
  r.tail_ratios = {0.5};
  r.verdict = ThinnessVerdict::ConvergentEvidence;
  const json j = r;
  EXPECT_EQ(j.at("verdict"), "convergent-evidence");
  EXPECT_EQ(j.at("radii").size(), 3u);
  EXPECT_EQ(j.at("tail_ratios").size(), 1u);
  std::ostringstream csv;
  write_thinness_csv(csv, r);
  EXPECT_EQ(csv.str(), "R,partial_integral,std_error,tail_ratio\n10,1,0.1,\n20,1.5,0.1,\n40,1.75,0.1,0.5\n");
}

TEST(Serialize, NonFiniteValuesBecomeStrings) {
  SpectrumReport r;
  r.potential = "x1^2";
  r.schedule = {8, 16};
  r.mean_gaps = {std::nan(""), 1.0};
  const json j = r;
  EXPECT_EQ(j.at("mean_gaps")[0], "nan");
  EXPECT_EQ(j.at("mean_gaps")[1].get<double>(), 1.0);
}

TEST(Serialize, EigenCsvAndSeries) {
  SpectrumReport r;
  r.schedule = {6, 8};
  r.eigenvalues = {{1.25, 2.5}, {1.125, 2.25}};
  r.residuals = {{1e-12, 2e-12}, {3e-12, 4e-12}};
  std::ostringstream csv;
  write_eigen_csv(csv, r);
  EXPECT_EQ(csv.str(), "L,index,lambda,residual\n6,1,1.25,1e-12\n6,2,2.5,2e-12\n8,1,1.125,3e-12\n8,2,2.25,4e-12\n");

  std::ostringstream dat;
  write_series(dat, "n", "mu", {1, 2}, {0.5, 0.25});
  EXPECT_EQ(dat.str(), "# n mu\n1 0.5\n2 0.25\n");
}

TEST(Serialize, DegeneracyVerdict) {
  DegeneracyVerdict v;
  v.kind = DegeneracyVerdict::Kind::Degenerate;
  v.direction = {0.0, 1.0};
  v.singular_values = {2.0, 0.0};
  const json j = v;
  EXPECT_EQ(j.at("kind"), "degenerate");
  EXPECT_EQ(j.at("direction")[1].get<double>(), 1.0);
}
