#include "speclab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "speclab/compound.hpp"
#include "speclab/error.hpp"

namespace speclab {

InequalityReport InequalityReport::make(std::string name, double lhs, double rhs, double tol_rel, Form form,
                                        std::uint64_t seed, int dimension) {
  InequalityReport r;
  r.name = std::move(name);
  r.form = form;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tol_rel = tol_rel;
  const double slack = tol_rel * std::max(std::abs(lhs), std::abs(rhs));
  r.pass = form == Form::Inequality ? r.margin >= -slack : std::abs(r.margin) <= slack;
  r.seed = seed;
  r.dimension = dimension;
  return r;
}

namespace {

void require_psd(const SymmetricMatrix& m, const char* who) {
  if (!is_psd(m)) throw DomainError(std::string(who) + ": input is not positive semidefinite");
}

SymmetricMatrix sum(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix dimension mismatch");
  return symmetrized(a.matrix() + b.matrix());
}

}  // namespace

InequalityReport segal(const SymmetricMatrix& a, const SymmetricMatrix& b, SegalForm form, InputDigest digest,
                       double tol_rel) {
  require_psd(a, "segal");
  require_psd(b, "segal");
  const double lhs = operator_norm(expm_sym(sum(a, b), -1.0).matrix());
  double rhs = 0.0;
  if (form == SegalForm::Plain) {
    rhs = operator_norm(expm_sym(a, -1.0).matrix() * expm_sym(b, -1.0).matrix());
  } else {
    const Eigen::MatrixXd half_b = expm_sym(b, -0.5).matrix();
    rhs = operator_norm(half_b * expm_sym(a, -1.0).matrix() * half_b);
  }
  return InequalityReport::make(form == SegalForm::Plain ? "segal" : "segal-symmetric", lhs, rhs, tol_rel,
                                InequalityReport::Form::Inequality, digest.seed, digest.dimension);
}

InequalityReport half_step_square(const SymmetricMatrix& a, const SymmetricMatrix& b, InputDigest digest,
                                  double tol_rel) {
  require_psd(a, "half_step_square");
  require_psd(b, "half_step_square");
  const double half = operator_norm(expm_sym(a, -0.5).matrix() * expm_sym(b, -0.5).matrix());
  const double full = operator_norm(expm_sym(a, -1.0).matrix() * expm_sym(b, -1.0).matrix());
  return InequalityReport::make("half-step-square", half * half, full, tol_rel, InequalityReport::Form::Inequality,
                                digest.seed, digest.dimension);
}

InequalityReport golden_thompson(const SymmetricMatrix& a, const SymmetricMatrix& b, InputDigest digest,
                                 double tol_rel) {
  const double lhs = expm_sym(sum(a, b), -1.0).matrix().trace();
  const double rhs = (expm_sym(a, -1.0).matrix() * expm_sym(b, -1.0).matrix()).trace();
  return InequalityReport::make("golden-thompson", lhs, rhs, tol_rel, InequalityReport::Form::Inequality, digest.seed,
                                digest.dimension);
}

namespace {

std::vector<double> nonzero(std::vector<double> values) {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  std::erase_if(values, [&](double v) { return std::abs(v) <= 1e-12 * scale; });
  return values;
}

double hausdorff(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() && y.empty()) return 0.0;
  if (x.empty() || y.empty()) return std::numeric_limits<double>::infinity();
  const auto one_side = [](const std::vector<double>& p, const std::vector<double>& q) {
    double worst = 0.0;
    for (double a : p) {
      double best = std::numeric_limits<double>::infinity();
      for (double b : q) best = std::min(best, std::abs(a - b));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(x, y), one_side(y, x));
}

bool symmetric_psd(const GeneralMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const auto& a = m.matrix();
  const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
  return is_psd(SymmetricMatrix(a));
}

}  // namespace

ProductSpectrumReport product_spectrum_match(const GeneralMatrix& c, const GeneralMatrix& d, double tol) {
  if (c.cols() != d.rows() || c.rows() != d.cols()) {
    throw DimensionError("product_spectrum_match: need C m x n and D n x m");
  }
  if (std::max(c.rows(), c.cols()) > 12) {
    throw DomainError("product_spectrum_match: restricted to max(m, n) <= 12");
  }
  ProductSpectrumReport r;
  const Eigen::MatrixXd cd = c.matrix() * d.matrix();
  const Eigen::MatrixXd dc = d.matrix() * c.matrix();
  r.norm_dc = operator_norm(dc);

  if (symmetric_psd(c) && symmetric_psd(d)) {
    r.route = "psd-similarity";
    const SymmetricMatrix cs(c.matrix());
    const SymmetricMatrix ds(d.matrix());
    r.spectrum_cd = nonzero(psd_product_spectrum(cs, ds));
    r.spectrum_dc = nonzero(psd_product_spectrum(ds, cs));
    double scale = 0.0;
    for (double v : r.spectrum_cd) scale = std::max(scale, std::abs(v));
    for (double v : r.spectrum_dc) scale = std::max(scale, std::abs(v));
    r.max_deviation = hausdorff(r.spectrum_cd, r.spectrum_dc);
    r.allowed = tol * std::max(scale, std::numeric_limits<double>::min());
    r.spectral_radius_cd = r.spectrum_cd.empty() ? 0.0 : std::abs(r.spectrum_cd.front());
  } else {
    r.route = "power-traces";
    const Eigen::Index count = std::min(c.rows(), c.cols());
    Eigen::MatrixXd pcd = Eigen::MatrixXd::Identity(cd.rows(), cd.cols());
    Eigen::MatrixXd pdc = Eigen::MatrixXd::Identity(dc.rows(), dc.cols());
    const double unit = c.matrix().norm() * d.matrix().norm();
    double scale = 1.0;
    for (Eigen::Index k = 1; k <= count; ++k) {
      pcd = pcd * cd;
      pdc = pdc * dc;
      scale *= unit;
      r.traces_cd.push_back(pcd.trace());
      r.traces_dc.push_back(pdc.trace());
      r.max_deviation = std::max(r.max_deviation, std::abs(pcd.trace() - pdc.trace()) / std::max(scale, 1e-300));
    }
    r.allowed = tol;
    // Spectral radius from the trace growth is not exact; use the eigenvalues of CD directly.
    r.spectral_radius_cd = Eigen::EigenSolver<Eigen::MatrixXd>(cd, false).eigenvalues().cwiseAbs().maxCoeff();
  }
  r.pass = r.max_deviation <= r.allowed;
  return r;
}

TrotterSequence trotter_sequence(const SymmetricMatrix& a, const SymmetricMatrix& b, int n_max) {
  require_psd(a, "trotter_sequence");
  require_psd(b, "trotter_sequence");
  if (n_max < 0 || n_max > 14) throw DomainError("trotter_sequence: n_max must be in [0, 14]");
  TrotterSequence seq;
  seq.limit_reference = operator_norm(expm_sym(sum(a, b), -1.0).matrix());
  seq.cap_reference = operator_norm(expm_sym(a, -1.0).matrix() * expm_sym(b, -1.0).matrix());
  seq.capped = true;
  for (int n = 0; n <= n_max; ++n) {
    const double step = std::ldexp(1.0, -n);
    Eigen::MatrixXd m = expm_sym(a, -step).matrix() * expm_sym(b, -step).matrix();
    for (int i = 0; i < n; ++i) m = m * m;
    const double value = operator_norm(m);
    seq.indices.push_back(n);
    seq.values.push_back(value);
    if (value > seq.cap_reference + 1e-10) seq.capped = false;
  }
  seq.final_gap = std::abs(seq.values.back() - seq.limit_reference);
  return seq;
}

InequalityReport wedge_norm_identity(const GeneralMatrix& a, int n, InputDigest digest, double tol_rel) {
  const double lhs = operator_norm(compound_matrix(a, n).matrix());
  const SingularValueList mu = singular_values(a);
  double rhs = 1.0;
  for (int j = 0; j < n; ++j) rhs *= mu[static_cast<std::size_t>(j)];
  return InequalityReport::make("wedge-norm", lhs, rhs, tol_rel, InequalityReport::Form::Equality, digest.seed,
                                digest.dimension);
}

InequalityReport wedge_semigroup_identity(const SymmetricMatrix& a, int n, double t, InputDigest digest,
                                          double tol_rel) {
  const Eigen::MatrixXd lhs = compound_matrix(GeneralMatrix(expm_sym(a, -t)), n).matrix();
  const Eigen::MatrixXd rhs = expm_sym(wedge_generator(a, n), -t).matrix();
  InequalityReport r = InequalityReport::make("wedge-semigroup", operator_norm(lhs), operator_norm(rhs), tol_rel,
                                              InequalityReport::Form::Equality, digest.seed, digest.dimension);
  // Compare the operators themselves, not just their norms.
  const double diff = operator_norm(lhs - rhs);
  r.margin = diff;
  r.pass = diff <= tol_rel * std::max(r.lhs, r.rhs);
  return r;
}

WedgeChainReport wedge_segal_chain(const SymmetricMatrix& a, const SymmetricMatrix& b, int n, InputDigest digest,
                                   double tol_rel) {
  require_psd(a, "wedge_segal_chain");
  require_psd(b, "wedge_segal_chain");
  const int d = static_cast<int>(a.dim());
  if (binomial(d, n) > 1000) throw BudgetError("wedge_segal_chain: binomial(d, n) exceeds 1000");
  const Eigen::MatrixXd ea = expm_sym(a, -1.0).matrix();
  const Eigen::MatrixXd eb = expm_sym(b, -1.0).matrix();
  const Eigen::MatrixXd wedge_sum = compound_matrix(GeneralMatrix(expm_sym(sum(a, b), -1.0)), n).matrix();
  const Eigen::MatrixXd wa = compound_matrix(GeneralMatrix(ea), n).matrix();
  const Eigen::MatrixXd wb = compound_matrix(GeneralMatrix(eb), n).matrix();
  const Eigen::MatrixXd w_product = compound_matrix(GeneralMatrix(Eigen::MatrixXd(ea * eb)), n).matrix();

  const double lhs = operator_norm(wedge_sum);
  const double mid = operator_norm(wa * wb);
  const double rhs = operator_norm(w_product);
  WedgeChainReport out;
  out.inequality = InequalityReport::make(n == 1 ? "segal" : "wedge-segal", lhs, mid, n == 1 ? 1e-10 : tol_rel,
                                          InequalityReport::Form::Inequality, digest.seed, digest.dimension);
  out.multiplicativity = InequalityReport::make("wedge-multiplicativity", mid, rhs, tol_rel,
                                                InequalityReport::Form::Equality, digest.seed, digest.dimension);
  return out;
}

std::vector<double> compactness_proxy(const SingularValueList& mu, int n_max) {
  if (n_max < 0 || static_cast<std::size_t>(n_max) > mu.size()) {
    throw DomainError("compactness_proxy: n_max exceeds the number of singular values");
  }
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n_max));
  double log_sum = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double m = mu[static_cast<std::size_t>(n - 1)];
    log_sum += m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity();
    double value = std::exp(log_sum / n);
    if (!g.empty()) value = std::min(value, g.back());  // exact monotonicity; mu is sorted
    g.push_back(value);
  }
  return g;
}

std::vector<double> compactness_proxy(const GeneralMatrix& c, int n_max) {
  return compactness_proxy(singular_values(c), n_max);
}

bool BatchResult::all_pass() const noexcept {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

BatchResult run_inequality_batch(const BatchOptions& options) {
  if (options.trials < 1) throw DomainError("batch: trials must be >= 1");
  if (options.dim_min < 1 || options.dim_max < options.dim_min || options.dim_max > 12) {
    throw DomainError("batch: need 1 <= dim_min <= dim_max <= 12");
  }
  const int span = options.dim_max - options.dim_min + 1;
  std::vector<std::vector<InequalityReport>> per_trial(static_cast<std::size_t>(options.trials));
  parallel_for(per_trial.size(), [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(options.seed, i);
    const int d = options.dim_min + static_cast<int>(i % static_cast<std::size_t>(span));
    Rng rng(seed);
    const SymmetricMatrix a = random_psd(d, rng);
    const SymmetricMatrix b = random_psd(d, rng);
    const InputDigest digest{seed, d};
    auto& out = per_trial[i];
    out.push_back(segal(a, b, SegalForm::Plain, digest));
    out.push_back(segal(a, b, SegalForm::Symmetric, digest));
    out.push_back(half_step_square(a, b, digest));
    out.push_back(golden_thompson(a, b, digest));

    const ProductSpectrumReport ps = product_spectrum_match(GeneralMatrix(a), GeneralMatrix(b), 1e-8);
    auto match = InequalityReport::make("product-spectrum", ps.max_deviation, ps.allowed, 0.0,
                                        InequalityReport::Form::Inequality, seed, d);
    out.push_back(match);
    out.push_back(InequalityReport::make("spectral-radius", ps.spectral_radius_cd, ps.norm_dc, 1e-10,
                                         InequalityReport::Form::Inequality, seed, d));
    if (options.include_wedge && d >= 2) {
      out.push_back(wedge_norm_identity(GeneralMatrix(a), 2, digest));
    }
    // For d = 2 the second compound is the determinant and the chain is the
    // identity e^{-tr(A+B)} = e^{-tr A} e^{-tr B}; minors of e^{-A} lose relative
    // accuracy like eps * cond(e^{-A}), so the chain starts at d = 3.
    if (options.include_wedge && d >= 3) {
      const WedgeChainReport chain = wedge_segal_chain(a, b, 2, digest);
      out.push_back(chain.inequality);
      out.push_back(chain.multiplicativity);
    }
  });

  BatchResult result;
  std::vector<std::string> order;
  std::map<std::string, BatchSummaryRow> rows;
  std::map<std::string, int> passed;
  for (auto& trial : per_trial) {
    for (auto& r : trial) {
      const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs), std::numeric_limits<double>::min()});
      const double rel_margin = r.form == InequalityReport::Form::Equality ? -std::abs(r.margin) / scale
                                                                           : r.margin / scale;
      auto [it, inserted] = rows.try_emplace(r.name);
      if (inserted) {
        order.push_back(r.name);
        it->second.name = r.name;
        it->second.min_margin = rel_margin;
      }
      it->second.trials += 1;
      it->second.min_margin = std::min(it->second.min_margin, rel_margin);
      passed[r.name] += r.pass ? 1 : 0;
      result.reports.push_back(std::move(r));
    }
  }
  for (const auto& name : order) {
    BatchSummaryRow row = rows.at(name);
    row.pass_rate = static_cast<double>(passed.at(name)) / row.trials;
    result.summary.push_back(row);
  }
  return result;
}

}  // namespace speclab
