#include "msdiff/oracle_check.hpp"

#include <algorithm>
#include <cmath>

#include "msdiff/coefficients.hpp"
#include "msdiff/csv_output.hpp"

namespace msdiff {

namespace {

OracleCheckRow make_row(std::string pair, std::string kernel, double closed_form, double oracle)
{
  OracleCheckRow row{std::move(pair), std::move(kernel), closed_form, oracle, 0.0, false};
  const double scale = std::abs(oracle);
  row.rel_diff = scale > 0.0 ? std::abs(closed_form - oracle) / scale : std::abs(closed_form);
  row.agrees = row.rel_diff <= kOracleAgreementTolerance;
  return row;
}

AnalyticKineticKernel unit_kernel(std::size_t n)
{
  AnalyticKineticKernel k;
  k.coefficients.assign(n + 1, 0.0);
  k.coefficients[n] = 1.0;
  return k;
}

} // namespace

std::vector<OracleCheckRow> oracle_check(const MixtureSpec& spec, const AnalyticKineticKernel& kernel,
                                         const AngularKernelSet& angular, const QuadratureConfig& q)
{
  const MixtureSpec mix = validate_mixture(spec);
  const QuadratureConfig quad = validate_quadrature(q);
  const double kT = mix.kT();
  std::vector<OracleCheckRow> rows;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    for (std::size_t j = i + 1; j < mix.size(); ++j) {
      const std::string pair = mix.species[i].name + "-" + mix.species[j].name;
      const double b = angular.l1_norm(i, j);
      ThetaProblem p;
      p.i = i;
      p.j = j;

      rows.push_back(make_row(pair, "config", delta_tilde(mix, kernel, b, i, j),
                              delta_tilde_from_theta(mix, kernel, b, p, quad)));

      double n1_oracle = 0.0;
      const std::size_t order = std::max<std::size_t>(kernel.truncation_order(), 1);
      for (std::size_t n = 0; n <= order; ++n) {
        const double oracle = delta_tilde_from_theta(mix, unit_kernel(n), b, p, quad);
        if (n == 1) n1_oracle = oracle;
        rows.push_back(make_row(pair, "n" + std::to_string(n),
                                delta_tilde_term(static_cast<unsigned>(n), mix.mass(i), mix.mass(j), kT, b), oracle));
      }
      rows.push_back(make_row(pair, "n1_series", delta_tilde_series_term_n1(mix.mass(i), mix.mass(j), kT, b),
                              n1_oracle));
    }
  }
  return rows;
}

void write_oracle_check(std::ostream& os, const std::vector<OracleCheckRow>& rows)
{
  os << "# tolerance: " << format_double(kOracleAgreementTolerance) << '\n';
  os << "pair,kernel,closed_form,oracle,rel_diff,status\n";
  for (const auto& r : rows) {
    os << r.pair << ',' << r.kernel << ',' << format_double(r.closed_form) << ',' << format_double(r.oracle) << ','
       << format_double(r.rel_diff) << ',' << (r.agrees ? "agree" : "discrepancy") << '\n';
  }
}

} // namespace msdiff
