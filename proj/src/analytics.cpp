#include "xrsim/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xrsim::analytics {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(name) + " must be in [0, 1], got " +
                            std::to_string(p));
  }
}

void check_group_count(int m) {
  if (m < 1) {
    throw std::domain_error("group count m must be >= 1, got " + std::to_string(m));
  }
}

double binomial_coefficient(int m, int k) {
  // Multiplicative form; exact in double for the small m used here.
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c *= static_cast<double>(m - k + i) / static_cast<double>(i);
  }
  return c;
}

}  // namespace

double tb_error_from_cbg(double p_cbg, int m) {
  check_probability(p_cbg, "p_cbg");
  check_group_count(m);
  // 1 - (1 - p)^m, evaluated to stay accurate near both endpoints.
  return -std::expm1(static_cast<double>(m) * std::log1p(-p_cbg));
}

double cbg_error_from_tb(double p_tb, int m) {
  check_probability(p_tb, "p_tb");
  check_group_count(m);
  return -std::expm1(std::log1p(-p_tb) / static_cast<double>(m));
}

ErrorPoint error_point_from_tb(double p_tb, int m) {
  return ErrorPoint{p_tb, cbg_error_from_tb(p_tb, m), m};
}

ErrorPoint error_point_from_cbg(double p_cbg, int m) {
  return ErrorPoint{tb_error_from_cbg(p_cbg, m), p_cbg, m};
}

double failed_cbg_pmf(int k, double p_cbg, int m) {
  check_probability(p_cbg, "p_cbg");
  check_group_count(m);
  if (k < 0 || k > m) {
    throw std::domain_error("failure count k must be in [0, m], got " +
                            std::to_string(k));
  }
  return binomial_coefficient(m, k) * std::pow(p_cbg, k) *
         std::pow(1.0 - p_cbg, m - k);
}

SecondTxError second_tx_clean() {
  return [](double) { return 0.0; };
}

SecondTxError second_tx_residual(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::domain_error("residual fraction rho must be in [0, 1]");
  }
  return [rho](double p_tb) { return rho * p_tb; };
}

double expected_retx_first(double p_tb, int m, bool scale_by_tb_error) {
  check_probability(p_tb, "p_tb");
  check_group_count(m);
  double p_cbg = cbg_error_from_tb(p_tb, m);
  double sum = 0.0;
  for (int k = 1; k <= m; ++k) {
    sum += static_cast<double>(k) * failed_cbg_pmf(k, p_cbg, m);
  }
  return scale_by_tb_error ? p_tb * sum : sum;
}

double expected_retx_second(double p_tb, int m, const SecondTxError& f) {
  check_probability(p_tb, "p_tb");
  check_group_count(m);
  if (!f) throw std::invalid_argument("second-transmission error model is empty");
  double r_first = expected_retx_first(p_tb, m);
  int cap = static_cast<int>(std::ceil(r_first));
  if (cap < 1) cap = 1;
  if (cap > m) cap = m;
  double p_cbg = cbg_error_from_tb(p_tb, m);
  double p2 = f(p_tb);
  check_probability(p2, "second-transmission error probability");
  double sum = 0.0;
  for (int k = 1; k <= cap; ++k) {
    sum += static_cast<double>(k) * failed_cbg_pmf(k, p_cbg, m);
  }
  return p2 * sum;
}

RetxExpectation retx_expectation(double p_tb, int m, const SecondTxError& f) {
  RetxExpectation out;
  out.r_first = expected_retx_first(p_tb, m);
  out.r_second = expected_retx_second(p_tb, m, f);
  out.f_second = f(p_tb);
  return out;
}

double rreg_percent(double p_tb_cbg_case, double p_tb_tb_case, int m,
                    const EfficiencyInputs& eff, const SecondTxError& f) {
  check_probability(p_tb_cbg_case, "p_tb_cbg_case");
  check_probability(p_tb_tb_case, "p_tb_tb_case");
  check_group_count(m);
  if (!(eff.xi_cbg > 0.0) || !(eff.xi_tb > 0.0)) {
    throw std::domain_error("spectral efficiencies must be > 0");
  }
  double dm = static_cast<double>(m);
  double res_cbg = (dm + expected_retx_first(p_tb_cbg_case, m) +
                    expected_retx_second(p_tb_cbg_case, m, f)) /
                   eff.xi_cbg;
  double p2 = f(p_tb_tb_case);
  check_probability(p2, "second-transmission error probability");
  double res_tb = (dm + p_tb_tb_case * dm + p2 * dm) / eff.xi_tb;
  if (res_tb <= 0.0) {
    throw std::domain_error("TB-mode resource usage is zero; gain undefined");
  }
  return 100.0 * (1.0 - res_cbg / res_tb);
}

double cbger_target(double step_up_db, double step_down_db) {
  if (!(step_up_db > 0.0) || !(step_down_db > 0.0)) {
    throw std::domain_error("step sizes must be > 0");
  }
  return 1.0 / (1.0 + step_up_db / step_down_db);
}

double residual_tber_target(double step_up_db, double step_down_db) {
  if (!(step_up_db > 0.0) || !(step_down_db > 0.0)) {
    throw std::domain_error("step sizes must be > 0");
  }
  return 1.0 / (1.0 + step_up_db / (2.0 * step_down_db));
}

}  // namespace xrsim::analytics
