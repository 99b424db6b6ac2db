#pragma once

#include <functional>

namespace xrsim::analytics {

// Operating point linking the transport-block error probability and the
// per-code-block-group error probability when a TB is split into m groups
// of (approximately) equal size with independent group failures.
struct ErrorPoint {
  double p_tb;
  double p_cbg;
  int m;
};

double tb_error_from_cbg(double p_cbg, int m);
double cbg_error_from_tb(double p_tb, int m);

ErrorPoint error_point_from_tb(double p_tb, int m);
ErrorPoint error_point_from_cbg(double p_cbg, int m);

// P(exactly k of the m groups fail) under i.i.d. group errors.
double failed_cbg_pmf(int k, double p_cbg, int m);

// Error probability of a second transmission, as a function of the
// first-transmission TB error probability. The clean model assumes second
// transmissions always succeed; the residual model keeps a fraction rho of
// the first-transmission error probability.
using SecondTxError = std::function<double(double)>;
SecondTxError second_tx_clean();
SecondTxError second_tx_residual(double rho);

// Expected number of group retransmissions triggered by the first
// transmission of a TB. With scale_by_tb_error the sum over the failure
// counts is additionally weighted by the TB error probability (the default);
// without it the plain conditional-free expectation sum is returned.
double expected_retx_first(double p_tb, int m, bool scale_by_tb_error = true);

// Expected number of group retransmissions triggered by the second
// transmission, where the second transmission carries K = ceil(R_first)
// groups (clamped to [1, m]) and fails with probability f(p_tb).
double expected_retx_second(double p_tb, int m, const SecondTxError& f);

struct RetxExpectation {
  double r_first;
  double r_second;
  double f_second;  // failure probability used for the second transmission
};
RetxExpectation retx_expectation(double p_tb, int m, const SecondTxError& f);

// Spectral efficiencies (bits per resource element) of the group-based and
// TB-based transmission modes, used to weight resource usage.
struct EfficiencyInputs {
  double xi_cbg = 1.0;
  double xi_tb = 1.0;
};

// Percentage of retransmission resources saved by group-based HARQ relative
// to whole-TB HARQ, each mode evaluated at its own TB error operating point.
double rreg_percent(double p_tb_cbg_case, double p_tb_tb_case, int m,
                    const EfficiencyInputs& eff, const SecondTxError& f);

// Converged first-transmission group error rate of the multi-bit outer loop
// that weights its step sizes by the NACK fraction of the feedback word.
double cbger_target(double step_up_db, double step_down_db);

// Converged residual TB error rate after the second transmission for the
// outer loop that reacts only to second-transmission NACKs and to fully
// acknowledged feedback words.
double residual_tber_target(double step_up_db, double step_down_db);

}  // namespace xrsim::analytics
