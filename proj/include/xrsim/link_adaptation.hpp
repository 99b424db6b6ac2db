#pragma once

#include <string>

#include "xrsim/harq.hpp"
#include "xrsim/link_model.hpp"

namespace xrsim::la {

// Outer-loop policies. 'traditional' reacts to one TB-level bit per first
// transmission; the two multi-bit policies use the per-group feedback word.
enum class Policy { traditional, eolla_alg1, eolla_alg2 };

const char* policy_name(Policy p);
Policy parse_policy(const std::string& text);

struct OllaState {
  Policy policy = Policy::traditional;
  double offset_db = 0.0;
  double step_up_db = 0.5;
  double step_down_db = 1.0 / 18.0;  // keeps the TB-level loop at 10% error
  double offset_min_db = -25.0;
  double offset_max_db = 15.0;
};

// SINR used for MCS selection: reported CQI corrected by the loop offset.
double effective_sinr_db(double cqi_sinr_db, const OllaState& state);

// Highest-efficiency entry whose predicted error probability at the
// effective SINR stays within the target; lowest entry if none qualifies.
int select_mcs(double effective_sinr_db, double tber_target,
               const phy::McsTable& table, const phy::LinkCurves& curves);

// TB-level rule, applied to first-transmission feedback only:
// ACK lowers the offset by step_down, NACK raises it by step_up.
OllaState update_traditional(OllaState state, bool tb_ack);

// Multi-bit rule, applied to first-transmission feedback words: every ACK
// bit contributes -step_down/m, every NACK bit +step_up/m.
OllaState update_alg1(OllaState state, const harq::CbgFeedback& feedback);

// Retransmission-aware rule: a fully acknowledged word (first or second
// transmission) lowers the offset by step_down; NACKs in a second
// transmission raise it by step_up * f / m; NACKs in a first transmission
// leave it unchanged. Later transmissions never reach this rule.
OllaState update_alg2(OllaState state, const harq::CbgFeedback& feedback,
                      int tx_index);

// Closed-form converged error rate of the multi-bit loops: the
// first-transmission group error rate for the per-bit rule, the residual
// TB error rate after the second transmission for the retransmission-aware
// rule. The TB-level loop has no multi-bit operating point.
double converged_operating_point(const OllaState& state);

}  // namespace xrsim::la
