#include "xrsim/link_adaptation.hpp"

#include <algorithm>
#include <stdexcept>

#include "xrsim/analytics.hpp"

namespace xrsim::la {

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::traditional: return "TRADITIONAL";
    case Policy::eolla_alg1: return "EOLLA_ALG1";
    case Policy::eolla_alg2: return "EOLLA_ALG2";
  }
  throw std::logic_error("unknown policy");
}

Policy parse_policy(const std::string& text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "TRADITIONAL") return Policy::traditional;
  if (up == "EOLLA_ALG1") return Policy::eolla_alg1;
  if (up == "EOLLA_ALG2") return Policy::eolla_alg2;
  throw std::invalid_argument(
      "unknown policy '" + text +
      "' (expected TRADITIONAL, EOLLA_ALG1 or EOLLA_ALG2)");
}

namespace {

OllaState clamped(OllaState state) {
  state.offset_db =
      std::clamp(state.offset_db, state.offset_min_db, state.offset_max_db);
  return state;
}

void check_steps(const OllaState& state) {
  if (!(state.step_up_db > 0.0) || !(state.step_down_db > 0.0)) {
    throw std::invalid_argument("outer-loop step sizes must be > 0");
  }
}

void check_feedback(const harq::CbgFeedback& fb) {
  if (fb.m < 1 || fb.m > harq::kMaxCbgs) {
    throw std::invalid_argument("feedback word length must be in [1, 8]");
  }
  if (fb.f < 0 || fb.f > fb.m) {
    throw std::invalid_argument("NACK count must be in [0, m]");
  }
}

}  // namespace

double effective_sinr_db(double cqi_sinr_db, const OllaState& state) {
  return cqi_sinr_db - state.offset_db;
}

int select_mcs(double effective_sinr_db, double tber_target,
               const phy::McsTable& table, const phy::LinkCurves& curves) {
  if (!(tber_target > 0.0 && tber_target <= 1.0)) {
    throw std::invalid_argument("error target must be in (0, 1]");
  }
  int best = -1;
  for (const phy::McsEntry& e : table) {
    if (phy::tb_error_probability(effective_sinr_db, e, curves) <= tber_target) {
      best = e.index;  // efficiency grows with the index
    }
  }
  return best >= 0 ? best : table.lowest().index;
}

OllaState update_traditional(OllaState state, bool tb_ack) {
  check_steps(state);
  state.offset_db += tb_ack ? -state.step_down_db : state.step_up_db;
  return clamped(state);
}

OllaState update_alg1(OllaState state, const harq::CbgFeedback& feedback) {
  check_steps(state);
  check_feedback(feedback);
  double m = feedback.m;
  double f = feedback.f;
  state.offset_db +=
      -state.step_down_db * (m - f) / m + state.step_up_db * f / m;
  return clamped(state);
}

OllaState update_alg2(OllaState state, const harq::CbgFeedback& feedback,
                      int tx_index) {
  check_steps(state);
  check_feedback(feedback);
  if (tx_index != 1 && tx_index != 2) {
    throw std::invalid_argument(
        "retransmission-aware rule only handles the first two transmissions");
  }
  if (feedback.f == 0) {
    state.offset_db -= state.step_down_db;
  } else if (tx_index == 2) {
    state.offset_db +=
        state.step_up_db * static_cast<double>(feedback.f) / feedback.m;
  }
  // NACKs in a first transmission leave the offset untouched.
  return clamped(state);
}

double converged_operating_point(const OllaState& state) {
  switch (state.policy) {
    case Policy::eolla_alg1:
      return analytics::cbger_target(state.step_up_db, state.step_down_db);
    case Policy::eolla_alg2:
      return analytics::residual_tber_target(state.step_up_db,
                                             state.step_down_db);
    case Policy::traditional:
      throw std::invalid_argument(
          "no multi-bit operating point for the TB-level policy; its TB error "
          "rate converges to 1 / (1 + step_up / step_down)");
  }
  throw std::logic_error("unknown policy");
}

}  // namespace xrsim::la
