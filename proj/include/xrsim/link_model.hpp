#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xrsim/rng.hpp"

namespace xrsim::phy {

struct McsEntry {
  int index = 0;
  int modulation_order = 2;         // bits per symbol: 2, 4, 6, 8
  double code_rate = 0.0;           // in (0, 1)
  double spectral_efficiency = 0.0; // bits per resource element
  double sinr_ref_db = 0.0;         // SINR where the TB error rate is 10%
};

// Ordered MCS ladder: spectral efficiency and reference SINR both strictly
// increase with the index, with reference spacing between 0.5 and 2.5 dB.
class McsTable {
 public:
  McsTable() = default;
  explicit McsTable(std::vector<McsEntry> entries);

  // 28-step ladder from rate-0.12 QPSK to rate-0.93 256QAM with evenly
  // spaced reference SINRs.
  static McsTable nr_default(double ref0_db = -5.0, double ref_step_db = 1.0);

  // Columns: index,modulation_order,code_rate,spectral_efficiency,sinr_ref_db
  static McsTable from_csv(const std::string& path);

  const McsEntry& entry(int index) const;
  const McsEntry& lowest() const { return entries_.front(); }
  const McsEntry& highest() const { return entries_.back(); }
  int size() const { return static_cast<int>(entries_.size()); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  void validate() const;
  std::vector<McsEntry> entries_;
};

// Logistic SINR-to-error mapping, anchored so that the error probability is
// exactly 10% at the entry's reference SINR.
struct LinkCurves {
  double slope_nats_per_db = 2.0;
};

// TB error probability of a single transmission at the given SINR; does not
// depend on the TB size.
double tb_error_probability(double sinr_db, const McsEntry& mcs,
                            const LinkCurves& curves);

// Per-code-block error probability such that cb_count i.i.d. code blocks
// reproduce the given TB error probability.
double cb_error_probability(double p_tb, int cb_count);

// SINR of combining the same payload across transmissions: linear powers add.
double combined_sinr_db(std::span<const double> tx_sinrs_db);

struct ChannelState {
  uint32_t ue_id = 0;
  double true_sinr_db = 0.0;
  double cqi_sinr_db = 0.0;    // last applied (delayed) report
  double last_report_ms = 0.0;
};

// Quantized, noisy report of the current SINR. The caller stores the value
// and applies it to cqi_sinr_db once the report delay has elapsed.
double report_cqi(ChannelState& state, double now_ms,
                  double quantization_step_db, double noise_std_db, Rng& rng);

// First-order autoregressive fading in dB with stationary std std_db and
// per-step correlation corr.
struct FadingProcess {
  double std_db = 0.0;
  double corr = 0.0;
  double state_db = 0.0;

  void init(Rng& rng);     // draw from the stationary distribution
  double step(Rng& rng);   // advance one step, returns the new state
};

}  // namespace xrsim::phy
