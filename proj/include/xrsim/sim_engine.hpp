#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "xrsim/scenario.hpp"

namespace xrsim::sim {

struct TddPattern {
  std::string slots = "DDDSU";
  double slot_ms = 0.5;

  char kind(uint64_t slot) const { return slots[slot % slots.size()]; }
};

struct KpiRecord {
  uint64_t packets_total = 0;
  uint64_t packets_on_time = 0;
  uint64_t packets_late = 0;
  uint64_t packets_lost = 0;
  uint64_t packets_in_flight = 0;  // undelivered and not lost at horizon end
  std::vector<double> delay_samples_ms;
  uint64_t prb_used = 0;
  std::vector<uint64_t> mcs_histogram;  // first transmissions per MCS index
  uint64_t first_tx_cbg_sent = 0;
  uint64_t first_tx_cbg_failed = 0;
  uint64_t second_tx_count = 0;
  uint64_t second_tx_failed = 0;
};

// A UE is satisfied when its on-time fraction strictly exceeds the
// reliability requirement. Rejects empty records.
bool satisfied(const KpiRecord& kpi, double reliability);

// (value, cumulative fraction) pairs over the distinct sample values.
std::vector<std::pair<double, double>> ecdf(std::vector<double> samples);

struct UeResult {
  uint32_t ue_id = 0;
  uint32_t cell_id = 0;
  KpiRecord kpi;
  bool is_satisfied = false;
  double final_offset_db = 0.0;
};

struct OffsetTraceRow {
  double time_ms;
  uint32_t ue_id;
  double offset_db;
};

struct HarqTraceRow {
  uint32_t process_id;  // globally unique: ue_id * processes_per_ue + slot
  int tx_index;
  int mcs;
  std::string pending_bitmap;  // before the transmission, bit g at position g
  double sinr_db;
  std::string outcome_bitmap;  // NACK bits of the resulting feedback word
};

struct RunResult {
  std::vector<UeResult> ues;
  // Post-warm-up samples pooled over the system.
  std::vector<double> mcs_samples;      // one per first transmission
  std::vector<double> prb_load_samples; // PRB fraction per cell and data slot
  std::vector<OffsetTraceRow> offset_trace;
  std::vector<HarqTraceRow> harq_trace;
  std::vector<traffic::XrPacket> packet_trace;
  // Conservation over every generated packet, warm-up included.
  uint64_t conservation_total = 0;
  uint64_t conservation_accounted = 0;

  double mean_prb_load() const;
  double mean_mcs() const;
  // Pooled first-transmission group error rate.
  double first_tx_cbger() const;
  // Pooled share of transport blocks that are still undelivered after their
  // second transmission, over all first transmissions.
  double second_tx_residual_tber() const;
  uint64_t satisfied_count() const;
};

RunResult run_simulation(const Scenario& sc);

struct CapacityRow {
  int ues_per_cell = 0;
  double satisfied_fraction = 0.0;
  double stderr_of_mean = 0.0;  // across the per-run fractions
};

struct CapacityResult {
  std::vector<CapacityRow> rows;
  int capacity = 0;  // largest load meeting the satisfied-fraction bar
};

// Sweeps capacity.ue_counts with capacity.runs_per_count independent seeds
// per load level; run seeds derive from sim.seed, so results do not depend
// on the worker thread count.
CapacityResult system_capacity(const Scenario& base);

}  // namespace xrsim::sim
