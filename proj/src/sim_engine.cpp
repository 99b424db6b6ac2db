#include "xrsim/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "xrsim/harq.hpp"
#include "xrsim/link_adaptation.hpp"
#include "xrsim/link_model.hpp"

namespace xrsim::sim {

namespace {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

enum class PacketStatus { pending, delivered, lost };

struct PacketState {
  traffic::XrPacket pkt;
  uint64_t unsent_bits = 0;
  PacketStatus status = PacketStatus::pending;
  double delivered_ms = 0.0;  // latest decode instant that credited bits
};

struct CbgSpanRec {
  uint32_t packet_index;
  uint64_t bits;
};

struct Proc {
  harq::HarqProcess hp;
  std::array<std::vector<CbgSpanRec>, harq::kMaxCbgs> spans;
  bool active = false;
  bool awaiting = false;
  uint64_t feedback_usable_slot = 0;  // first slot that may act on the feedback
  double decode_ms = 0.0;
  uint8_t acked_now = 0;  // groups delivered by the latest transmission
  harq::CbgFeedback last_fb;
};

struct Ue {
  uint32_t id = 0;
  uint32_t cell = 0;
  double geometry_db = 0.0;
  phy::FadingProcess fading;
  phy::ChannelState ch;
  std::deque<std::pair<double, double>> cqi_pending;  // (effective_ms, value)
  la::OllaState olla;
  double inner_tber_target = 0.1;
  std::vector<PacketState> packets;
  size_t next_admit = 0;
  std::deque<uint32_t> queue;       // indices of packets with unsent bits
  uint64_t queued_unsent_bits = 0;
  std::vector<Proc> procs;
  double avg_tput_bits = 1.0;       // proportional-fair average, > 0
  uint64_t bits_this_slot = 0;
  bool served_this_slot = false;
  KpiRecord kpi;
  Rng chan_rng{0};
  Rng harq_rng{0};
};

uint64_t bits_for_mask(const harq::CbgLayout& layout, uint8_t mask) {
  uint64_t cbs = 0;
  for (int g = 0; g < layout.m; ++g) {
    if (mask & (1u << g)) cbs += layout.cbs_per_cbg[static_cast<size_t>(g)];
  }
  return (layout.tb_bits * cbs + static_cast<uint64_t>(layout.c) - 1) /
         static_cast<uint64_t>(layout.c);
}

std::string bitmap_string(uint8_t mask, int m) {
  std::string s(static_cast<size_t>(m), '0');
  for (int g = 0; g < m; ++g) {
    if (mask & (1u << g)) s[static_cast<size_t>(g)] = '1';
  }
  return s;
}

class Engine {
 public:
  explicit Engine(const Scenario& sc) : sc_(sc) {}

  RunResult run() {
    setup();
    for (uint64_t slot = 0; slot < total_slots_; ++slot) {
      now_ = static_cast<double>(slot) * tdd_.slot_ms;
      process_feedback(slot);
      advance_channels(slot);
      admit_packets();
      if (tdd_.kind(slot) == 'D') {
        for (int c = 0; c < sc_.sim.cells; ++c) schedule_cell(c, slot);
      }
      update_pf_averages();
    }
    finalize();
    return std::move(result_);
  }

 private:
  void setup() {
    table_ = sc_.link.mcs_table_csv.empty()
                 ? phy::McsTable::nr_default(sc_.link.sinr_ref0_db,
                                             sc_.link.sinr_ref_step_db)
                 : phy::McsTable::from_csv(sc_.link.mcs_table_csv);
    curves_.slope_nats_per_db = sc_.link.curve_slope_nats_per_db;
    tdd_.slots = sc_.sim.tdd_pattern;
    re_per_prb_ = sc_.sim.data_symbols_per_slot * 12;
    total_slots_ = static_cast<uint64_t>(
        std::ceil(sc_.sim.horizon_ms / tdd_.slot_ms - 1e-9));
    warmup_ms_ = sc_.sim.warmup_fraction * sc_.sim.horizon_ms;
    cqi_period_slots_ = std::max<uint64_t>(
        1, static_cast<uint64_t>(
               std::llround(sc_.channel.cqi_period_ms / tdd_.slot_ms)));
    mode_tb_ = sc_.harq.mode == HarqMode::tb;
    max_tx_ = 1 + sc_.harq.max_retx;

    ues_.reserve(static_cast<size_t>(sc_.sim.cells) *
                 static_cast<size_t>(sc_.sim.ues_per_cell));
    for (int c = 0; c < sc_.sim.cells; ++c) {
      for (int i = 0; i < sc_.sim.ues_per_cell; ++i) {
        Ue u;
        u.cell = static_cast<uint32_t>(c);
        u.id = static_cast<uint32_t>(c * sc_.sim.ues_per_cell + i);
        std::string label =
            "cell" + std::to_string(c) + "/ue" + std::to_string(i);
        Rng traffic_rng(derive_seed(sc_.sim.seed, label + "/traffic"));
        u.chan_rng = Rng(derive_seed(sc_.sim.seed, label + "/channel"));
        u.harq_rng = Rng(derive_seed(sc_.sim.seed, label + "/harq"));
        auto arrivals = traffic::generate_arrivals(
            u.id, sc_.traffic.fps, sc_.traffic.jitter_ms,
            sc_.traffic.frame_bytes, sc_.traffic.pdb_ms, sc_.sim.horizon_ms,
            traffic_rng);
        u.packets.reserve(arrivals.size());
        for (const auto& pkt : arrivals) {
          PacketState ps;
          ps.pkt = pkt;
          ps.unsent_bits = pkt.size_bits;
          u.packets.push_back(std::move(ps));
          if (sc_.output.packet_trace) result_.packet_trace.push_back(pkt);
        }
        u.geometry_db = u.chan_rng.uniform(sc_.channel.geometry_lo_db,
                                           sc_.channel.geometry_hi_db);
        u.fading.std_db = sc_.channel.fading_std_db;
        u.fading.corr = sc_.channel.fading_corr;
        u.fading.init(u.chan_rng);
        u.ch.ue_id = u.id;
        u.ch.true_sinr_db = u.geometry_db + u.fading.state_db;
        // Bootstrap report so MCS selection is defined from the first slot.
        u.ch.cqi_sinr_db =
            phy::report_cqi(u.ch, 0.0, sc_.channel.cqi_step_db,
                            sc_.channel.cqi_noise_std_db, u.chan_rng);
        u.olla.policy = sc_.la.policy;
        u.olla.offset_db = sc_.la.offset_init_db;
        u.olla.step_up_db = sc_.la.step_up_db;
        u.olla.step_down_db = sc_.la.step_down_db;
        u.olla.offset_min_db = sc_.la.offset_min_db;
        u.olla.offset_max_db = sc_.la.offset_max_db;
        u.inner_tber_target = sc_.la.tber_target;
        u.procs.resize(static_cast<size_t>(sc_.harq.processes_per_ue));
        u.kpi.mcs_histogram.assign(static_cast<size_t>(table_.size()), 0);
        ues_.push_back(std::move(u));
      }
    }
  }

  void process_feedback(uint64_t slot) {
    for (Ue& u : ues_) {
      for (Proc& p : u.procs) {
        if (p.active && p.awaiting && p.feedback_usable_slot <= slot) {
          handle_feedback(u, p);
        }
      }
    }
  }

  void handle_feedback(Ue& u, Proc& p) {
    const harq::CbgFeedback& fb = p.last_fb;
    p.awaiting = false;
    switch (u.olla.policy) {
      case la::Policy::traditional:
        if (fb.tx_index == 1) {
          u.olla = la::update_traditional(u.olla, fb.f == 0);
          trace_offset(u);
        }
        break;
      case la::Policy::eolla_alg1:
        if (fb.tx_index == 1) {
          u.olla = la::update_alg1(u.olla, fb);
          trace_offset(u);
        }
        break;
      case la::Policy::eolla_alg2:
        if (fb.tx_index <= 2) {
          u.olla = la::update_alg2(u.olla, fb, fb.tx_index);
          trace_offset(u);
        }
        break;
    }

    // Credit the groups delivered by this transmission to their packets.
    uint8_t acked = p.acked_now;
    p.acked_now = 0;
    for (int g = 0; g < p.hp.layout.m; ++g) {
      if (!(acked & (1u << g))) continue;
      for (const CbgSpanRec& span : p.spans[static_cast<size_t>(g)]) {
        PacketState& ps = u.packets[span.packet_index];
        if (span.bits > ps.pkt.remaining_bits) {
          throw std::logic_error("delivered more bits than a packet holds");
        }
        ps.pkt.remaining_bits -= span.bits;
        ps.delivered_ms = std::max(ps.delivered_ms, p.decode_ms);
        if (ps.pkt.remaining_bits == 0 && ps.status == PacketStatus::pending) {
          ps.status = PacketStatus::delivered;
        }
      }
    }

    if (p.hp.done()) {
      release(p);
    } else if (harq::residual_failure(p.hp)) {
      // Out of transmissions: everything still pending in this process is
      // undeliverable, and queued bits of those packets are dropped too.
      for (int g = 0; g < p.hp.layout.m; ++g) {
        if (!(p.hp.pending_mask & (1u << g))) continue;
        for (const CbgSpanRec& span : p.spans[static_cast<size_t>(g)]) {
          PacketState& ps = u.packets[span.packet_index];
          if (ps.status == PacketStatus::pending) {
            ps.status = PacketStatus::lost;
            u.queued_unsent_bits -= ps.unsent_bits;
            ps.unsent_bits = 0;
          }
        }
      }
      release(p);
    }
    // Otherwise the process stays active and becomes eligible for
    // retransmission in the next data slot.
  }

  void release(Proc& p) {
    p.active = false;
    p.awaiting = false;
    p.acked_now = 0;
    for (auto& s : p.spans) s.clear();
  }

  void advance_channels(uint64_t slot) {
    for (Ue& u : ues_) {
      u.fading.step(u.chan_rng);
      u.ch.true_sinr_db = u.geometry_db + u.fading.state_db;
      while (!u.cqi_pending.empty() &&
             u.cqi_pending.front().first <= now_ + 1e-9) {
        u.ch.cqi_sinr_db = u.cqi_pending.front().second;
        u.cqi_pending.pop_front();
      }
      if (slot > 0 && slot % cqi_period_slots_ == 0) {
        double value =
            phy::report_cqi(u.ch, now_, sc_.channel.cqi_step_db,
                            sc_.channel.cqi_noise_std_db, u.chan_rng);
        u.cqi_pending.emplace_back(now_ + sc_.channel.cqi_delay_ms, value);
      }
    }
  }

  void admit_packets() {
    for (Ue& u : ues_) {
      while (u.next_admit < u.packets.size() &&
             u.packets[u.next_admit].pkt.arrival_ms <= now_ + 1e-9) {
        u.queue.push_back(static_cast<uint32_t>(u.next_admit));
        u.queued_unsent_bits += u.packets[u.next_admit].unsent_bits;
        ++u.next_admit;
      }
    }
  }

  void drop_finished_queue_head(Ue& u) {
    while (!u.queue.empty() &&
           u.packets[u.queue.front()].unsent_bits == 0) {
      u.queue.pop_front();
    }
  }

  int free_proc_index(const Ue& u) const {
    for (size_t i = 0; i < u.procs.size(); ++i) {
      if (!u.procs[i].active) return static_cast<int>(i);
    }
    return -1;
  }

  void schedule_cell(int cell, uint64_t slot) {
    int avail = sc_.sim.prbs;
    size_t first = static_cast<size_t>(cell) *
                   static_cast<size_t>(sc_.sim.ues_per_cell);
    size_t last = first + static_cast<size_t>(sc_.sim.ues_per_cell);
    for (size_t i = first; i < last; ++i) ues_[i].served_this_slot = false;

    // Retransmissions first, lowest UE id and process id first, at most one
    // transmission per UE per slot.
    for (size_t i = first; i < last && avail > 0; ++i) {
      Ue& u = ues_[i];
      for (Proc& p : u.procs) {
        if (!p.active || p.awaiting || p.hp.done()) continue;
        if (p.hp.tx_count >= p.hp.max_tx) continue;
        uint32_t need = harq::retransmission_payload_prbs(
            p.hp, table_.entry(p.hp.mcs_index), re_per_prb_);
        if (static_cast<int>(need) > avail) continue;
        transmit(u, p, slot, need);
        avail -= static_cast<int>(need);
        u.served_this_slot = true;
        break;
      }
    }

    // New data in proportional-fair order.
    struct Cand {
      double metric;
      size_t ue_index;
      int mcs;
      double bits_per_prb;
    };
    std::vector<Cand> cands;
    for (size_t i = first; i < last; ++i) {
      Ue& u = ues_[i];
      if (u.served_this_slot) continue;
      drop_finished_queue_head(u);
      if (u.queue.empty()) continue;
      if (free_proc_index(u) < 0) continue;
      int mcs = la::select_mcs(la::effective_sinr_db(u.ch.cqi_sinr_db, u.olla),
                               u.inner_tber_target, table_, curves_);
      double bpp = table_.entry(mcs).spectral_efficiency * re_per_prb_;
      cands.push_back(Cand{bpp / u.avg_tput_bits, i, mcs, bpp});
    }
    std::sort(cands.begin(), cands.end(), [this](const Cand& a, const Cand& b) {
      if (a.metric != b.metric) return a.metric > b.metric;
      return ues_[a.ue_index].id < ues_[b.ue_index].id;
    });
    for (const Cand& cand : cands) {
      if (avail == 0) break;
      Ue& u = ues_[cand.ue_index];
      uint64_t capacity_bits =
          static_cast<uint64_t>(avail * cand.bits_per_prb + 1e-9);
      uint64_t tb_bits = std::min(u.queued_unsent_bits, capacity_bits);
      if (tb_bits == 0) continue;
      const phy::McsEntry& entry = table_.entry(cand.mcs);
      uint32_t used = harq::prbs_for_bits(tb_bits, entry, re_per_prb_);
      if (static_cast<int>(used) > avail) {
        throw std::logic_error("PRB allocation exceeded the grant");
      }
      build_and_transmit(u, tb_bits, cand.mcs, used, slot);
      avail -= static_cast<int>(used);
    }

    if (avail < 0) throw std::logic_error("PRB budget overrun");
    if (now_ >= warmup_ms_) {
      result_.prb_load_samples.push_back(
          static_cast<double>(sc_.sim.prbs - avail) /
          static_cast<double>(sc_.sim.prbs));
    }
  }

  void build_and_transmit(Ue& u, uint64_t tb_bits, int mcs, uint32_t prbs,
                          uint64_t slot) {
    harq::CbgLayout layout = harq::segment(tb_bits, mode_tb_ ? 1 : sc_.harq.n_max);
    int pidx = free_proc_index(u);
    if (pidx < 0) throw std::logic_error("no free HARQ process for a new TB");
    Proc& p = u.procs[static_cast<size_t>(pidx)];
    p.hp = harq::make_process(static_cast<uint32_t>(pidx), u.id, layout, mcs,
                              max_tx_);
    for (auto& s : p.spans) s.clear();
    p.active = true;
    p.acked_now = 0;

    // Walk the queue and bind payload spans to each group, in code block
    // order so group payloads line up with the segmentation.
    uint64_t cb_base = tb_bits / static_cast<uint64_t>(layout.c);
    uint64_t cb_extra = tb_bits % static_cast<uint64_t>(layout.c);
    uint64_t cb_cursor = 0;
    for (int g = 0; g < layout.m; ++g) {
      uint64_t group_bits = 0;
      for (int j = 0; j < layout.cbs_per_cbg[static_cast<size_t>(g)]; ++j) {
        group_bits += cb_base + (cb_cursor < cb_extra ? 1 : 0);
        ++cb_cursor;
      }
      while (group_bits > 0) {
        drop_finished_queue_head(u);
        if (u.queue.empty()) {
          throw std::logic_error("TB larger than the queued payload");
        }
        uint32_t pkt_index = u.queue.front();
        PacketState& ps = u.packets[pkt_index];
        uint64_t take = std::min(group_bits, ps.unsent_bits);
        p.spans[static_cast<size_t>(g)].push_back(CbgSpanRec{pkt_index, take});
        ps.unsent_bits -= take;
        u.queued_unsent_bits -= take;
        group_bits -= take;
        if (ps.unsent_bits == 0) u.queue.pop_front();
      }
    }

    if (now_ >= warmup_ms_) {
      u.kpi.mcs_histogram[static_cast<size_t>(mcs)]++;
      result_.mcs_samples.push_back(static_cast<double>(mcs));
    }
    transmit(u, p, slot, prbs);
    u.served_this_slot = true;
  }

  void transmit(Ue& u, Proc& p, uint64_t slot, uint32_t prbs) {
    uint8_t pending_before = p.hp.pending_mask;
    double sinr = u.ch.true_sinr_db;
    harq::CbgFeedback fb = harq::draw_outcome(
        p.hp, sinr, table_, curves_, sc_.harq.chase_combining, u.harq_rng);
    p.last_fb = fb;
    p.acked_now = static_cast<uint8_t>(pending_before & ~p.hp.pending_mask);
    p.decode_ms = static_cast<double>(slot + 1) * tdd_.slot_ms;
    p.awaiting = true;
    p.feedback_usable_slot = feedback_slot_for(slot) + 1;

    u.bits_this_slot += bits_for_mask(p.hp.layout, pending_before);
    u.kpi.prb_used += prbs;
    if (now_ >= warmup_ms_) {
      if (fb.tx_index == 1) {
        u.kpi.first_tx_cbg_sent += static_cast<uint64_t>(fb.m);
        u.kpi.first_tx_cbg_failed += static_cast<uint64_t>(fb.f);
      } else if (fb.tx_index == 2) {
        u.kpi.second_tx_count += 1;
        u.kpi.second_tx_failed += fb.f > 0 ? 1 : 0;
      }
    }
    if (sc_.output.harq_trace) {
      result_.harq_trace.push_back(HarqTraceRow{
          u.id * static_cast<uint32_t>(sc_.harq.processes_per_ue) +
              p.hp.process_id,
          fb.tx_index, p.hp.mcs_index,
          bitmap_string(pending_before, p.hp.layout.m), sinr,
          bitmap_string(fb.nack_mask, fb.m)});
    }
  }

  // First slot whose start lies at or after decode + processing delay and
  // that carries uplink; the feedback becomes usable the slot after it.
  uint64_t feedback_slot_for(uint64_t tx_slot) const {
    double ready_ms =
        static_cast<double>(tx_slot + 1) * tdd_.slot_ms +
        static_cast<double>(sc_.harq.processing_delay_symbols) / 14.0 *
            tdd_.slot_ms;
    uint64_t j = tx_slot + 1;
    while (!(tdd_.kind(j) == 'U' &&
             static_cast<double>(j) * tdd_.slot_ms + 1e-9 >= ready_ms)) {
      ++j;
    }
    return j;
  }

  void update_pf_averages() {
    double alpha = 1.0 / sc_.sim.pf_window_slots;
    for (Ue& u : ues_) {
      u.avg_tput_bits = (1.0 - alpha) * u.avg_tput_bits +
                        alpha * static_cast<double>(u.bits_this_slot);
      if (u.avg_tput_bits < 1.0) u.avg_tput_bits = 1.0;
      u.bits_this_slot = 0;
    }
  }

  void trace_offset(const Ue& u) {
    if (sc_.output.offset_trace) {
      result_.offset_trace.push_back(OffsetTraceRow{now_, u.id, u.olla.offset_db});
    }
  }

  void finalize() {
    result_.ues.reserve(ues_.size());
    for (Ue& u : ues_) {
      for (const PacketState& ps : u.packets) {
        ++result_.conservation_total;
        bool consistent = false;
        switch (ps.status) {
          case PacketStatus::delivered:
            consistent = ps.pkt.remaining_bits == 0;
            break;
          case PacketStatus::lost:
            consistent = ps.pkt.remaining_bits > 0;
            break;
          case PacketStatus::pending:
            consistent = true;
            break;
        }
        if (consistent) ++result_.conservation_accounted;

        if (ps.pkt.arrival_ms < warmup_ms_) continue;
        ++u.kpi.packets_total;
        switch (ps.status) {
          case PacketStatus::delivered: {
            double delay = ps.delivered_ms - ps.pkt.arrival_ms;
            if (ps.delivered_ms <= ps.pkt.deadline_ms + 1e-9) {
              ++u.kpi.packets_on_time;
            } else {
              ++u.kpi.packets_late;
            }
            u.kpi.delay_samples_ms.push_back(delay);
            break;
          }
          case PacketStatus::lost:
            ++u.kpi.packets_lost;
            break;
          case PacketStatus::pending:
            ++u.kpi.packets_in_flight;
            break;
        }
      }
      UeResult ur;
      ur.ue_id = u.id;
      ur.cell_id = u.cell;
      ur.is_satisfied =
          u.kpi.packets_total > 0 ? satisfied(u.kpi, sc_.sim.reliability) : true;
      ur.final_offset_db = u.olla.offset_db;
      ur.kpi = std::move(u.kpi);
      result_.ues.push_back(std::move(ur));
    }
  }

  const Scenario& sc_;
  phy::McsTable table_;
  phy::LinkCurves curves_;
  TddPattern tdd_;
  int re_per_prb_ = 156;
  uint64_t total_slots_ = 0;
  double warmup_ms_ = 0.0;
  uint64_t cqi_period_slots_ = 4;
  bool mode_tb_ = false;
  int max_tx_ = 4;
  double now_ = 0.0;
  std::vector<Ue> ues_;
  RunResult result_;
};

}  // namespace

double RunResult::mean_prb_load() const { return mean_of(prb_load_samples); }

double RunResult::mean_mcs() const { return mean_of(mcs_samples); }

double RunResult::first_tx_cbger() const {
  uint64_t sent = 0;
  uint64_t failed = 0;
  for (const UeResult& u : ues) {
    sent += u.kpi.first_tx_cbg_sent;
    failed += u.kpi.first_tx_cbg_failed;
  }
  return sent ? static_cast<double>(failed) / static_cast<double>(sent) : 0.0;
}

double RunResult::second_tx_residual_tber() const {
  // Every TB ends its second-transmission stage in exactly one of three
  // states: delivered at the first transmission, delivered at the second or
  // still failed; the residual rate is the failed share over all TBs.
  uint64_t tbs = 0;
  uint64_t failed = 0;
  for (const UeResult& u : ues) {
    for (uint64_t n : u.kpi.mcs_histogram) tbs += n;
    failed += u.kpi.second_tx_failed;
  }
  return tbs ? static_cast<double>(failed) / static_cast<double>(tbs) : 0.0;
}

uint64_t RunResult::satisfied_count() const {
  uint64_t n = 0;
  for (const UeResult& u : ues) n += u.is_satisfied ? 1 : 0;
  return n;
}

bool satisfied(const KpiRecord& kpi, double reliability) {
  if (kpi.packets_total == 0) {
    throw std::invalid_argument("satisfaction of an empty KPI record");
  }
  double fraction = static_cast<double>(kpi.packets_on_time) /
                    static_cast<double>(kpi.packets_total);
  return fraction > reliability;
}

std::vector<std::pair<double, double>> ecdf(std::vector<double> samples) {
  std::vector<std::pair<double, double>> out;
  if (samples.empty()) return out;
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  size_t i = 0;
  while (i < samples.size()) {
    size_t j = i;
    while (j + 1 < samples.size() && samples[j + 1] == samples[i]) ++j;
    out.emplace_back(samples[i], static_cast<double>(j + 1) / n);
    i = j + 1;
  }
  return out;
}

RunResult run_simulation(const Scenario& sc) { return Engine(sc).run(); }

CapacityResult system_capacity(const Scenario& base) {
  const auto& counts = base.capacity.ue_counts;
  int runs = base.capacity.runs_per_count;
  std::vector<std::vector<double>> fractions(
      counts.size(), std::vector<double>(static_cast<size_t>(runs), 0.0));

  struct Task {
    size_t count_index;
    int run;
  };
  std::vector<Task> tasks;
  for (size_t ci = 0; ci < counts.size(); ++ci) {
    for (int r = 0; r < runs; ++r) tasks.push_back(Task{ci, r});
  }

  unsigned hw = std::thread::hardware_concurrency();
  size_t workers = base.capacity.threads > 0
                       ? static_cast<size_t>(base.capacity.threads)
                       : std::max<size_t>(1, hw);
  workers = std::min(workers, tasks.size());

  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&]() {
    for (;;) {
      size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      try {
        Scenario sc = base;
        sc.sim.ues_per_cell = counts[task.count_index];
        sc.sim.seed = derive_seed(
            base.sim.seed, "capacity/ues=" +
                               std::to_string(counts[task.count_index]) +
                               "/run=" + std::to_string(task.run));
        RunResult rr = run_simulation(sc);
        size_t total = rr.ues.size();
        fractions[task.count_index][static_cast<size_t>(task.run)] =
            total ? static_cast<double>(rr.satisfied_count()) /
                        static_cast<double>(total)
                  : 0.0;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  CapacityResult out;
  for (size_t ci = 0; ci < counts.size(); ++ci) {
    const auto& fs = fractions[ci];
    double mean = 0.0;
    for (double f : fs) mean += f;
    mean /= static_cast<double>(fs.size());
    double var = 0.0;
    for (double f : fs) var += (f - mean) * (f - mean);
    double se = fs.size() > 1
                    ? std::sqrt(var / (static_cast<double>(fs.size()) *
                                       (static_cast<double>(fs.size()) - 1.0)))
                    : 0.0;
    out.rows.push_back(CapacityRow{counts[ci], mean, se});
    if (mean >= base.capacity.satisfied_fraction) out.capacity = counts[ci];
  }
  return out;
}

}  // namespace xrsim::sim
