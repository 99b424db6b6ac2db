#include "xrsim/harq.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace xrsim::harq {

CbgLayout segment(uint64_t tb_bits, int n_max) {
  if (tb_bits == 0) throw std::invalid_argument("cannot segment an empty TB");
  if (n_max < 1 || n_max > kMaxCbgs) {
    throw std::invalid_argument("group count limit must be in [1, 8], got " +
                                std::to_string(n_max));
  }
  CbgLayout layout;
  layout.tb_bits = tb_bits;
  uint64_t c = (tb_bits + kMaxCbBits - 1) / kMaxCbBits;
  if (c > 0xffff) {
    throw std::invalid_argument("TB too large: " + std::to_string(tb_bits) +
                                " bits");
  }
  layout.c = static_cast<int>(c);
  layout.n_max = n_max;
  layout.m = std::min(n_max, layout.c);
  int base = layout.c / layout.m;
  int extra = layout.c % layout.m;
  for (int g = 0; g < layout.m; ++g) {
    layout.cbs_per_cbg[static_cast<size_t>(g)] =
        static_cast<uint16_t>(base + (g < extra ? 1 : 0));
  }
  return layout;
}

int HarqProcess::pending_cbs() const {
  int n = 0;
  for (int g = 0; g < layout.m; ++g) {
    if (pending_mask & (1u << g)) n += layout.cbs_per_cbg[static_cast<size_t>(g)];
  }
  return n;
}

uint64_t HarqProcess::pending_bits() const {
  // Bits are spread over code blocks as evenly as possible; charge the
  // pending groups their proportional share, rounded up.
  uint64_t cbs = static_cast<uint64_t>(pending_cbs());
  return (layout.tb_bits * cbs + static_cast<uint64_t>(layout.c) - 1) /
         static_cast<uint64_t>(layout.c);
}

HarqProcess make_process(uint32_t process_id, uint32_t ue_id, CbgLayout layout,
                         int mcs_index, int max_tx) {
  if (max_tx < 1) throw std::invalid_argument("max_tx must be >= 1");
  HarqProcess p;
  p.process_id = process_id;
  p.ue_id = ue_id;
  p.layout = layout;
  p.pending_mask = static_cast<uint8_t>((1u << layout.m) - 1u);
  p.tx_count = 0;
  p.max_tx = max_tx;
  p.mcs_index = mcs_index;
  return p;
}

CbgFeedback draw_outcome(HarqProcess& process, double sinr_db,
                         const phy::McsTable& table, const phy::LinkCurves& curves,
                         bool chase_combining, Rng& rng) {
  if (process.pending_mask == 0) {
    throw std::logic_error("draw_outcome on a completed process");
  }
  if (process.tx_count >= process.max_tx) {
    throw std::logic_error("draw_outcome on an exhausted process");
  }
  const phy::McsEntry& mcs = table.entry(process.mcs_index);
  ++process.tx_count;

  CbgFeedback fb;
  fb.process_id = process.process_id;
  fb.tx_index = process.tx_count;
  fb.m = process.layout.m;
  for (int g = 0; g < process.layout.m; ++g) {
    uint8_t bit = static_cast<uint8_t>(1u << g);
    if (!(process.pending_mask & bit)) continue;
    auto& history = process.per_cbg_sinr_history[static_cast<size_t>(g)];
    history.push_back(sinr_db);
    double decode_sinr =
        chase_combining ? phy::combined_sinr_db(history) : sinr_db;
    double p_tb = phy::tb_error_probability(decode_sinr, mcs, curves);
    double p_cb = phy::cb_error_probability(p_tb, process.layout.c);
    bool failed = false;
    for (int cb = 0; cb < process.layout.cbs_per_cbg[static_cast<size_t>(g)];
         ++cb) {
      if (rng.bernoulli(p_cb)) {
        failed = true;
        break;
      }
    }
    if (failed) {
      fb.nack_mask |= bit;
    } else {
      process.pending_mask = static_cast<uint8_t>(process.pending_mask & ~bit);
    }
  }
  fb.f = std::popcount(fb.nack_mask);
  return fb;
}

uint32_t prbs_for_bits(uint64_t bits, const phy::McsEntry& mcs,
                       int data_re_per_prb) {
  if (data_re_per_prb < 1) {
    throw std::invalid_argument("data REs per PRB must be >= 1");
  }
  if (bits == 0) return 0;
  double bits_per_prb = mcs.spectral_efficiency * data_re_per_prb;
  auto n = static_cast<uint64_t>(
      std::ceil(static_cast<double>(bits) / bits_per_prb - 1e-9));
  if (n == 0) n = 1;
  while (static_cast<uint64_t>(n * bits_per_prb + 1e-9) < bits) ++n;
  return static_cast<uint32_t>(n);
}

uint32_t retransmission_payload_prbs(const HarqProcess& process,
                                     const phy::McsEntry& mcs,
                                     int data_re_per_prb) {
  return prbs_for_bits(process.pending_bits(), mcs, data_re_per_prb);
}

bool residual_failure(const HarqProcess& process) {
  return process.tx_count >= process.max_tx && process.pending_mask != 0;
}

}  // namespace xrsim::harq
