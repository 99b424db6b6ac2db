#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xrsim/link_model.hpp"
#include "xrsim/rng.hpp"

namespace xrsim::harq {

// Largest payload a single code block may carry.
inline constexpr uint64_t kMaxCbBits = 8448;
inline constexpr int kMaxCbgs = 8;

// Split of a transport block into code blocks and code block groups. The
// first (c mod m) groups hold one extra code block, so group sizes differ by
// at most one. m = 1 expresses whole-TB feedback and retransmission.
struct CbgLayout {
  uint64_t tb_bits = 0;
  int c = 0;      // number of code blocks
  int n_max = 0;  // configured maximum group count
  int m = 0;      // actual group count, min(n_max, c)
  std::array<uint16_t, kMaxCbgs> cbs_per_cbg{};
};

CbgLayout segment(uint64_t tb_bits, int n_max);

// One feedback word: bit g of nack_mask is set when group g failed. Groups
// that were not part of the transmission (already delivered) report ACK.
struct CbgFeedback {
  uint32_t process_id = 0;
  int tx_index = 0;       // 1-based transmission number this word answers
  uint8_t nack_mask = 0;
  int m = 0;              // feedback word length
  int f = 0;              // number of NACK bits
};

struct HarqProcess {
  uint32_t process_id = 0;
  uint32_t ue_id = 0;
  CbgLayout layout;
  uint8_t pending_mask = 0;  // groups not yet delivered
  int tx_count = 0;          // transmissions performed so far
  int max_tx = 4;            // first transmission plus allowed retransmissions
  int mcs_index = -1;        // frozen at the first transmission
  std::array<std::vector<double>, kMaxCbgs> per_cbg_sinr_history;

  bool done() const { return pending_mask == 0; }
  int pending_cbs() const;
  uint64_t pending_bits() const;
};

HarqProcess make_process(uint32_t process_id, uint32_t ue_id, CbgLayout layout,
                         int mcs_index, int max_tx);

// Performs one transmission of every pending group at the given SINR and
// draws per-code-block decode outcomes. With combining enabled each group is
// decoded at the power sum of its own transmission SINRs. Updates the
// pending mask, the transmission count and the SINR history.
CbgFeedback draw_outcome(HarqProcess& process, double sinr_db,
                         const phy::McsTable& table, const phy::LinkCurves& curves,
                         bool chase_combining, Rng& rng);

// PRBs needed to carry the given number of bits at the entry's spectral
// efficiency with data_re_per_prb resource elements per PRB.
uint32_t prbs_for_bits(uint64_t bits, const phy::McsEntry& mcs,
                       int data_re_per_prb);

// PRBs needed to retransmit exactly the pending groups at the frozen MCS.
uint32_t retransmission_payload_prbs(const HarqProcess& process,
                                     const phy::McsEntry& mcs,
                                     int data_re_per_prb);

// True once the process used up all transmissions with groups still pending.
bool residual_failure(const HarqProcess& process);

}  // namespace xrsim::harq
