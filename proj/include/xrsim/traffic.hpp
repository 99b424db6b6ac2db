#pragma once

#include <cstdint>
#include <vector>

#include "xrsim/rng.hpp"

namespace xrsim::traffic {

// Truncated Gaussian: values are redrawn until they land in [lo, hi].
struct TruncGaussParams {
  double mean = 0.0;
  double std = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

double sample_trunc_gauss(const TruncGaussParams& params, Rng& rng);

struct XrPacket {
  uint32_t ue_id = 0;
  uint32_t seq = 0;          // frame index at the source
  double arrival_ms = 0.0;
  uint64_t size_bits = 0;
  double deadline_ms = 0.0;  // arrival_ms + delay budget
  uint64_t remaining_bits = 0;
};

// Periodic frame arrivals at the given rate, each displaced by truncated
// Gaussian jitter and sized by a truncated Gaussian in bytes (rounded up to
// whole bytes). Returns packets with nominal arrival before the horizon,
// sorted by arrival time.
std::vector<XrPacket> generate_arrivals(uint32_t ue_id, double fps,
                                        const TruncGaussParams& jitter_ms,
                                        const TruncGaussParams& size_bytes,
                                        double pdb_ms, double horizon_ms,
                                        Rng& rng);

}  // namespace xrsim::traffic
