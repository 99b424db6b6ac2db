#include "xrsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xrsim::traffic {

double sample_trunc_gauss(const TruncGaussParams& params, Rng& rng) {
  if (params.lo > params.hi) {
    throw std::invalid_argument("truncated Gaussian: lo > hi");
  }
  if (params.std < 0.0) {
    throw std::invalid_argument("truncated Gaussian: std must be >= 0");
  }
  if (params.lo == params.hi) return params.lo;
  if (params.std == 0.0) return std::clamp(params.mean, params.lo, params.hi);
  // Rejection sampling; the acceptance probability is high for every
  // parameter set used here (bounds within a few standard deviations).
  for (int attempt = 0; attempt < 100000; ++attempt) {
    double x = rng.normal(params.mean, params.std);
    if (x >= params.lo && x <= params.hi) return x;
  }
  // Unreachable for sane parameters; keep the sampler total anyway.
  return std::clamp(params.mean, params.lo, params.hi);
}

std::vector<XrPacket> generate_arrivals(uint32_t ue_id, double fps,
                                        const TruncGaussParams& jitter_ms,
                                        const TruncGaussParams& size_bytes,
                                        double pdb_ms, double horizon_ms,
                                        Rng& rng) {
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be > 0");
  if (!(pdb_ms > 0.0)) throw std::invalid_argument("delay budget must be > 0");
  if (!(horizon_ms > 0.0)) throw std::invalid_argument("horizon must be > 0");

  double period_ms = 1000.0 / fps;
  std::vector<XrPacket> out;
  out.reserve(static_cast<size_t>(horizon_ms / period_ms) + 1);
  for (uint32_t k = 0;; ++k) {
    double nominal = static_cast<double>(k) * period_ms;
    if (nominal >= horizon_ms) break;
    double arrival = nominal + sample_trunc_gauss(jitter_ms, rng);
    if (arrival < 0.0) arrival = 0.0;  // jitter cannot move a frame before start
    double bytes = std::ceil(sample_trunc_gauss(size_bytes, rng));
    if (bytes < 1.0) bytes = 1.0;
    uint64_t bits = static_cast<uint64_t>(bytes) * 8;
    out.push_back(XrPacket{ue_id, k, arrival, bits, arrival + pdb_ms, bits});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const XrPacket& a, const XrPacket& b) {
                     return a.arrival_ms < b.arrival_ms;
                   });
  return out;
}

}  // namespace xrsim::traffic
