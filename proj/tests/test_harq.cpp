#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "xrsim/analytics.hpp"
#include "xrsim/harq.hpp"

using namespace xrsim;
using namespace xrsim::harq;

TEST_CASE("segmentation splits on the 8448-bit code block boundary") {
  CbgLayout one = segment(8448, 8);
  CHECK(one.c == 1);
  CHECK(one.m == 1);
  CHECK(one.cbs_per_cbg[0] == 1);

  CbgLayout two = segment(8449, 8);
  CHECK(two.c == 2);
  CHECK(two.m == 2);
  CHECK(two.cbs_per_cbg[0] == 1);
  CHECK(two.cbs_per_cbg[1] == 1);

  CbgLayout eight = segment(8 * 8448, 8);
  CHECK(eight.c == 8);
  CHECK(eight.m == 8);
  for (int g = 0; g < 8; ++g) CHECK(eight.cbs_per_cbg[g] == 1);

  CbgLayout tiny = segment(1, 8);
  CHECK(tiny.c == 1);
  CHECK(tiny.m == 1);
}

TEST_CASE("group sizes differ by at most one, larger groups first") {
  // 13 code blocks over 8 groups: five groups of two, three of one.
  CbgLayout l = segment(13 * 8448, 8);
  CHECK(l.c == 13);
  CHECK(l.m == 8);
  std::vector<int> expect{2, 2, 2, 2, 2, 1, 1, 1};
  for (int g = 0; g < 8; ++g) CHECK(l.cbs_per_cbg[g] == expect[g]);
}

TEST_CASE("whole-TB mode is the single-group special case") {
  CbgLayout l = segment(13 * 8448, 1);
  CHECK(l.c == 13);
  CHECK(l.m == 1);
  CHECK(l.cbs_per_cbg[0] == 13);
}

TEST_CASE("segmentation invariants over a parameter sweep") {
  Rng rng(17);
  for (int trial = 0; trial < 10000; ++trial) {
    uint64_t bits = 1 + rng.uniform_int(40 * 8448);
    int n_max = 1 + static_cast<int>(rng.uniform_int(8));
    CbgLayout l = segment(bits, n_max);
    CHECK(l.c == static_cast<int>((bits + kMaxCbBits - 1) / kMaxCbBits));
    CHECK(l.m == std::min(n_max, l.c));
    int total = 0;
    int lo = 1 << 30;
    int hi = 0;
    for (int g = 0; g < l.m; ++g) {
      total += l.cbs_per_cbg[g];
      lo = std::min<int>(lo, l.cbs_per_cbg[g]);
      hi = std::max<int>(hi, l.cbs_per_cbg[g]);
    }
    CHECK(total == l.c);
    CHECK(hi - lo <= 1);
  }
}

TEST_CASE("segmentation rejects invalid input") {
  CHECK_THROWS_AS(segment(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(segment(100, 0), std::invalid_argument);
  CHECK_THROWS_WITH_AS(segment(100, 9),
                       "group count limit must be in [1, 8], got 9",
                       std::invalid_argument);
}

TEST_CASE("a fresh process has every group pending") {
  HarqProcess p = make_process(3, 7, segment(13 * 8448, 8), 10, 4);
  CHECK(p.process_id == 3);
  CHECK(p.ue_id == 7);
  CHECK(p.pending_mask == 0xff);
  CHECK(p.tx_count == 0);
  CHECK_FALSE(p.done());
  CHECK(p.pending_cbs() == 13);
  CHECK(p.pending_bits() == 13 * 8448);
  CHECK_FALSE(residual_failure(p));
  CHECK_THROWS_AS(make_process(0, 0, segment(100, 1), 0, 0),
                  std::invalid_argument);
}

TEST_CASE("transmission at extreme SINRs is deterministic") {
  phy::McsTable table = phy::McsTable::nr_default();
  phy::LinkCurves curves{2.0};
  Rng rng(5);

  HarqProcess good = make_process(0, 0, segment(5 * 8448, 4), 12, 4);
  CbgFeedback fb = draw_outcome(good, 500.0, table, curves, true, rng);
  CHECK(fb.tx_index == 1);
  CHECK(fb.m == 4);
  CHECK(fb.f == 0);
  CHECK(fb.nack_mask == 0);
  CHECK(good.done());
  CHECK(good.pending_bits() == 0);
  CHECK_THROWS_AS(draw_outcome(good, 500.0, table, curves, true, rng),
                  std::logic_error);

  HarqProcess bad = make_process(1, 0, segment(5 * 8448, 4), 12, 2);
  fb = draw_outcome(bad, -500.0, table, curves, true, rng);
  CHECK(fb.f == 4);
  CHECK(fb.nack_mask == 0x0f);
  CHECK(bad.pending_mask == 0x0f);
  CHECK_FALSE(residual_failure(bad));
  fb = draw_outcome(bad, -500.0, table, curves, true, rng);
  CHECK(fb.tx_index == 2);
  CHECK(fb.f == 4);
  CHECK(residual_failure(bad));
  CHECK_THROWS_AS(draw_outcome(bad, -500.0, table, curves, true, rng),
                  std::logic_error);
}

TEST_CASE("delivered groups stay delivered") {
  phy::McsTable table = phy::McsTable::nr_default();
  phy::LinkCurves curves{2.0};
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    HarqProcess p = make_process(0, 0, segment(8 * 8448, 8), 13, 4);
    double sinr = table.entry(13).sinr_ref_db + rng.uniform(-3.0, 1.0);
    while (!p.done() && p.tx_count < p.max_tx) {
      uint8_t before = p.pending_mask;
      CbgFeedback fb = draw_outcome(p, sinr, table, curves, true, rng);
      // No group leaves the delivered state, and NACKs match the mask.
      CHECK((p.pending_mask & ~before) == 0);
      CHECK(p.pending_mask == (before & fb.nack_mask));
      CHECK(fb.f == std::popcount(fb.nack_mask));
    }
  }
}

TEST_CASE("first-transmission group failures follow the binomial law") {
  phy::McsTable table = phy::McsTable::nr_default();
  phy::LinkCurves curves{2.0};
  Rng rng(424242);
  const int mcs = 15;
  const double sinr = table.entry(mcs).sinr_ref_db;  // 10% TB error
  const int n = 100000;
  const double p_cbg = phy::cb_error_probability(0.1, 8);

  std::array<int, 9> counts{};
  double sum_f = 0.0;
  for (int i = 0; i < n; ++i) {
    HarqProcess p = make_process(0, 0, segment(8 * 8448, 8), mcs, 4);
    CbgFeedback fb = draw_outcome(p, sinr, table, curves, true, rng);
    counts[static_cast<size_t>(fb.f)]++;
    sum_f += fb.f;
  }
  // Individual bins k = 0..2 and the merged tail, three sigmas each.
  auto check_bin = [&](double expect_p, int observed) {
    double mu = n * expect_p;
    double sigma = std::sqrt(n * expect_p * (1.0 - expect_p));
    CHECK(std::abs(observed - mu) <= 3.0 * sigma);
  };
  double tail_p = 1.0;
  for (int k = 0; k <= 2; ++k) {
    double pk = analytics::failed_cbg_pmf(k, p_cbg, 8);
    check_bin(pk, counts[static_cast<size_t>(k)]);
    tail_p -= pk;
  }
  int tail_obs = 0;
  for (int k = 3; k <= 8; ++k) tail_obs += counts[static_cast<size_t>(k)];
  check_bin(tail_p, tail_obs);
  CHECK(std::abs(sum_f / n - 8.0 * p_cbg) <= 0.004);
}

TEST_CASE("combining makes retransmissions far more reliable") {
  phy::McsTable table = phy::McsTable::nr_default();
  phy::LinkCurves curves{2.0};
  const int mcs = 15;
  const double sinr = table.entry(mcs).sinr_ref_db;
  auto second_tx_failures = [&](bool chase, uint64_t seed) {
    Rng rng(seed);
    int first_failures = 0;
    int second_failures = 0;
    for (int i = 0; i < 20000; ++i) {
      HarqProcess p = make_process(0, 0, segment(8448, 1), mcs, 4);
      draw_outcome(p, sinr, table, curves, chase, rng);
      if (p.done()) continue;
      ++first_failures;
      draw_outcome(p, sinr, table, curves, chase, rng);
      if (!p.done()) ++second_failures;
    }
    CHECK(std::abs(first_failures - 2000) <= 135);  // ~0.1 * 20000, 3 sigma
    return second_failures;
  };
  // Without combining the repeat decodes at 10% again; with combining the
  // doubled power drops the error by more than two orders of magnitude.
  int plain = second_tx_failures(false, 91);
  int combined = second_tx_failures(true, 92);
  CHECK(plain >= 140);
  CHECK(plain <= 260);
  CHECK(combined <= 10);
}

TEST_CASE("combining history tracks only the pending groups") {
  phy::McsTable table = phy::McsTable::nr_default();
  phy::LinkCurves curves{2.0};
  Rng rng(3);
  HarqProcess p = make_process(0, 0, segment(4 * 8448, 4), 20, 8);
  // Force alternating outcomes with extreme SINRs: first transmission fails
  // everywhere, second delivers everything.
  draw_outcome(p, -500.0, table, curves, true, rng);
  for (int g = 0; g < 4; ++g) {
    CHECK(p.per_cbg_sinr_history[static_cast<size_t>(g)].size() == 1);
  }
  draw_outcome(p, 500.0, table, curves, true, rng);
  CHECK(p.done());
  for (int g = 0; g < 4; ++g) {
    CHECK(p.per_cbg_sinr_history[static_cast<size_t>(g)].size() == 2);
  }
}

TEST_CASE("PRB demand rounds payload up to whole blocks") {
  phy::McsEntry e;
  e.index = 0;
  e.modulation_order = 2;
  e.code_rate = 0.5;
  e.spectral_efficiency = 1.0;
  e.sinr_ref_db = 0.0;
  CHECK(prbs_for_bits(0, e, 100) == 0);
  CHECK(prbs_for_bits(1, e, 100) == 1);
  CHECK(prbs_for_bits(100, e, 100) == 1);
  CHECK(prbs_for_bits(101, e, 100) == 2);
  CHECK(prbs_for_bits(300, e, 100) == 3);
  CHECK_THROWS_AS(prbs_for_bits(10, e, 0), std::invalid_argument);

  // Capacity guard: n * bits_per_prb must actually cover the payload.
  phy::McsTable table = phy::McsTable::nr_default();
  Rng rng(8);
  for (int trial = 0; trial < 20000; ++trial) {
    const phy::McsEntry& m = table.entry(static_cast<int>(rng.uniform_int(28)));
    uint64_t bits = 1 + rng.uniform_int(500000);
    uint32_t n = prbs_for_bits(bits, m, 156);
    double cap = static_cast<double>(n) * m.spectral_efficiency * 156.0;
    CHECK(cap + 1e-6 >= static_cast<double>(bits));
    if (n > 1) {
      double below = static_cast<double>(n - 1) * m.spectral_efficiency * 156.0;
      CHECK(below < static_cast<double>(bits) + 1.0);
    }
  }
}

TEST_CASE("retransmissions carry only the pending groups") {
  phy::McsTable table = phy::McsTable::nr_default();
  HarqProcess p = make_process(0, 0, segment(8 * 8448, 8), 27, 4);
  p.tx_count = 1;
  p.pending_mask = 0x01;  // one of eight equal groups
  CHECK(p.pending_cbs() == 1);
  CHECK(p.pending_bits() == 8448);
  CHECK(retransmission_payload_prbs(p, table.entry(27), 156) ==
        prbs_for_bits(8448, table.entry(27), 156));

  // Uneven layout: 13 code blocks over 8 groups, groups 0 and 5 pending.
  HarqProcess q = make_process(1, 0, segment(13 * 8448, 8), 27, 4);
  q.tx_count = 1;
  q.pending_mask = 0x21;
  CHECK(q.pending_cbs() == 3);
  CHECK(q.pending_bits() == (13ull * 8448 * 3 + 12) / 13);
}
