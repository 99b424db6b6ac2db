#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "xrsim/traffic.hpp"

using namespace xrsim;
using namespace xrsim::traffic;

TEST_CASE("degenerate truncation interval is a point mass") {
  Rng rng(1);
  TruncGaussParams p{10.0, 3.0, 7.5, 7.5};
  for (int i = 0; i < 100; ++i) CHECK(sample_trunc_gauss(p, rng) == 7.5);
}

TEST_CASE("zero spread returns the clamped mean") {
  Rng rng(1);
  CHECK(sample_trunc_gauss({5.0, 0.0, 0.0, 10.0}, rng) == 5.0);
  CHECK(sample_trunc_gauss({-3.0, 0.0, 0.0, 10.0}, rng) == 0.0);
  CHECK(sample_trunc_gauss({42.0, 0.0, 0.0, 10.0}, rng) == 10.0);
}

TEST_CASE("truncated Gaussian rejects invalid parameters") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_trunc_gauss({0.0, 1.0, 4.0, -4.0}, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_trunc_gauss({0.0, -1.0, -4.0, 4.0}, rng),
                  std::invalid_argument);
}

TEST_CASE("jitter distribution: bounds and symmetry") {
  Rng rng(2024);
  TruncGaussParams p{0.0, 2.0, -4.0, 4.0};
  double sum = 0.0;
  double sq = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    double x = sample_trunc_gauss(p, rng);
    CHECK(x >= -4.0);
    CHECK(x <= 4.0);
    sum += x;
    sq += x * x;
  }
  double mean = sum / n;
  double std = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean) <= 0.01);
  // Truncation at two sigmas shrinks the spread below the nominal 2.0.
  CHECK(std > 1.5);
  CHECK(std < 2.0);
}

TEST_CASE("frame size distribution: bounds and mean") {
  Rng rng(99);
  TruncGaussParams p{62500.0, 6250.0, 31250.0, 93750.0};
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    double x = sample_trunc_gauss(p, rng);
    CHECK(x >= 31250.0);
    CHECK(x <= 93750.0);
    sum += x;
  }
  CHECK(std::abs(sum / n - 62500.0) <= 50.0);
}

TEST_CASE("arrivals without jitter sit exactly on the frame grid") {
  Rng rng(5);
  TruncGaussParams no_jitter{0.0, 0.0, 0.0, 0.0};
  TruncGaussParams size{1000.0, 0.0, 1000.0, 1000.0};
  auto packets = generate_arrivals(3, 60.0, no_jitter, size, 10.0, 50.0, rng);
  REQUIRE(packets.size() == 3);
  for (size_t k = 0; k < packets.size(); ++k) {
    CHECK(packets[k].arrival_ms == static_cast<double>(k) * (1000.0 / 60.0));
    CHECK(packets[k].seq == k);
    CHECK(packets[k].ue_id == 3);
    CHECK(packets[k].size_bits == 8000);
    CHECK(packets[k].remaining_bits == packets[k].size_bits);
    CHECK(packets[k].deadline_ms == packets[k].arrival_ms + 10.0);
  }
}

TEST_CASE("a 10-second run at 60 fps generates 600 frames") {
  Rng rng(6);
  TruncGaussParams jitter{0.0, 2.0, -4.0, 4.0};
  TruncGaussParams size{62500.0, 6250.0, 31250.0, 93750.0};
  auto packets = generate_arrivals(0, 60.0, jitter, size, 10.0, 10000.0, rng);
  CHECK(packets.size() == 600);
}

TEST_CASE("arrivals are sorted, jitter-bounded and whole bytes") {
  Rng rng(7);
  TruncGaussParams jitter{0.0, 2.0, -4.0, 4.0};
  TruncGaussParams size{5000.5, 100.0, 4500.0, 5500.0};
  auto packets = generate_arrivals(0, 60.0, jitter, size, 10.0, 5000.0, rng);
  std::set<uint32_t> seqs;
  double period = 1000.0 / 60.0;
  for (size_t i = 0; i < packets.size(); ++i) {
    if (i > 0) CHECK(packets[i].arrival_ms >= packets[i - 1].arrival_ms);
    CHECK(packets[i].size_bits % 8 == 0);
    CHECK(packets[i].size_bits >= 8 * 4500);
    CHECK(packets[i].size_bits <= 8 * 5500);
    double nominal = packets[i].seq * period;
    CHECK(packets[i].arrival_ms >= std::max(0.0, nominal - 4.0) - 1e-9);
    CHECK(packets[i].arrival_ms <= nominal + 4.0 + 1e-9);
    seqs.insert(packets[i].seq);
  }
  CHECK(seqs.size() == packets.size());
}

TEST_CASE("same seed reproduces the same arrival sequence") {
  TruncGaussParams jitter{0.0, 2.0, -4.0, 4.0};
  TruncGaussParams size{62500.0, 6250.0, 31250.0, 93750.0};
  Rng a(31);
  Rng b(31);
  auto pa = generate_arrivals(0, 60.0, jitter, size, 10.0, 2000.0, a);
  auto pb = generate_arrivals(0, 60.0, jitter, size, 10.0, 2000.0, b);
  REQUIRE(pa.size() == pb.size());
  for (size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].arrival_ms == pb[i].arrival_ms);
    CHECK(pa[i].size_bits == pb[i].size_bits);
  }
  Rng c(32);
  auto pc = generate_arrivals(0, 60.0, jitter, size, 10.0, 2000.0, c);
  bool any_diff = false;
  for (size_t i = 0; i < std::min(pa.size(), pc.size()); ++i) {
    any_diff |= pa[i].arrival_ms != pc[i].arrival_ms;
  }
  CHECK(any_diff);
}

TEST_CASE("arrival generation rejects invalid parameters") {
  Rng rng(1);
  TruncGaussParams jitter{0.0, 0.0, 0.0, 0.0};
  TruncGaussParams size{1000.0, 0.0, 1000.0, 1000.0};
  CHECK_THROWS_AS(generate_arrivals(0, 0.0, jitter, size, 10.0, 100.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_arrivals(0, 60.0, jitter, size, 0.0, 100.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_arrivals(0, 60.0, jitter, size, 10.0, -5.0, rng),
                  std::invalid_argument);
}
