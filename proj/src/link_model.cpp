#include "xrsim/link_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace xrsim::phy {

McsTable::McsTable(std::vector<McsEntry> entries) : entries_(std::move(entries)) {
  validate();
}

McsTable McsTable::nr_default(double ref0_db, double ref_step_db) {
  // (modulation order, code rate x 1024) pairs of the standard 256QAM ladder.
  static constexpr struct { int mo; double cr1024; } kSteps[28] = {
      {2, 120},   {2, 193},   {2, 308},   {2, 449},   {2, 602},
      {4, 378},   {4, 434},   {4, 490},   {4, 553},   {4, 616},
      {4, 658},   {6, 466},   {6, 517},   {6, 567},   {6, 616},
      {6, 666},   {6, 719},   {6, 772},   {6, 822},   {6, 873},
      {8, 682.5}, {8, 711},   {8, 754},   {8, 797},   {8, 841},
      {8, 885},   {8, 916.5}, {8, 948},
  };
  std::vector<McsEntry> entries;
  entries.reserve(28);
  for (int i = 0; i < 28; ++i) {
    McsEntry e;
    e.index = i;
    e.modulation_order = kSteps[i].mo;
    e.code_rate = kSteps[i].cr1024 / 1024.0;
    e.spectral_efficiency = kSteps[i].mo * e.code_rate;
    e.sinr_ref_db = ref0_db + i * ref_step_db;
    entries.push_back(e);
  }
  return McsTable(std::move(entries));
}

McsTable McsTable::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open MCS table: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("MCS table is empty: " + path);
  }
  if (line.size() && line.back() == '\r') line.pop_back();
  const std::string expected =
      "index,modulation_order,code_rate,spectral_efficiency,sinr_ref_db";
  if (line != expected) {
    throw std::runtime_error("MCS table header must be '" + expected +
                             "', got '" + line + "'");
  }
  std::vector<McsEntry> entries;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    McsEntry e;
    try {
      if (!std::getline(row, field, ',')) throw std::invalid_argument("index");
      e.index = std::stoi(field);
      if (!std::getline(row, field, ',')) throw std::invalid_argument("mo");
      e.modulation_order = std::stoi(field);
      if (!std::getline(row, field, ',')) throw std::invalid_argument("cr");
      e.code_rate = std::stod(field);
      if (!std::getline(row, field, ',')) throw std::invalid_argument("eff");
      e.spectral_efficiency = std::stod(field);
      if (!std::getline(row, field, ',')) throw std::invalid_argument("ref");
      e.sinr_ref_db = std::stod(field);
    } catch (const std::exception&) {
      throw std::runtime_error("MCS table: malformed row at line " +
                               std::to_string(line_no) + " of " + path);
    }
    entries.push_back(e);
  }
  return McsTable(std::move(entries));
}

const McsEntry& McsTable::entry(int index) const {
  if (index < 0 || index >= size()) {
    throw std::out_of_range("MCS index out of range: " + std::to_string(index));
  }
  return entries_[static_cast<size_t>(index)];
}

void McsTable::validate() const {
  if (entries_.empty()) throw std::invalid_argument("MCS table is empty");
  for (size_t i = 0; i < entries_.size(); ++i) {
    const McsEntry& e = entries_[i];
    if (e.index != static_cast<int>(i)) {
      throw std::invalid_argument("MCS indices must be 0..n-1 in order");
    }
    if (e.modulation_order != 2 && e.modulation_order != 4 &&
        e.modulation_order != 6 && e.modulation_order != 8) {
      throw std::invalid_argument("MCS modulation order must be 2, 4, 6 or 8");
    }
    if (!(e.code_rate > 0.0 && e.code_rate < 1.0)) {
      throw std::invalid_argument("MCS code rate must be in (0, 1)");
    }
    double expect_eff = e.modulation_order * e.code_rate;
    if (std::abs(e.spectral_efficiency - expect_eff) >
        1e-3 * std::max(1.0, expect_eff)) {
      throw std::invalid_argument(
          "MCS spectral efficiency must equal modulation_order * code_rate");
    }
    if (i > 0) {
      if (!(e.spectral_efficiency > entries_[i - 1].spectral_efficiency)) {
        throw std::invalid_argument(
            "MCS spectral efficiency must be strictly increasing");
      }
      double gap = e.sinr_ref_db - entries_[i - 1].sinr_ref_db;
      if (!(gap >= 0.5 && gap <= 2.5)) {
        throw std::invalid_argument(
            "MCS reference SINR spacing must be within [0.5, 2.5] dB");
      }
    }
  }
}

double tb_error_probability(double sinr_db, const McsEntry& mcs,
                            const LinkCurves& curves) {
  if (!(curves.slope_nats_per_db > 0.0)) {
    throw std::invalid_argument("link curve slope must be > 0");
  }
  // 1 / (1 + 9 e^{s (sinr - ref)}): exactly 0.1 at the reference SINR.
  double x = curves.slope_nats_per_db * (sinr_db - mcs.sinr_ref_db);
  if (x > 700.0) return 0.0;
  return 1.0 / (1.0 + 9.0 * std::exp(x));
}

double cb_error_probability(double p_tb, int cb_count) {
  if (!(p_tb >= 0.0 && p_tb <= 1.0)) {
    throw std::domain_error("TB error probability must be in [0, 1]");
  }
  if (cb_count < 1) throw std::domain_error("code block count must be >= 1");
  return -std::expm1(std::log1p(-p_tb) / static_cast<double>(cb_count));
}

double combined_sinr_db(std::span<const double> tx_sinrs_db) {
  if (tx_sinrs_db.empty()) {
    throw std::invalid_argument("combined SINR of zero transmissions");
  }
  double linear = 0.0;
  for (double s : tx_sinrs_db) linear += std::pow(10.0, s / 10.0);
  return 10.0 * std::log10(linear);
}

double report_cqi(ChannelState& state, double now_ms,
                  double quantization_step_db, double noise_std_db, Rng& rng) {
  if (quantization_step_db < 0.0) {
    throw std::invalid_argument("quantization step must be >= 0");
  }
  if (noise_std_db < 0.0) {
    throw std::invalid_argument("measurement noise std must be >= 0");
  }
  double measured = state.true_sinr_db;
  if (noise_std_db > 0.0) measured += rng.normal(0.0, noise_std_db);
  if (quantization_step_db > 0.0) {
    measured = std::round(measured / quantization_step_db) * quantization_step_db;
  }
  state.last_report_ms = now_ms;
  return measured;
}

void FadingProcess::init(Rng& rng) {
  if (!(corr >= 0.0 && corr < 1.0)) {
    throw std::invalid_argument("fading correlation must be in [0, 1)");
  }
  if (std_db < 0.0) throw std::invalid_argument("fading std must be >= 0");
  state_db = std_db > 0.0 ? rng.normal(0.0, std_db) : 0.0;
}

double FadingProcess::step(Rng& rng) {
  if (std_db == 0.0) {
    state_db = 0.0;
    return state_db;
  }
  double innov_std = std_db * std::sqrt(1.0 - corr * corr);
  state_db = corr * state_db + rng.normal(0.0, innov_std);
  return state_db;
}

}  // namespace xrsim::phy
