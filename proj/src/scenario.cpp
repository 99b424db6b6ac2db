#include "xrsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "xrsim/analytics.hpp"

namespace xrsim {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& where, const std::string& value,
                            const std::string& expected) {
  throw std::invalid_argument("invalid value for " + where + ": '" + value +
                              "' (" + expected + ")");
}

double parse_f64(const std::string& v, const std::string& where) {
  const char* b = v.data();
  const char* e = v.data() + v.size();
  double out = 0.0;
  auto res = std::from_chars(b, e, out);
  if (res.ec != std::errc() || res.ptr != e) bad_value(where, v, "number");
  return out;
}

int64_t parse_i64(const std::string& v, const std::string& where) {
  const char* b = v.data();
  const char* e = v.data() + v.size();
  int64_t out = 0;
  auto res = std::from_chars(b, e, out);
  if (res.ec != std::errc() || res.ptr != e) bad_value(where, v, "integer");
  return out;
}

uint64_t parse_u64(const std::string& v, const std::string& where) {
  const char* b = v.data();
  const char* e = v.data() + v.size();
  uint64_t out = 0;
  auto res = std::from_chars(b, e, out);
  if (res.ec != std::errc() || res.ptr != e) {
    bad_value(where, v, "unsigned integer");
  }
  return out;
}

int parse_int(const std::string& v, const std::string& where) {
  int64_t x = parse_i64(v, where);
  if (x < INT32_MIN || x > INT32_MAX) bad_value(where, v, "32-bit integer");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& v, const std::string& where) {
  std::string low(v);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (low == "true" || low == "1" || low == "yes" || low == "on") return true;
  if (low == "false" || low == "0" || low == "no" || low == "off") return false;
  bad_value(where, v, "boolean: true/false");
}

std::vector<int> parse_int_list(const std::string& v, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) bad_value(where, v, "comma-separated integers");
    out.push_back(parse_int(item, where));
  }
  if (out.empty()) bad_value(where, v, "comma-separated integers");
  return out;
}

HarqMode parse_harq_mode(const std::string& v, const std::string& where) {
  std::string low(v);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (low == "auto") return HarqMode::auto_select;
  if (low == "cbg") return HarqMode::cbg;
  if (low == "tb") return HarqMode::tb;
  bad_value(where, v, "one of auto, cbg, tb");
}

// Shortest decimal string that parses back to exactly the same double.
std::string fmt_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

std::string fmt_int_list(const std::vector<int>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

void apply_kv(Scenario& sc, const std::string& section, const std::string& key,
              const std::string& value) {
  const std::string where = section + "." + key;
  if (section == "sim") {
    if (key == "seed") sc.sim.seed = parse_u64(value, where);
    else if (key == "horizon_ms") sc.sim.horizon_ms = parse_f64(value, where);
    else if (key == "cells") sc.sim.cells = parse_int(value, where);
    else if (key == "ues_per_cell") sc.sim.ues_per_cell = parse_int(value, where);
    else if (key == "tdd_pattern") sc.sim.tdd_pattern = value;
    else if (key == "prbs") sc.sim.prbs = parse_int(value, where);
    else if (key == "data_symbols_per_slot")
      sc.sim.data_symbols_per_slot = parse_int(value, where);
    else if (key == "pf_window_slots")
      sc.sim.pf_window_slots = parse_f64(value, where);
    else if (key == "warmup_fraction")
      sc.sim.warmup_fraction = parse_f64(value, where);
    else if (key == "reliability") sc.sim.reliability = parse_f64(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else if (section == "traffic") {
    if (key == "fps") sc.traffic.fps = parse_f64(value, where);
    else if (key == "jitter_mean_ms") sc.traffic.jitter_ms.mean = parse_f64(value, where);
    else if (key == "jitter_std_ms") sc.traffic.jitter_ms.std = parse_f64(value, where);
    else if (key == "jitter_lo_ms") sc.traffic.jitter_ms.lo = parse_f64(value, where);
    else if (key == "jitter_hi_ms") sc.traffic.jitter_ms.hi = parse_f64(value, where);
    else if (key == "frame_mean_bytes") sc.traffic.frame_bytes.mean = parse_f64(value, where);
    else if (key == "frame_std_bytes") sc.traffic.frame_bytes.std = parse_f64(value, where);
    else if (key == "frame_lo_bytes") sc.traffic.frame_bytes.lo = parse_f64(value, where);
    else if (key == "frame_hi_bytes") sc.traffic.frame_bytes.hi = parse_f64(value, where);
    else if (key == "pdb_ms") sc.traffic.pdb_ms = parse_f64(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else if (section == "channel") {
    if (key == "geometry_lo_db") sc.channel.geometry_lo_db = parse_f64(value, where);
    else if (key == "geometry_hi_db") sc.channel.geometry_hi_db = parse_f64(value, where);
    else if (key == "fading_std_db") sc.channel.fading_std_db = parse_f64(value, where);
    else if (key == "fading_corr") sc.channel.fading_corr = parse_f64(value, where);
    else if (key == "cqi_period_ms") sc.channel.cqi_period_ms = parse_f64(value, where);
    else if (key == "cqi_delay_ms") sc.channel.cqi_delay_ms = parse_f64(value, where);
    else if (key == "cqi_step_db") sc.channel.cqi_step_db = parse_f64(value, where);
    else if (key == "cqi_noise_std_db") sc.channel.cqi_noise_std_db = parse_f64(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else if (section == "link") {
    if (key == "mcs_table_csv") sc.link.mcs_table_csv = value;
    else if (key == "curve_slope_nats_per_db")
      sc.link.curve_slope_nats_per_db = parse_f64(value, where);
    else if (key == "sinr_ref0_db") sc.link.sinr_ref0_db = parse_f64(value, where);
    else if (key == "sinr_ref_step_db") sc.link.sinr_ref_step_db = parse_f64(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else if (section == "harq") {
    if (key == "mode") sc.harq.mode = parse_harq_mode(value, where);
    else if (key == "n_max") sc.harq.n_max = parse_int(value, where);
    else if (key == "max_retx") sc.harq.max_retx = parse_int(value, where);
    else if (key == "processes_per_ue") sc.harq.processes_per_ue = parse_int(value, where);
    else if (key == "chase_combining") sc.harq.chase_combining = parse_bool(value, where);
    else if (key == "processing_delay_symbols")
      sc.harq.processing_delay_symbols = parse_int(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else if (section == "la") {
    if (key == "policy") sc.la.policy = la::parse_policy(value);
    else if (key == "step_up_db") sc.la.step_up_db = parse_f64(value, where);
    else if (key == "step_down_db") sc.la.step_down_db = parse_f64(value, where);
    else if (key == "tber_target") sc.la.tber_target = parse_f64(value, where);
    else if (key == "offset_init_db") sc.la.offset_init_db = parse_f64(value, where);
    else if (key == "offset_min_db") sc.la.offset_min_db = parse_f64(value, where);
    else if (key == "offset_max_db") sc.la.offset_max_db = parse_f64(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else if (section == "capacity") {
    if (key == "ue_counts") sc.capacity.ue_counts = parse_int_list(value, where);
    else if (key == "runs_per_count") sc.capacity.runs_per_count = parse_int(value, where);
    else if (key == "satisfied_fraction")
      sc.capacity.satisfied_fraction = parse_f64(value, where);
    else if (key == "threads") sc.capacity.threads = parse_int(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else if (section == "analytics") {
    if (key == "p_min") sc.analytics.p_min = parse_f64(value, where);
    else if (key == "p_max") sc.analytics.p_max = parse_f64(value, where);
    else if (key == "p_step") sc.analytics.p_step = parse_f64(value, where);
    else if (key == "m_list") sc.analytics.m_list = parse_int_list(value, where);
    else if (key == "xi_cbg") sc.analytics.xi_cbg = parse_f64(value, where);
    else if (key == "xi_tb") sc.analytics.xi_tb = parse_f64(value, where);
    else if (key == "second_tx_rho") sc.analytics.second_tx_rho = parse_f64(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else if (section == "output") {
    if (key == "packet_trace") sc.output.packet_trace = parse_bool(value, where);
    else if (key == "offset_trace") sc.output.offset_trace = parse_bool(value, where);
    else if (key == "harq_trace") sc.output.harq_trace = parse_bool(value, where);
    else throw std::invalid_argument("unknown key '" + where + "'");
  } else {
    throw std::invalid_argument("unknown section '[" + section + "]'");
  }
}

void check(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  Scenario sc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::unordered_set<std::string> seen;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3) {
        throw std::invalid_argument("malformed section header at line " +
                                    std::to_string(line_no) + ": " + t);
      }
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("expected key=value at line " +
                                  std::to_string(line_no) + ": " + t);
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (section.empty()) {
      throw std::invalid_argument("key '" + key +
                                  "' appears before any [section] header at line " +
                                  std::to_string(line_no));
    }
    if (key.empty()) {
      throw std::invalid_argument("empty key at line " + std::to_string(line_no));
    }
    if (!seen.insert(section + "." + key).second) {
      throw std::invalid_argument("duplicate key '" + section + "." + key +
                                  "' at line " + std::to_string(line_no));
    }
    apply_kv(sc, section, key, value);
  }
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

void apply_override(Scenario& sc, const std::string& assignment) {
  size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("override must look like section.key=value: " +
                                assignment);
  }
  std::string path = trim(assignment.substr(0, eq));
  std::string value = trim(assignment.substr(eq + 1));
  size_t dot = path.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 >= path.size()) {
    throw std::invalid_argument("override must look like section.key=value: " +
                                assignment);
  }
  apply_kv(sc, path.substr(0, dot), path.substr(dot + 1), value);
}

void finalize_scenario(Scenario& sc) {
  // Resolve auto fields first, then validate everything.
  if (sc.harq.mode == HarqMode::auto_select) {
    sc.harq.mode = sc.la.policy == la::Policy::traditional ? HarqMode::tb
                                                           : HarqMode::cbg;
  }
  check(sc.la.step_up_db > 0.0, "la.step_up_db must be > 0");
  if (sc.la.step_down_db < 0.0) {
    switch (sc.la.policy) {
      case la::Policy::traditional: {
        double t = sc.la.tber_target > 0.0 ? sc.la.tber_target : 0.1;
        sc.la.step_down_db = sc.la.step_up_db * t / (1.0 - t);
        break;
      }
      case la::Policy::eolla_alg1:
        sc.la.step_down_db = 0.21;
        break;
      case la::Policy::eolla_alg2:
        sc.la.step_down_db = 0.044;
        break;
    }
  }
  if (sc.la.tber_target < 0.0) {
    switch (sc.la.policy) {
      case la::Policy::traditional:
      case la::Policy::eolla_alg2:
        sc.la.tber_target = 0.1;
        break;
      case la::Policy::eolla_alg1:
        // Aim the inner loop at the group error rate the outer loop will
        // hold, so the offset starts near its equilibrium.
        sc.la.tber_target = analytics::tb_error_from_cbg(
            analytics::cbger_target(sc.la.step_up_db, sc.la.step_down_db),
            sc.harq.n_max);
        break;
    }
  }

  check(sc.sim.horizon_ms > 0.0, "sim.horizon_ms must be > 0");
  check(sc.sim.cells >= 1, "sim.cells must be >= 1");
  check(sc.sim.ues_per_cell >= 0, "sim.ues_per_cell must be >= 0");
  check(!sc.sim.tdd_pattern.empty(), "sim.tdd_pattern must not be empty");
  bool has_d = false;
  bool has_u = false;
  for (char c : sc.sim.tdd_pattern) {
    check(c == 'D' || c == 'S' || c == 'U',
          "sim.tdd_pattern may only contain D, S and U, got '" +
              std::string(1, c) + "'");
    has_d |= c == 'D';
    has_u |= c == 'U';
  }
  check(has_d, "sim.tdd_pattern must contain at least one D slot");
  check(has_u, "sim.tdd_pattern must contain at least one U slot");
  check(sc.sim.prbs >= 1, "sim.prbs must be >= 1");
  check(sc.sim.data_symbols_per_slot >= 1 && sc.sim.data_symbols_per_slot <= 14,
        "sim.data_symbols_per_slot must be in [1, 14]");
  check(sc.sim.pf_window_slots >= 1.0, "sim.pf_window_slots must be >= 1");
  check(sc.sim.warmup_fraction >= 0.0 && sc.sim.warmup_fraction <= 0.9,
        "sim.warmup_fraction must be in [0, 0.9]");
  check(sc.sim.reliability >= 0.0 && sc.sim.reliability < 1.0,
        "sim.reliability must be in [0, 1)");

  check(sc.traffic.fps > 0.0, "traffic.fps must be > 0");
  check(sc.traffic.jitter_ms.std >= 0.0, "traffic.jitter_std_ms must be >= 0");
  check(sc.traffic.jitter_ms.lo <= sc.traffic.jitter_ms.hi,
        "traffic.jitter_lo_ms must be <= traffic.jitter_hi_ms");
  check(sc.traffic.frame_bytes.std >= 0.0, "traffic.frame_std_bytes must be >= 0");
  check(sc.traffic.frame_bytes.lo >= 1.0, "traffic.frame_lo_bytes must be >= 1");
  check(sc.traffic.frame_bytes.lo <= sc.traffic.frame_bytes.hi,
        "traffic.frame_lo_bytes must be <= traffic.frame_hi_bytes");
  check(sc.traffic.pdb_ms > 0.0, "traffic.pdb_ms must be > 0");

  check(sc.channel.geometry_lo_db <= sc.channel.geometry_hi_db,
        "channel.geometry_lo_db must be <= channel.geometry_hi_db");
  check(sc.channel.fading_std_db >= 0.0, "channel.fading_std_db must be >= 0");
  check(sc.channel.fading_corr >= 0.0 && sc.channel.fading_corr < 1.0,
        "channel.fading_corr must be in [0, 1)");
  check(sc.channel.cqi_period_ms > 0.0, "channel.cqi_period_ms must be > 0");
  check(sc.channel.cqi_delay_ms >= 0.0, "channel.cqi_delay_ms must be >= 0");
  check(sc.channel.cqi_step_db >= 0.0, "channel.cqi_step_db must be >= 0");
  check(sc.channel.cqi_noise_std_db >= 0.0,
        "channel.cqi_noise_std_db must be >= 0");

  check(sc.link.curve_slope_nats_per_db > 0.0,
        "link.curve_slope_nats_per_db must be > 0");
  check(sc.link.sinr_ref_step_db >= 0.5 && sc.link.sinr_ref_step_db <= 2.5,
        "link.sinr_ref_step_db must be in [0.5, 2.5]");

  check(sc.harq.n_max == 2 || sc.harq.n_max == 4 || sc.harq.n_max == 6 ||
            sc.harq.n_max == 8,
        "harq.n_max must be one of {2, 4, 6, 8}, got " +
            std::to_string(sc.harq.n_max));
  check(sc.harq.max_retx >= 0 && sc.harq.max_retx <= 8,
        "harq.max_retx must be in [0, 8]");
  check(sc.harq.processes_per_ue >= 1 && sc.harq.processes_per_ue <= 64,
        "harq.processes_per_ue must be in [1, 64]");
  check(sc.harq.processing_delay_symbols >= 0 &&
            sc.harq.processing_delay_symbols <= 28,
        "harq.processing_delay_symbols must be in [0, 28]");

  check(sc.la.step_down_db > 0.0, "la.step_down_db must be > 0");
  check(sc.la.tber_target > 0.0 && sc.la.tber_target < 1.0,
        "la.tber_target must be in (0, 1)");
  check(sc.la.offset_min_db <= sc.la.offset_init_db &&
            sc.la.offset_init_db <= sc.la.offset_max_db,
        "la offset bounds must satisfy offset_min_db <= offset_init_db <= "
        "offset_max_db");

  check(!sc.capacity.ue_counts.empty(), "capacity.ue_counts must not be empty");
  for (size_t i = 0; i < sc.capacity.ue_counts.size(); ++i) {
    check(sc.capacity.ue_counts[i] >= 1, "capacity.ue_counts must be >= 1");
    if (i > 0) {
      check(sc.capacity.ue_counts[i] > sc.capacity.ue_counts[i - 1],
            "capacity.ue_counts must be strictly increasing");
    }
  }
  check(sc.capacity.runs_per_count >= 1, "capacity.runs_per_count must be >= 1");
  check(sc.capacity.satisfied_fraction > 0.0 &&
            sc.capacity.satisfied_fraction <= 1.0,
        "capacity.satisfied_fraction must be in (0, 1]");
  check(sc.capacity.threads >= 0, "capacity.threads must be >= 0");

  check(sc.analytics.p_min >= 0.0 && sc.analytics.p_min <= sc.analytics.p_max &&
            sc.analytics.p_max <= 1.0,
        "analytics p grid must satisfy 0 <= p_min <= p_max <= 1");
  check(sc.analytics.p_step > 0.0, "analytics.p_step must be > 0");
  check(!sc.analytics.m_list.empty(), "analytics.m_list must not be empty");
  for (int m : sc.analytics.m_list) {
    check(m >= 1 && m <= 8, "analytics.m_list entries must be in [1, 8]");
  }
  check(sc.analytics.xi_cbg > 0.0, "analytics.xi_cbg must be > 0");
  check(sc.analytics.xi_tb > 0.0, "analytics.xi_tb must be > 0");
  check(sc.analytics.second_tx_rho >= 0.0 && sc.analytics.second_tx_rho <= 1.0,
        "analytics.second_tx_rho must be in [0, 1]");
}

Scenario make_scenario(const std::string& config_path,
                       const std::vector<std::string>& overrides) {
  Scenario sc =
      config_path.empty() ? Scenario{} : parse_scenario_file(config_path);
  for (const std::string& a : overrides) apply_override(sc, a);
  finalize_scenario(sc);
  return sc;
}

Scenario scenario_from_text(const std::string& text,
                            const std::vector<std::string>& overrides) {
  Scenario sc = parse_scenario_text(text);
  for (const std::string& a : overrides) apply_override(sc, a);
  finalize_scenario(sc);
  return sc;
}

Scenario load_scenario(const std::string& path) { return make_scenario(path); }

const char* harq_mode_name(HarqMode m) {
  switch (m) {
    case HarqMode::auto_select: return "auto";
    case HarqMode::cbg: return "cbg";
    case HarqMode::tb: return "tb";
  }
  throw std::logic_error("unknown HARQ mode");
}

std::string to_ini(const Scenario& sc) {
  std::ostringstream out;
  out << "[sim]\n";
  out << "seed = " << sc.sim.seed << "\n";
  out << "horizon_ms = " << fmt_double(sc.sim.horizon_ms) << "\n";
  out << "cells = " << sc.sim.cells << "\n";
  out << "ues_per_cell = " << sc.sim.ues_per_cell << "\n";
  out << "tdd_pattern = " << sc.sim.tdd_pattern << "\n";
  out << "prbs = " << sc.sim.prbs << "\n";
  out << "data_symbols_per_slot = " << sc.sim.data_symbols_per_slot << "\n";
  out << "pf_window_slots = " << fmt_double(sc.sim.pf_window_slots) << "\n";
  out << "warmup_fraction = " << fmt_double(sc.sim.warmup_fraction) << "\n";
  out << "reliability = " << fmt_double(sc.sim.reliability) << "\n";
  out << "\n[traffic]\n";
  out << "fps = " << fmt_double(sc.traffic.fps) << "\n";
  out << "jitter_mean_ms = " << fmt_double(sc.traffic.jitter_ms.mean) << "\n";
  out << "jitter_std_ms = " << fmt_double(sc.traffic.jitter_ms.std) << "\n";
  out << "jitter_lo_ms = " << fmt_double(sc.traffic.jitter_ms.lo) << "\n";
  out << "jitter_hi_ms = " << fmt_double(sc.traffic.jitter_ms.hi) << "\n";
  out << "frame_mean_bytes = " << fmt_double(sc.traffic.frame_bytes.mean) << "\n";
  out << "frame_std_bytes = " << fmt_double(sc.traffic.frame_bytes.std) << "\n";
  out << "frame_lo_bytes = " << fmt_double(sc.traffic.frame_bytes.lo) << "\n";
  out << "frame_hi_bytes = " << fmt_double(sc.traffic.frame_bytes.hi) << "\n";
  out << "pdb_ms = " << fmt_double(sc.traffic.pdb_ms) << "\n";
  out << "\n[channel]\n";
  out << "geometry_lo_db = " << fmt_double(sc.channel.geometry_lo_db) << "\n";
  out << "geometry_hi_db = " << fmt_double(sc.channel.geometry_hi_db) << "\n";
  out << "fading_std_db = " << fmt_double(sc.channel.fading_std_db) << "\n";
  out << "fading_corr = " << fmt_double(sc.channel.fading_corr) << "\n";
  out << "cqi_period_ms = " << fmt_double(sc.channel.cqi_period_ms) << "\n";
  out << "cqi_delay_ms = " << fmt_double(sc.channel.cqi_delay_ms) << "\n";
  out << "cqi_step_db = " << fmt_double(sc.channel.cqi_step_db) << "\n";
  out << "cqi_noise_std_db = " << fmt_double(sc.channel.cqi_noise_std_db) << "\n";
  out << "\n[link]\n";
  out << "mcs_table_csv = " << sc.link.mcs_table_csv << "\n";
  out << "curve_slope_nats_per_db = "
      << fmt_double(sc.link.curve_slope_nats_per_db) << "\n";
  out << "sinr_ref0_db = " << fmt_double(sc.link.sinr_ref0_db) << "\n";
  out << "sinr_ref_step_db = " << fmt_double(sc.link.sinr_ref_step_db) << "\n";
  out << "\n[harq]\n";
  out << "mode = " << harq_mode_name(sc.harq.mode) << "\n";
  out << "n_max = " << sc.harq.n_max << "\n";
  out << "max_retx = " << sc.harq.max_retx << "\n";
  out << "processes_per_ue = " << sc.harq.processes_per_ue << "\n";
  out << "chase_combining = " << (sc.harq.chase_combining ? "true" : "false")
      << "\n";
  out << "processing_delay_symbols = " << sc.harq.processing_delay_symbols
      << "\n";
  out << "\n[la]\n";
  out << "policy = " << la::policy_name(sc.la.policy) << "\n";
  out << "step_up_db = " << fmt_double(sc.la.step_up_db) << "\n";
  out << "step_down_db = " << fmt_double(sc.la.step_down_db) << "\n";
  out << "tber_target = " << fmt_double(sc.la.tber_target) << "\n";
  out << "offset_init_db = " << fmt_double(sc.la.offset_init_db) << "\n";
  out << "offset_min_db = " << fmt_double(sc.la.offset_min_db) << "\n";
  out << "offset_max_db = " << fmt_double(sc.la.offset_max_db) << "\n";
  out << "\n[capacity]\n";
  out << "ue_counts = " << fmt_int_list(sc.capacity.ue_counts) << "\n";
  out << "runs_per_count = " << sc.capacity.runs_per_count << "\n";
  out << "satisfied_fraction = " << fmt_double(sc.capacity.satisfied_fraction)
      << "\n";
  out << "threads = " << sc.capacity.threads << "\n";
  out << "\n[analytics]\n";
  out << "p_min = " << fmt_double(sc.analytics.p_min) << "\n";
  out << "p_max = " << fmt_double(sc.analytics.p_max) << "\n";
  out << "p_step = " << fmt_double(sc.analytics.p_step) << "\n";
  out << "m_list = " << fmt_int_list(sc.analytics.m_list) << "\n";
  out << "xi_cbg = " << fmt_double(sc.analytics.xi_cbg) << "\n";
  out << "xi_tb = " << fmt_double(sc.analytics.xi_tb) << "\n";
  out << "second_tx_rho = " << fmt_double(sc.analytics.second_tx_rho) << "\n";
  out << "\n[output]\n";
  out << "packet_trace = " << (sc.output.packet_trace ? "true" : "false") << "\n";
  out << "offset_trace = " << (sc.output.offset_trace ? "true" : "false") << "\n";
  out << "harq_trace = " << (sc.output.harq_trace ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace xrsim
