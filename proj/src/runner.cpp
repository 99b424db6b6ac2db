#include "xrsim/runner.hpp"

#include <filesystem>
#include <fstream>
#include <vector>

#include "xrsim/analytics.hpp"
#include "xrsim/csv.hpp"

namespace xrsim::runner {

namespace {

namespace fs = std::filesystem;

// Removes everything written by a failed run, so partial output never looks
// like a finished one.
class OutputGuard {
 public:
  ~OutputGuard() {
    if (committed_) return;
    for (const std::string& p : paths_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  std::string track(const std::string& path) {
    paths_.push_back(path);
    return path;
  }

  void commit() { committed_ = true; }

 private:
  std::vector<std::string> paths_;
  bool committed_ = false;
};

std::string prepare_dir(const std::string& out_dir) {
  fs::create_directories(out_dir);
  return out_dir;
}

analytics::SecondTxError second_tx_model(const Scenario& sc) {
  return sc.analytics.second_tx_rho == 0.0
             ? analytics::second_tx_clean()
             : analytics::second_tx_residual(sc.analytics.second_tx_rho);
}

void write_meta(const Scenario& sc, const std::string& path,
                const std::string& subcommand,
                const std::vector<std::string>& extra_comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "# generated by xrsim " << kVersion << "\n";
  out << "# subcommand: " << subcommand << "\n";
  // Nominal stream label of the default traffic profile; the arrival
  // process itself follows the [traffic] section below.
  out << "# nominal_stream_rate_label_mbps = 45\n";
  switch (sc.la.policy) {
    case la::Policy::traditional:
      out << "# derived.converged_first_tx_tber = "
          << csvio::num(1.0 / (1.0 + sc.la.step_up_db / sc.la.step_down_db), 9)
          << "\n";
      break;
    case la::Policy::eolla_alg1:
      out << "# derived.converged_first_tx_cbger = "
          << csvio::num(
                 analytics::cbger_target(sc.la.step_up_db, sc.la.step_down_db),
                 9)
          << "\n";
      break;
    case la::Policy::eolla_alg2:
      out << "# derived.converged_second_tx_residual_tber = "
          << csvio::num(analytics::residual_tber_target(sc.la.step_up_db,
                                                        sc.la.step_down_db),
                        9)
          << "\n";
      break;
  }
  for (const std::string& c : extra_comments) out << "# " << c << "\n";
  out << to_ini(sc);
  out.close();
  if (out.fail()) throw std::runtime_error("failed to write " + path);
}

void write_ecdf(const std::string& path, const std::string& header,
                const std::vector<std::pair<double, double>>& points,
                int value_precision) {
  csvio::Writer w(path, header);
  for (const auto& [value, cum] : points) {
    w.row(csvio::num(value, value_precision) + "," + csvio::num(cum, 8));
  }
  w.close();
}

}  // namespace

void run_analytics(const Scenario& sc, const std::string& out_dir) {
  prepare_dir(out_dir);
  OutputGuard guard;
  {
    csvio::Writer w(guard.track(out_dir + "/analytics.csv"),
                    "p_tb,m,p_cbg,r_first,r_second,rreg_percent");
    analytics::SecondTxError f = second_tx_model(sc);
    analytics::EfficiencyInputs eff{sc.analytics.xi_cbg, sc.analytics.xi_tb};
    for (int m : sc.analytics.m_list) {
      for (int i = 0;; ++i) {
        double p = sc.analytics.p_min + i * sc.analytics.p_step;
        if (p > sc.analytics.p_max + 1e-12) break;
        if (p > 1.0) break;
        analytics::ErrorPoint ep = analytics::error_point_from_tb(p, m);
        double r1 = analytics::expected_retx_first(p, m);
        double r2 = analytics::expected_retx_second(p, m, f);
        double gain = analytics::rreg_percent(p, p, m, eff, f);
        w.row(csvio::num(p, 6) + "," + std::to_string(m) + "," +
              csvio::num(ep.p_cbg, 9) + "," + csvio::num(r1, 9) + "," +
              csvio::num(r2, 9) + "," + csvio::num(gain, 6));
      }
    }
    w.close();
  }
  write_meta(sc, guard.track(out_dir + "/run_meta.ini"), "analytics", {});
  guard.commit();
}

sim::RunResult run_simulate(const Scenario& sc, const std::string& out_dir) {
  prepare_dir(out_dir);
  sim::RunResult rr = sim::run_simulation(sc);
  OutputGuard guard;
  {
    csvio::Writer w(guard.track(out_dir + "/kpi.csv"),
                    "ue_id,packets,on_time,late,lost,satisfied");
    for (const sim::UeResult& u : rr.ues) {
      w.row(std::to_string(u.ue_id) + "," + std::to_string(u.kpi.packets_total) +
            "," + std::to_string(u.kpi.packets_on_time) + "," +
            std::to_string(u.kpi.packets_late) + "," +
            std::to_string(u.kpi.packets_lost) + "," +
            (u.is_satisfied ? "1" : "0"));
    }
    w.close();
  }
  write_ecdf(guard.track(out_dir + "/ecdf_mcs.csv"), "mcs_index,cum_fraction",
             sim::ecdf(rr.mcs_samples), 0);
  write_ecdf(guard.track(out_dir + "/ecdf_prb.csv"), "prb_load,cum_fraction",
             sim::ecdf(rr.prb_load_samples), 6);
  {
    std::vector<double> delays;
    for (const sim::UeResult& u : rr.ues) {
      delays.insert(delays.end(), u.kpi.delay_samples_ms.begin(),
                    u.kpi.delay_samples_ms.end());
    }
    write_ecdf(guard.track(out_dir + "/ecdf_delay.csv"),
               "delay_ms,cum_fraction", sim::ecdf(std::move(delays)), 6);
  }
  if (sc.output.offset_trace) {
    csvio::Writer w(guard.track(out_dir + "/offset_trace.csv"),
                    "time_ms,ue_id,offset_db");
    for (const sim::OffsetTraceRow& r : rr.offset_trace) {
      w.row(csvio::num(r.time_ms, 3) + "," + std::to_string(r.ue_id) + "," +
            csvio::num(r.offset_db, 6));
    }
    w.close();
  }
  if (sc.output.packet_trace) {
    csvio::Writer w(guard.track(out_dir + "/packet_trace.csv"),
                    "ue_id,seq,arrival_ms,size_bits,deadline_ms");
    for (const traffic::XrPacket& p : rr.packet_trace) {
      w.row(std::to_string(p.ue_id) + "," + std::to_string(p.seq) + "," +
            csvio::num(p.arrival_ms, 6) + "," + std::to_string(p.size_bits) +
            "," + csvio::num(p.deadline_ms, 6));
    }
    w.close();
  }
  if (sc.output.harq_trace) {
    csvio::Writer w(guard.track(out_dir + "/harq_trace.csv"),
                    "process_id,tx_index,mcs,pending_bitmap,sinr_db,outcome_bitmap");
    for (const sim::HarqTraceRow& r : rr.harq_trace) {
      w.row(std::to_string(r.process_id) + "," + std::to_string(r.tx_index) +
            "," + std::to_string(r.mcs) + "," + r.pending_bitmap + "," +
            csvio::num(r.sinr_db, 3) + "," + r.outcome_bitmap);
    }
    w.close();
  }
  write_meta(sc, guard.track(out_dir + "/run_meta.ini"), "simulate", {});
  guard.commit();
  return rr;
}

sim::CapacityResult run_capacity(const Scenario& sc, const std::string& out_dir) {
  prepare_dir(out_dir);
  sim::CapacityResult cr = sim::system_capacity(sc);
  OutputGuard guard;
  {
    csvio::Writer w(guard.track(out_dir + "/capacity.csv"),
                    "ues_per_cell,satisfied_fraction,stderr");
    for (const sim::CapacityRow& r : cr.rows) {
      w.row(std::to_string(r.ues_per_cell) + "," +
            csvio::num(r.satisfied_fraction, 6) + "," +
            csvio::num(r.stderr_of_mean, 6));
    }
    w.close();
  }
  write_meta(sc, guard.track(out_dir + "/run_meta.ini"), "capacity",
             {"derived.capacity_ues_per_cell = " + std::to_string(cr.capacity)});
  guard.commit();
  return cr;
}

}  // namespace xrsim::runner
