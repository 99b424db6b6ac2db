#pragma once

#include <string>

#include "xrsim/scenario.hpp"
#include "xrsim/sim_engine.hpp"

namespace xrsim::runner {

// Each entry point writes its CSV outputs plus run_meta.ini into out_dir
// (created if missing) and returns the in-memory results. On failure all
// files written by the call are removed again.

// analytics.csv: p_tb,m,p_cbg,r_first,r_second,rreg_percent
void run_analytics(const Scenario& sc, const std::string& out_dir);

// kpi.csv: ue_id,packets,on_time,late,lost,satisfied
// ecdf_mcs.csv / ecdf_prb.csv, plus optional trace files.
sim::RunResult run_simulate(const Scenario& sc, const std::string& out_dir);

// capacity.csv: ues_per_cell,satisfied_fraction,stderr
sim::CapacityResult run_capacity(const Scenario& sc, const std::string& out_dir);

}  // namespace xrsim::runner
