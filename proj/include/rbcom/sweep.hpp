#pragma once

#include <iosfwd>
#include <vector>

#include "rbcom/config.hpp"
#include "rbcom/steady_state.hpp"

namespace rbcom {

// 1-D parameter sweep over a copy of a base configuration.  Each grid point
// is an independent full evaluation (steady state + noise budget), so points
// may be computed concurrently; records always come back in grid order.
struct SweepRequest {
    SweepVariable variable = SweepVariable::depth_m;
    double start = 0.0;
    double stop = 0.0;
    int num_points = 0;
    bool with_led = false; // also evaluate the LED baseline at each point
};

struct SweepRecord {
    double value = 0.0;
    double ac = 0.0;       // V/m
    double capacity = 0.0; // bit/s/Hz
    double i_sig = 0.0;    // A
    double snr = 0.0;
    bool lasing = false;
    double led_capacity = 0.0; // only meaningful when requested
};

// One grid point.  A value that fails validation yields a dead record
// (lasing=false, zeros) instead of an error so sweeps always complete.
SweepRecord evaluate_point(const SystemConfig& base, SweepVariable var,
                           double value, bool with_led);

// Worker count comes from RBCOM_WORKERS (default: hardware concurrency,
// capped at 8); parallel and serial runs produce identical records.
std::vector<SweepRecord> run_sweep(const SystemConfig& base,
                                   const SweepRequest& req);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records,
                     const SweepRequest& req);

} // namespace rbcom
