#include "rbcom/sweep.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rbcom/csv.hpp"
#include "rbcom/link_metrics.hpp"

namespace rbcom {

namespace {

unsigned worker_count(int points) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    n = std::min(n, 8u);
    if (const char* env = std::getenv("RBCOM_WORKERS")) {
        long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) n = static_cast<unsigned>(parsed);
    }
    return std::min<unsigned>(n, static_cast<unsigned>(points));
}

} // namespace

SweepRecord evaluate_point(const SystemConfig& base, SweepVariable var,
                           double value, bool with_led) {
    SweepRecord rec;
    rec.value = value;
    SystemConfig cfg;
    try {
        cfg = apply_sweep_variable(base, var, value);
    } catch (const std::exception&) {
        return rec; // dead record: value outside the variable's domain
    }
    auto checked = validate(cfg);
    if (!checked.ok()) return rec;
    const ValidatedConfig& vc = checked.config();

    NoiseBudget budget = rbcom_budget(vc);
    rec.ac = carrier_amplitude(vc).ac;
    rec.capacity = budget.capacity;
    rec.i_sig = budget.mean_current;
    rec.snr = budget.snr;
    rec.lasing = budget.lasing;
    if (with_led) rec.led_capacity = led_budget(vc).capacity;
    return rec;
}

std::vector<SweepRecord> run_sweep(const SystemConfig& base,
                                   const SweepRequest& req) {
    if (req.num_points < 2)
        throw std::invalid_argument("num_points must be at least 2");
    if (!(req.start < req.stop))
        throw std::invalid_argument("start must be less than stop");

    std::vector<SweepRecord> records(static_cast<size_t>(req.num_points));
    const double step =
        (req.stop - req.start) / static_cast<double>(req.num_points - 1);

    auto work = [&](unsigned first, unsigned stride) {
        for (size_t i = first; i < records.size(); i += stride) {
            double value = req.start + step * static_cast<double>(i);
            if (i + 1 == records.size()) value = req.stop;
            records[i] =
                evaluate_point(base, req.variable, value, req.with_led);
        }
    };

    const unsigned workers = worker_count(req.num_points);
    if (workers <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w, workers);
        for (auto& t : pool) t.join();
    }
    return records;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records,
                     const SweepRequest& req) {
    os << to_string(req.variable) << ",ac,capacity,i_sig,snr,lasing";
    if (req.with_led) os << ",led_capacity";
    os << '\n';
    for (const auto& r : records) {
        os << format_number(r.value) << ',' << format_number(r.ac) << ','
           << format_number(r.capacity) << ',' << format_number(r.i_sig)
           << ',' << format_number(r.snr) << ',' << (r.lasing ? '1' : '0');
        if (req.with_led) os << ',' << format_number(r.led_capacity);
        os << '\n';
    }
}

} // namespace rbcom
