#include "macsel/desim/sim_config.hpp"

#include <cmath>

namespace macsel::desim {

std::vector<Violation> validate(const SimConfig& cfg) {
    std::vector<Violation> v;
    for (auto x : macsel::validate(cfg.context)) v.push_back({"context." + x.field, x.rule});
    for (auto x : macsel::validate(cfg.profile)) v.push_back({"profile." + x.field, x.rule});
    auto check = [&](bool ok, const char* field, const char* rule) {
        if (!ok) v.push_back({std::string("simulation.") + field, rule});
    };
    check(std::isfinite(cfg.area.width) && cfg.area.width > 0, "area.width", "must be > 0");
    check(std::isfinite(cfg.area.height) && cfg.area.height > 0, "area.height", "must be > 0");
    check(std::isfinite(cfg.sim_duration) && cfg.sim_duration > 0, "sim_duration", "must be > 0");
    check(cfg.confidence > 0 && cfg.confidence < 1, "confidence", "must be in (0, 1)");
    check(std::isfinite(cfg.rel_error) && cfg.rel_error > 0, "rel_error", "must be > 0");
    check(cfg.min_reps >= 2, "min_reps", "must be >= 2");
    check(cfg.max_reps >= cfg.min_reps, "max_reps", "must be >= min_reps");
    check(cfg.retry_limit >= 0, "retry_limit", "must be >= 0");
    check(cfg.backoff_slot >= 0, "backoff_slot", "must be >= 0 (0 selects the default)");
    check(cfg.sched_rows >= 1, "sched_rows", "must be >= 1");
    check(cfg.sched_cols >= 1, "sched_cols", "must be >= 1");
    check(cfg.placement_tries >= 1, "placement_tries", "must be >= 1");
    for (double g : cfg.sweep_pkt_rates)
        if (!(std::isfinite(g) && g >= 0)) {
            v.push_back({"simulation.sweep_pkt_rates", "entries must be >= 0"});
            break;
        }
    return v;
}

}  // namespace macsel::desim
