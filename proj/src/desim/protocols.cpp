#include "macsel/desim/protocols.hpp"

#include <cmath>

#include "macsel/categories.hpp"
#include "macsel/errors.hpp"

namespace macsel::desim {

const char* to_string(Protocol p) {
    switch (p) {
        case Protocol::psa: return "psa";
        case Protocol::smac: return "smac";
        case Protocol::tsmp: return "tsmp";
    }
    return "?";
}

std::optional<Protocol> parse_protocol(std::string_view name) {
    if (name == "psa") return Protocol::psa;
    if (name == "smac") return Protocol::smac;
    if (name == "tsmp") return Protocol::tsmp;
    return std::nullopt;
}

const char* category_of(Protocol p) {
    switch (p) {
        case Protocol::psa: return category::preamble_sampling.data();
        case Protocol::smac: return category::common_active.data();
        case Protocol::tsmp: return category::scheduled.data();
    }
    return "?";
}

namespace {

void require_valid(const SimConfig& cfg) {
    auto v = validate(cfg);
    if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace

std::vector<Position> connected_layout(const SimConfig& cfg) {
    for (int attempt = 0; attempt < cfg.placement_tries; ++attempt) {
        auto pos = deploy(cfg.context.n_nodes, cfg.area, derive_seed(cfg.seed, 0x10000u + static_cast<unsigned>(attempt)));
        if (build_topology(pos, cfg.context.tx_range, cfg.area, cfg.boundary).connected()) return pos;
    }
    throw Error(ErrorCode::invalid_config, "no connected layout found in " + std::to_string(cfg.placement_tries) +
                                               " placements; enlarge tx_range or shrink the area");
}

TsmpSetup tsmp_setup(const SimConfig& cfg) {
    require_valid(cfg);
    const auto& s = cfg.context.sched;
    const double frame = s.slot_len * cfg.sched_cols;
    if (std::abs(frame - s.frame_len) > 1e-9 * s.frame_len)
        throw ValidationError(std::vector<Violation>{{"simulation.sched_cols",
                                "sched_cols x context.sched.slot_len must equal context.sched.frame_len"}});
    TsmpSetup out;
    out.positions = connected_layout(cfg);
    out.topology = build_topology(out.positions, cfg.context.tx_range, cfg.area, cfg.boundary);
    out.schedule = build_tsmp_schedule(out.topology, cfg.sched_rows, cfg.sched_cols, cfg.seed);
    return out;
}

SimStats run_psa(const SimConfig& cfg) {
    require_valid(cfg);
    return replicate_until_confident(run_psa_once, cfg);
}

SimStats run_smac(const SimConfig& cfg) {
    require_valid(cfg);
    return replicate_until_confident(run_smac_once, cfg);
}

SimStats run_tsmp(const SimConfig& cfg, const TsmpSetup& setup) {
    require_valid(cfg);
    if (auto problems = verify_schedule(setup.topology, setup.schedule); !problems.empty())
        throw Error(ErrorCode::invalid_config, "schedule does not match the topology: " + problems.front());
    return replicate_until_confident(
        [&](const SimConfig& c, std::uint64_t seed) { return run_tsmp_once(c, setup.topology, setup.schedule, seed); },
        cfg);
}

SimStats run_tsmp(const SimConfig& cfg) { return run_tsmp(cfg, tsmp_setup(cfg)); }

SimStats run(Protocol p, const SimConfig& cfg) {
    switch (p) {
        case Protocol::psa: return run_psa(cfg);
        case Protocol::smac: return run_smac(cfg);
        case Protocol::tsmp: return run_tsmp(cfg);
    }
    throw Error(ErrorCode::invalid_config, "unknown protocol");
}

}  // namespace macsel::desim
