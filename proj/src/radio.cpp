#include "macsel/radio.hpp"

#include <cmath>
#include <limits>

#include "macsel/errors.hpp"

namespace macsel {

double RadioProfile::crossover() const {
    if (amp_mp <= 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(amp_fs / amp_mp);
}

double tx_energy_per_bit(double d, const RadioProfile& prof) {
    if (!(d >= 0)) throw Error(ErrorCode::domain, "tx_energy_per_bit: distance must be >= 0");
    if (d < prof.crossover()) return prof.e_elec + prof.amp_fs * d * d;
    const double d2 = d * d;
    return prof.e_elec + prof.amp_mp * d2 * d2;
}

double rx_energy_per_bit(const RadioProfile& prof) { return prof.e_elec; }

std::vector<Violation> validate(const RadioProfile& prof) {
    std::vector<Violation> v;
    auto nonneg = [&](double x, const char* field) {
        if (!(x >= 0) || !std::isfinite(x)) v.push_back({field, "must be >= 0"});
    };
    nonneg(prof.e_elec, "e_elec");
    nonneg(prof.amp_fs, "amp_fs");
    nonneg(prof.amp_mp, "amp_mp");
    nonneg(prof.p_idle, "p_idle");
    nonneg(prof.e_on, "e_on");
    nonneg(prof.e_off, "e_off");
    return v;
}

}  // namespace macsel
