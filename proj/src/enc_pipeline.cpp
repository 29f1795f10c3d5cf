#include "tnn/enc_pipeline.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace tnn {

void ComparatorBankConfig::validate() const {
    if (comparator_count == 0) throw CostError(CostErrc::zero_comparators, "comparator_count must be >= 1");
    if (!(clock_frequency > 0) || !std::isfinite(clock_frequency))
        throw CostError(CostErrc::bad_frequency, "clock frequency must be positive");
}

void UnitCostParams::validate() const {
    for (double v : {area_per_comparator, dynamic_power_at_nominal, leakage_power, nominal_clock_period,
                     critical_path}) {
        if (!(v > 0) || !std::isfinite(v))
            throw CostError(CostErrc::bad_unit_params, "unit cost parameters must be strictly positive");
    }
}

std::uint64_t cycles_required(std::uint64_t pixels, std::uint64_t comparators) {
    if (comparators == 0) throw CostError(CostErrc::zero_comparators, "comparator count must be >= 1");
    return pixels / comparators + (pixels % comparators != 0 ? 1 : 0);
}

CostReport cost_report(const ComparatorBankConfig& cfg, const UnitCostParams& unit) {
    cfg.validate();
    unit.validate();
    const double period = 1.0 / cfg.clock_frequency;
    if (period < unit.critical_path) {
        std::ostringstream os;
        os << "clock period " << period << " s is shorter than the critical path " << unit.critical_path << " s";
        throw CostError(CostErrc::timing_violation, os.str());
    }

    CostReport r;
    r.cycles = cycles_required(cfg.pixels_per_image, cfg.comparator_count);
    const auto count = static_cast<double>(cfg.comparator_count);
    const double comparator_cycles = count * static_cast<double>(r.cycles);

    r.processing_time = static_cast<double>(r.cycles) / cfg.clock_frequency;
    r.area = count * unit.area_per_comparator;
    r.dynamic_energy = comparator_cycles * unit.dynamic_power_at_nominal * unit.nominal_clock_period;
    r.leakage_energy = comparator_cycles * unit.leakage_power * period;
    r.total_energy = r.dynamic_energy + r.leakage_energy;
    r.edp = r.total_energy * r.processing_time;
    r.wasted_comparator_cycles = cfg.comparator_count * r.cycles - cfg.pixels_per_image;
    return r;
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::comparator_count: return "comparator_count";
    case SweepAxis::frequency: return "frequency";
    case SweepAxis::image_size: return "image_size";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "comparator_count" || name == "comparators") return SweepAxis::comparator_count;
    if (name == "frequency") return SweepAxis::frequency;
    if (name == "image_size") return SweepAxis::image_size;
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values,
                            const ComparatorBankConfig& base, const UnitCostParams& unit) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        if (!(v > 0)) throw std::invalid_argument("sweep values must be positive");
        ComparatorBankConfig cfg = base;
        switch (axis) {
        case SweepAxis::comparator_count: cfg.comparator_count = static_cast<std::uint64_t>(std::llround(v)); break;
        case SweepAxis::frequency: cfg.clock_frequency = v; break;
        case SweepAxis::image_size: cfg.pixels_per_image = static_cast<std::uint64_t>(std::llround(v)); break;
        }
        try {
            rows.emplace_back(cost_report(cfg, unit));
        } catch (const CostError& e) {
            rows.emplace_back(e);
        }
    }
    return rows;
}

void write_cost_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "cycles,processing_time,area,dynamic_energy,leakage_energy,total_energy,edp,wasted_comparator_cycles\n";
    std::ostringstream line;
    line << std::setprecision(17);
    for (const auto& row : rows) {
        line.str({});
        if (const auto* r = std::get_if<CostReport>(&row)) {
            line << r->cycles << ',' << r->processing_time << ',' << r->area << ',' << r->dynamic_energy << ','
                 << r->leakage_energy << ',' << r->total_energy << ',' << r->edp << ','
                 << r->wasted_comparator_cycles;
        } else {
            line << ",,,,,,,";
        }
        out << line.str() << '\n';
    }
}

double throughput(std::uint64_t images, const ComparatorBankConfig& cfg, const UnitCostParams& unit) {
    return static_cast<double>(images) * cost_report(cfg, unit).processing_time;
}

std::uint64_t capacity(double budget_seconds, const ComparatorBankConfig& cfg, const UnitCostParams& unit) {
    if (!(budget_seconds > 0)) return 0;
    const double per_image = cost_report(cfg, unit).processing_time;
    // Guard against 1e-3/16e-9 landing a hair below an exact integer.
    const double ratio = budget_seconds / per_image;
    const double rounded = std::round(ratio);
    const double n = std::abs(ratio - rounded) <= 1e-9 * rounded ? rounded : std::floor(ratio);
    return static_cast<std::uint64_t>(n);
}

}  // namespace tnn
