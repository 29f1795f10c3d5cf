#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tnn {

// Comparator-bank encoder: each clock samples comparator_count pixels of the
// buffered image until every pixel has been compared.
struct ComparatorBankConfig {
    std::uint64_t comparator_count = 49;
    double clock_frequency = 1e9;  // Hz
    std::uint64_t pixels_per_image = 784;

    void validate() const;
};

// Per pos/neg comparator pair. Defaults are the 45 nm synthesis figures for a
// single unit at a 1 GHz nominal clock.
struct UnitCostParams {
    double area_per_comparator = 1.33;               // sq-nm
    double dynamic_power_at_nominal = 546.3058e-9;   // W
    double leakage_power = 35.7914e-9;               // W
    double nominal_clock_period = 1e-9;              // s
    double critical_path = 0.04e-9;                  // s

    void validate() const;
};

struct CostReport {
    std::uint64_t cycles = 0;
    double processing_time = 0;  // s
    double area = 0;
    double dynamic_energy = 0;   // J
    double leakage_energy = 0;   // J
    double total_energy = 0;     // J
    double edp = 0;              // J*s
    std::uint64_t wasted_comparator_cycles = 0;
};

enum class CostErrc { zero_comparators, bad_frequency, bad_unit_params, timing_violation };

class CostError : public std::runtime_error {
public:
    CostError(CostErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    CostErrc code() const { return code_; }

private:
    CostErrc code_;
};

std::uint64_t cycles_required(std::uint64_t pixels, std::uint64_t comparators);

// Idle comparators in a ragged last cycle are charged like busy ones.
// Throws CostError(timing_violation) when 1/frequency < critical_path.
CostReport cost_report(const ComparatorBankConfig& cfg, const UnitCostParams& unit);

enum class SweepAxis { comparator_count, frequency, image_size };

const char* to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

// A row is either a report or the error that cost_report raised for it.
using SweepRow = std::variant<CostReport, CostError>;

std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values,
                            const ComparatorBankConfig& base, const UnitCostParams& unit);

// Header row plus one row per sweep point, columns exactly the CostReport
// fields. Rows that failed carry empty cells.
void write_cost_csv(const std::vector<SweepRow>& rows, std::ostream& out);

// Sequential model: images are encoded back to back.
double throughput(std::uint64_t images, const ComparatorBankConfig& cfg, const UnitCostParams& unit);
std::uint64_t capacity(double budget_seconds, const ComparatorBankConfig& cfg, const UnitCostParams& unit);

}  // namespace tnn
