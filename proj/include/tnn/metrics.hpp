#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tnn/gamma.hpp"
#include "tnn/network.hpp"

namespace tnn {

struct SpikeHistogram {
    std::vector<std::uint64_t> counts;  // index = spike time, 0..T-1
    std::uint64_t inf = 0;

    std::uint64_t total() const;
    std::uint64_t at(std::uint32_t t) const { return t < counts.size() ? counts[t] : 0; }
    // Time with the largest count (lowest on ties), ignoring INF; -1 if none.
    int mode() const;
    bool operator==(const SpikeHistogram&) const = default;
};

// Counts image-level winner spike times. Finite times >= period are a
// contract violation.
SpikeHistogram spike_histogram(const RunSummary& summary, std::uint32_t period);
SpikeHistogram spike_histogram(const std::vector<SpikeTime>& times, std::uint32_t period);

struct PurityReport {
    double purity = 0;
    // (column, neuron) -> majority label of that winner's images.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint8_t> majority;
    std::uint64_t unassigned = 0;  // images with no winner; scored as misses
};

// Clustering purity over winner groups: sum of each group's majority count
// divided by all images. labels[i] belongs to summary.winners[i].
// Throws std::invalid_argument on a count mismatch.
PurityReport purity(const RunSummary& summary, const std::vector<std::uint8_t>& labels);

// Group-id form used by the brute-force tests: group < 0 means no winner.
double purity_of_groups(const std::vector<long>& groups, const std::vector<std::uint8_t>& labels);

struct CycleSavings {
    double realized = 0;   // 1 - mean(cycle length)/T
    double potential = 0;  // 1 - mean(last monitored spike time)/T
};

// A cycle only contributes a decision time when every monitored column spiked;
// otherwise it counts as a full period. Throws on an empty trace.
CycleSavings cycle_savings(const GammaTrace& trace, std::uint32_t period);

// Histogram tables shaped like the spike-time occurrence tables: one column
// per named run, rows for each populated time, inf, and Total.
void write_histogram_markdown(const std::vector<std::pair<std::string, SpikeHistogram>>& runs, std::ostream& out);
void write_histogram_csv(const std::vector<std::pair<std::string, SpikeHistogram>>& runs, std::ostream& out);

// values[row][column]; rows are typically thresholds, columns encoders.
void write_purity_markdown(const std::string& corner, const std::vector<std::string>& row_names,
                           const std::vector<std::string>& column_names,
                           const std::vector<std::vector<double>>& values, std::ostream& out);

}  // namespace tnn
