#include "tnn/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace tnn {

std::uint64_t SpikeHistogram::total() const {
    std::uint64_t n = inf;
    for (auto c : counts) n += c;
    return n;
}

int SpikeHistogram::mode() const {
    int best = -1;
    std::uint64_t best_count = 0;
    for (std::size_t t = 0; t < counts.size(); ++t) {
        if (counts[t] > best_count) {
            best_count = counts[t];
            best = static_cast<int>(t);
        }
    }
    return best;
}

SpikeHistogram spike_histogram(const std::vector<SpikeTime>& times, std::uint32_t period) {
    SpikeHistogram h;
    h.counts.assign(period, 0);
    for (auto t : times) {
        if (t.is_inf()) {
            ++h.inf;
            continue;
        }
        if (t.cycle() >= period) throw std::invalid_argument("spike time " + t.to_string() + " outside the gamma period");
        ++h.counts[t.cycle()];
    }
    return h;
}

SpikeHistogram spike_histogram(const RunSummary& summary, std::uint32_t period) {
    std::vector<SpikeTime> times;
    times.reserve(summary.winners.size());
    for (const auto& w : summary.winners) times.push_back(w.time);
    return spike_histogram(times, period);
}

double purity_of_groups(const std::vector<long>& groups, const std::vector<std::uint8_t>& labels) {
    if (groups.size() != labels.size()) throw std::invalid_argument("one label per sample required");
    if (groups.empty()) return 0.0;
    std::map<long, std::map<std::uint8_t, std::uint64_t>> tally;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (groups[i] >= 0) ++tally[groups[i]][labels[i]];
    }
    std::uint64_t hits = 0;
    for (const auto& [g, counts] : tally) {
        std::uint64_t best = 0;
        for (const auto& [label, n] : counts) best = std::max(best, n);
        hits += best;
    }
    return static_cast<double>(hits) / static_cast<double>(groups.size());
}

PurityReport purity(const RunSummary& summary, const std::vector<std::uint8_t>& labels) {
    if (summary.winners.size() != labels.size())
        throw std::invalid_argument(std::to_string(labels.size()) + " labels for " +
                                    std::to_string(summary.winners.size()) + " images");
    PurityReport r;
    using Key = std::pair<std::uint32_t, std::uint32_t>;
    std::map<Key, std::map<std::uint8_t, std::uint64_t>> tally;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto& w = summary.winners[i];
        if (!w.column || !w.neuron) {
            ++r.unassigned;
            continue;
        }
        ++tally[{*w.column, *w.neuron}][labels[i]];
    }
    std::uint64_t hits = 0;
    for (const auto& [key, counts] : tally) {
        std::uint8_t label = 0;
        std::uint64_t best = 0;
        for (const auto& [l, n] : counts) {
            if (n > best) {
                best = n;
                label = l;
            }
        }
        r.majority[key] = label;
        hits += best;
    }
    r.purity = labels.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(labels.size());
    return r;
}

CycleSavings cycle_savings(const GammaTrace& trace, std::uint32_t period) {
    if (trace.records.empty()) throw std::invalid_argument("cycle_savings needs a non-empty trace");
    if (period == 0) throw std::invalid_argument("period must be >= 1");
    double length_sum = 0;
    double decision_sum = 0;
    for (const auto& r : trace.records) {
        length_sum += r.length;
        bool all_spiked = !r.winners.empty();
        std::uint32_t last = 0;
        for (const auto& w : r.winners) {
            if (w.time.is_inf()) {
                all_spiked = false;
                break;
            }
            last = std::max(last, w.time.cycle());
        }
        decision_sum += all_spiked ? std::min(last, period) : period;
    }
    const double n = static_cast<double>(trace.records.size());
    const double T = period;
    return {1.0 - length_sum / n / T, 1.0 - decision_sum / n / T};
}

namespace {

std::vector<std::uint32_t> populated_times(const std::vector<std::pair<std::string, SpikeHistogram>>& runs) {
    std::vector<std::uint32_t> times;
    std::size_t longest = 0;
    for (const auto& [name, h] : runs) longest = std::max(longest, h.counts.size());
    for (std::uint32_t t = 0; t < longest; ++t) {
        const bool any = std::any_of(runs.begin(), runs.end(), [t](const auto& r) { return r.second.at(t) > 0; });
        if (any) times.push_back(t);
    }
    return times;
}

}  // namespace

void write_histogram_markdown(const std::vector<std::pair<std::string, SpikeHistogram>>& runs, std::ostream& out) {
    out << "| Spike Time |";
    for (const auto& [name, h] : runs) out << ' ' << name << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < runs.size(); ++i) out << "---|";
    out << '\n';
    for (auto t : populated_times(runs)) {
        out << "| " << t << " |";
        for (const auto& [name, h] : runs) out << ' ' << h.at(t) << " |";
        out << '\n';
    }
    out << "| inf |";
    for (const auto& [name, h] : runs) out << ' ' << h.inf << " |";
    out << "\n| **Total** |";
    for (const auto& [name, h] : runs) out << " **" << h.total() << "** |";
    out << '\n';
}

void write_histogram_csv(const std::vector<std::pair<std::string, SpikeHistogram>>& runs, std::ostream& out) {
    out << "spike_time";
    for (const auto& [name, h] : runs) out << ',' << name;
    out << '\n';
    for (auto t : populated_times(runs)) {
        out << t;
        for (const auto& [name, h] : runs) out << ',' << h.at(t);
        out << '\n';
    }
    out << "inf";
    for (const auto& [name, h] : runs) out << ',' << h.inf;
    out << "\ntotal";
    for (const auto& [name, h] : runs) out << ',' << h.total();
    out << '\n';
}

void write_purity_markdown(const std::string& corner, const std::vector<std::string>& row_names,
                           const std::vector<std::string>& column_names,
                           const std::vector<std::vector<double>>& values, std::ostream& out) {
    out << "| " << corner << " |";
    for (const auto& c : column_names) out << ' ' << c << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < column_names.size(); ++i) out << "---|";
    out << '\n';
    const auto old_flags = out.flags();
    const auto old_prec = out.precision();
    out << std::fixed << std::setprecision(4);
    for (std::size_t r = 0; r < row_names.size(); ++r) {
        out << "| " << row_names[r] << " |";
        for (std::size_t c = 0; c < column_names.size(); ++c) out << ' ' << values.at(r).at(c) << " |";
        out << '\n';
    }
    out.flags(old_flags);
    out.precision(old_prec);
}

}  // namespace tnn
