#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tnn/enc_pipeline.hpp"

using namespace tnn;

namespace {

// Oracle: walk the comparator bank one clock at a time, counting busy and
// idle comparator slots until every pixel has been sampled.
struct BankTally {
    std::uint64_t cycles = 0;
    std::uint64_t busy = 0;
    std::uint64_t idle = 0;
};

BankTally simulate_bank(std::uint64_t pixels, std::uint64_t comparators) {
    BankTally t;
    std::uint64_t next = 0;
    while (next < pixels) {
        ++t.cycles;
        for (std::uint64_t c = 0; c < comparators; ++c) {
            if (next < pixels) {
                ++next;
                ++t.busy;
            } else {
                ++t.idle;
            }
        }
    }
    return t;
}

ComparatorBankConfig bank(std::uint64_t comparators, double freq = 1e9, std::uint64_t pixels = 784) {
    return {comparators, freq, pixels};
}

}  // namespace

TEST_CASE("cycles_required") {
    CHECK(cycles_required(784, 49) == 16);
    CHECK(cycles_required(784, 784) == 1);
    CHECK(cycles_required(784, 100) == 8);
    CHECK(cost_report(bank(100), {}).wasted_comparator_cycles == 16);
    CHECK_THROWS_AS(cycles_required(784, 0), CostError);
    for (std::uint64_t px : {1u, 7u, 49u, 784u, 1080u})
        for (std::uint64_t c = 1; c <= 60; ++c) {
            const auto oracle = simulate_bank(px, c);
            REQUIRE(cycles_required(px, c) == oracle.cycles);
            REQUIRE(cost_report(bank(c, 1e9, px), {}).wasted_comparator_cycles == oracle.idle);
        }
}

TEST_CASE("cost_report reference points") {
    const UnitCostParams unit;
    const auto r49 = cost_report(bank(49), unit);
    CHECK(r49.cycles == 16);
    CHECK(r49.processing_time == 16e-9);
    CHECK(r49.area == doctest::Approx(65.17).epsilon(1e-12));
    CHECK(cost_report(bank(1), unit).processing_time == 784e-9);
    CHECK(cost_report(bank(784), unit).processing_time == 1e-9);
    CHECK(r49.total_energy == r49.dynamic_energy + r49.leakage_energy);
    CHECK(r49.edp == r49.total_energy * r49.processing_time);

    // Energy oracle: every comparator slot, busy or idle, costs one nominal
    // dynamic op plus leakage for one clock period.
    for (std::uint64_t c : {1u, 3u, 49u, 100u, 625u}) {
        for (double f : {1e8, 1e9, 2e10}) {
            const auto t = simulate_bank(784, c);
            const double slots = static_cast<double>(t.busy + t.idle);
            const double expect = slots * (unit.dynamic_power_at_nominal * unit.nominal_clock_period +
                                           unit.leakage_power / f);
            CHECK(cost_report(bank(c, f), unit).total_energy == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("cost_report errors") {
    CHECK_THROWS_AS(cost_report(bank(0), {}), CostError);
    try {
        cost_report(bank(49, 1e11), {});
        FAIL("expected timing violation");
    } catch (const CostError& e) {
        CHECK(e.code() == CostErrc::timing_violation);
    }
    UnitCostParams bad;
    bad.leakage_power = 0;
    CHECK_THROWS_AS(cost_report(bank(49), bad), CostError);
}

TEST_CASE("divisor-energy invariance") {
    const double base = cost_report(bank(1), {}).total_energy;
    for (std::uint64_t c : {1u, 2u, 4u, 8u, 16u, 49u, 196u, 784u})
        CHECK(std::abs(cost_report(bank(c), {}).total_energy - base) <= 1e-12 * base);
    for (std::uint64_t c : {100u, 250u, 400u, 625u}) CHECK(cost_report(bank(c), {}).total_energy > base);
    for (std::uint64_t c = 1; c <= 784; ++c) REQUIRE(cost_report(bank(c), {}).total_energy >= base * (1 - 1e-12));
}

TEST_CASE("area is exactly linear in comparator count") {
    const double one = cost_report(bank(1), {}).area;
    for (std::uint64_t c = 1; c <= 784; ++c) REQUIRE(cost_report(bank(c), {}).area == static_cast<double>(c) * one);
}

TEST_CASE("EDP at exact divisors falls with comparator count") {
    // Energy is flat across divisors and delay falls, so EDP must fall too.
    const auto edp = [](std::uint64_t c) { return cost_report(bank(c), {}).edp; };
    CHECK(edp(49) > edp(196));
    CHECK(edp(196) > edp(784));
}

TEST_CASE("sweeps") {
    const UnitCostParams unit;
    SUBCASE("frequency: total energy non-increasing, violations reported per row") {
        const std::vector<double> f = {1e8, 2e8, 5e8, 1e9, 2e9, 5e9, 1e10, 2e10, 1e11};
        const auto rows = sweep(SweepAxis::frequency, f, bank(49), unit);
        REQUIRE(rows.size() == f.size());
        double prev = INFINITY;
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            const auto& r = std::get<CostReport>(rows[i]);
            CHECK(r.total_energy <= prev);
            prev = r.total_energy;
        }
        CHECK(std::holds_alternative<CostError>(rows.back()));
    }
    SUBCASE("comparator count: area linear") {
        const auto rows = sweep(SweepAxis::comparator_count, {1, 2, 3, 10, 49, 784}, bank(49), unit);
        for (const auto& row : rows) {
            const auto& r = std::get<CostReport>(row);
            CHECK(r.area / unit.area_per_comparator == doctest::Approx(std::round(r.area / unit.area_per_comparator)));
        }
        CHECK(std::get<CostReport>(rows[1]).area == 2 * std::get<CostReport>(rows[0]).area);
    }
    SUBCASE("image size 49 -> 2160 pixels: ~44x size gives 45x time") {
        const auto rows = sweep(SweepAxis::image_size, {49, 2160}, bank(49), unit);
        const double ratio = std::get<CostReport>(rows[1]).processing_time / std::get<CostReport>(rows[0]).processing_time;
        CHECK(ratio == doctest::Approx(45.0));
        CHECK(2160.0 / 49.0 == doctest::Approx(44.08).epsilon(1e-3));
    }
    CHECK_THROWS(sweep(SweepAxis::frequency, {}, bank(49), unit));
    CHECK_THROWS(sweep(SweepAxis::frequency, {-1}, bank(49), unit));
}

TEST_CASE("cost CSV") {
    const auto rows = sweep(SweepAxis::frequency, {1e9, 1e11}, bank(49), {});
    std::ostringstream out;
    write_cost_csv(rows, out);
    std::istringstream in(out.str());
    std::string header, first, second;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    CHECK(header == "cycles,processing_time,area,dynamic_energy,leakage_energy,total_energy,edp,wasted_comparator_cycles");
    CHECK(first.rfind("16,", 0) == 0);
    CHECK(second == ",,,,,,,");
}

TEST_CASE("throughput and capacity") {
    const UnitCostParams unit;
    const double t784 = throughput(60, bank(49, 1e9, 784), unit);
    const double t2160 = throughput(60, bank(49, 1e9, 2160), unit);
    CHECK(t784 == doctest::Approx(60 * 16e-9));
    CHECK(t2160 / t784 == doctest::Approx(45.0 / 16.0));
    CHECK(t2160 / t784 > 2.6);
    CHECK(t2160 / t784 < 2.9);

    const auto c784 = capacity(1e-3, bank(49, 1e9, 784), unit);
    const auto c2160 = capacity(1e-3, bank(49, 1e9, 2160), unit);
    CHECK(c784 == 62500);
    CHECK(c2160 == 22222);
    CHECK(static_cast<double>(c2160) / c784 == doctest::Approx(0.36).epsilon(0.02));
    CHECK(capacity(0, bank(49), unit) == 0);
}
