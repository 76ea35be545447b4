#include <random>

#include <gtest/gtest.h>

#include "otf/cost_model.hpp"
#include "otf/error.hpp"

namespace otf::cost {
namespace {

// Inputs of the worked HDD example: 10 GB seeds, 100 GB dataset in 5 GB
// batches, 10 s/GB both ways, 5 s per batch, 0.0046 GB of parameters.
CostInputs worked_example() {
    CostInputs in;
    in.S = 10;
    in.D = 100;
    in.B = 5;
    in.N_S = 30;
    in.ram_D = 100;
    in.P_per_batch = 0.0046 / 20;
    in.read_rate_s_per_GB = 10;
    in.write_rate_s_per_GB = 10;
    in.T_GB = 5;
    return in;
}

CostInputs random_inputs(std::mt19937_64& gen) {
    auto log_uniform = [&gen](double lo, double hi) {
        return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(gen));
    };
    CostInputs in;
    const auto n_b = 1 + gen() % 500;
    in.B = log_uniform(1e-3, 1e3);
    in.D = in.B * static_cast<double>(n_b);
    in.S = log_uniform(1e-3, 1e3);
    in.N_S = 1 + gen() % 1000;
    in.ram_D = log_uniform(1e-3, 1e4);
    in.P_per_batch = in.B * log_uniform(1e-8, 1.0);
    in.read_rate_s_per_GB = log_uniform(1e-3, 1e2);
    in.write_rate_s_per_GB = log_uniform(1e-3, 1e2);
    in.T_GB = log_uniform(1e-3, 1e3);
    return in;
}

TEST(NumBatches, Examples) {
    EXPECT_EQ(num_batches(100, 5), 20u);
    EXPECT_EQ(num_batches(7.5, 7.5), 1u);
    EXPECT_EQ(num_batches(86400, 3600), 24u);
}

TEST(NumBatches, NonIntegralRejected) {
    try {
        num_batches(100, 7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonIntegralBatching);
    }
    EXPECT_THROW(num_batches(0, 1), Error);
}

TEST(Ram, PerBatchAndOtf) {
    EXPECT_DOUBLE_EQ(ram_per_batch(100, 20), 5.0);
    EXPECT_DOUBLE_EQ(ram_per_batch(42, 1), 42.0);
    EXPECT_DOUBLE_EQ(ram_per_batch(42, 8), 2.0 * ram_per_batch(42, 16));
    EXPECT_DOUBLE_EQ(ram_otf(5, 20, 0.0), 5.0);
    EXPECT_DOUBLE_EQ(ram_otf(5, 0, 2.3e-4), 5.0);
    EXPECT_NEAR(ram_otf(5, 20, 2.3e-4), 5.0046, 1e-12);
}

TEST(Disk, WorkedExampleValues) {
    EXPECT_DOUBLE_EQ(disk_pg(10, 100), 110.0);
    EXPECT_NEAR(disk_otf(10, 20, 0.00023), 10.0046, 1e-12);
    EXPECT_LT(disk_otf(10, 20, 0.00023), disk_pg(10, 100));
}

TEST(RwCounts, Examples) {
    const auto rw = rw_counts(30, 20);
    EXPECT_EQ(rw.pg, 70u);
    EXPECT_EQ(rw.otf, 31u);
    const auto one = rw_counts(30, 1);
    EXPECT_EQ(one.pg - one.otf, 1u);
}

TEST(RwCounts, GapIsTwoNbMinusOne) {
    for (std::uint64_t n_s = 1; n_s < 40; ++n_s) {
        for (std::uint64_t n_b = 1; n_b < 200; ++n_b) {
            const auto rw = rw_counts(n_s, n_b);
            ASSERT_LT(rw.otf, rw.pg);
            ASSERT_EQ(rw.pg - rw.otf, 2 * n_b - 1);
        }
    }
}

TEST(CycleTimes, WorkedExampleByHand) {
    // T_RS = 10 * 10 = 100; N_B * T_GB = 100; N_B * T_WB = N_B * T_RB = 20 * 50 = 1000;
    // T_WP = 0.0046 * 10 = 0.046.
    const auto t = cycle_times(worked_example());
    EXPECT_DOUBLE_EQ(t.pg, 2200.0);
    EXPECT_NEAR(t.otf, 200.046, 1e-9);
}

TEST(CycleTimes, DegenerateWorkloadReducesToSeedRead) {
    const auto t = cycle_times(123.0, 0, 5.0, 50.0, 50.0, 0.0);
    EXPECT_EQ(t.pg, 123.0);
    EXPECT_EQ(t.otf, 123.0);
}

TEST(Compare, WorkedExampleVerdicts) {
    const auto r = compare(worked_example());
    EXPECT_EQ(r.N_B, 20u);
    EXPECT_NEAR(r.P_total, 0.0046, 1e-15);
    EXPECT_TRUE(r.disk.assumption && r.disk.holds);
    EXPECT_TRUE(r.rw.assumption && r.rw.holds);
    EXPECT_TRUE(r.time.assumption && r.time.holds);
    EXPECT_NEAR(r.ram_otf_at_batch(20), 5.0046, 1e-12);
    EXPECT_NEAR(r.otf_time_ratio, 200.046 / 2200.0, 1e-12);
}

TEST(Compare, ParametersAsLargeAsDatasetAreFlaggedNotAsserted) {
    CostInputs in = worked_example();
    in.P_per_batch = in.B * 1.5;  // P_total > D
    const auto r = compare(in);
    EXPECT_FALSE(r.disk.assumption);
    EXPECT_FALSE(r.disk.holds);
    EXPECT_FALSE(r.disk.failed());
    EXPECT_FALSE(r.time.assumption);
}

TEST(Compare, SingleBatchFlagsRwAssumption) {
    CostInputs in = worked_example();
    in.B = in.D;
    const auto r = compare(in);
    EXPECT_EQ(r.N_B, 1u);
    EXPECT_FALSE(r.rw.assumption);
    EXPECT_TRUE(r.rw.holds);
}

TEST(Compare, InvalidInputs) {
    CostInputs in = worked_example();
    in.T_GB = 0;
    EXPECT_THROW(compare(in), Error);
    in = worked_example();
    in.B = 200;
    EXPECT_THROW(compare(in), Error);
    in = worked_example();
    in.B = 3;
    EXPECT_THROW(compare(in), Error);
}

TEST(Theorems, HoldOnRandomInputsWhenAssumptionsHold) {
    std::mt19937_64 gen(31337);
    int asserted = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const CostInputs in = random_inputs(gen);
        const auto r = compare(in);
        if (r.disk.assumption) {
            ASSERT_TRUE(r.disk.holds) << "trial " << trial;
            ++asserted;
        }
        if (r.rw.assumption) {
            ASSERT_TRUE(r.rw.holds);
            ASSERT_EQ(r.N_RW_PG - r.N_RW_OTF, 2 * r.N_B - 1);
        }
        if (r.time.assumption) {
            ASSERT_TRUE(r.time.holds) << "trial " << trial;
            const double gap = static_cast<double>(r.N_B) * (r.T_WB + r.T_RB) - r.T_WP_total;
            ASSERT_NEAR(r.T_PG - r.T_OTF, gap, 1e-9 * r.T_PG);
        }
    }
    EXPECT_GT(asserted, 9000);
}

TEST(Format, TextAndCsvCarryTheFigures) {
    const auto r = compare(worked_example());
    const auto text = format_text(r);
    EXPECT_NE(text.find("2200.000"), std::string::npos);
    EXPECT_NE(text.find("200.046"), std::string::npos);
    EXPECT_NE(text.find("70"), std::string::npos);
    const auto csv = format_csv(r);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
    EXPECT_NE(csv.find(",2200,"), std::string::npos);
}

}  // namespace
}  // namespace otf::cost
