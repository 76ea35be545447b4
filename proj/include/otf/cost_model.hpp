#pragma once

#include <cstdint>
#include <string>

// Analytical cost of one full generate-and-analyse cycle for the
// pre-generation (PG) and on-the-fly (OTF) pipelines. Sizes are in GB,
// rates in seconds per GB, times in seconds.
namespace otf::cost {

struct CostInputs {
    double D = 0.0;  // dataset size
    double B = 0.0;  // batch size
    double S = 0.0;  // seed data size
    std::uint64_t N_S = 1;  // seed file count
    double ram_D = 0.0;  // RAM to hold the whole dataset
    double P_per_batch = 0.0;  // parameter storage for one batch
    double read_rate_s_per_GB = 0.0;
    double write_rate_s_per_GB = 0.0;
    double T_GB = 0.0;  // generation time per batch

    // Throws InvalidInput or NonIntegralBatching.
    void validate() const;
};

std::uint64_t num_batches(double D, double B);
double ram_per_batch(double ram_D, std::uint64_t N_B);
double ram_otf(double RAM_B, std::uint64_t i, double RAM_P);
double disk_pg(double S_disk, double D_disk);
double disk_otf(double S_disk, std::uint64_t N_B, double P_per_batch);

struct RwCounts {
    std::uint64_t pg = 0;
    std::uint64_t otf = 0;
};
RwCounts rw_counts(std::uint64_t N_S, std::uint64_t N_B);

struct CycleTimes {
    double pg = 0.0;
    double otf = 0.0;
};
// Raw formulas. N_B = 0 is allowed here and leaves only the seed read.
CycleTimes cycle_times(double T_RS, std::uint64_t N_B, double T_GB, double T_WB, double T_RB, double T_WP_total);
CycleTimes cycle_times(const CostInputs& in);

// `holds` is always computed; it is only claimed when `assumption` is true.
struct Verdict {
    bool assumption = false;
    bool holds = false;

    bool asserted() const { return assumption; }
    bool failed() const { return assumption && !holds; }
};

struct CostReport {
    CostInputs inputs;
    std::uint64_t N_B = 0;
    double RAM_B = 0.0;
    double RAM_P = 0.0;
    double P_total = 0.0;
    double Disk_PG = 0.0;
    double Disk_OTF = 0.0;
    std::uint64_t N_RW_PG = 0;
    std::uint64_t N_RW_OTF = 0;
    double T_RS = 0.0;
    double T_WB = 0.0;
    double T_RB = 0.0;
    double T_WP_total = 0.0;
    double T_PG = 0.0;
    double T_OTF = 0.0;
    double otf_time_ratio = 0.0;

    Verdict disk;  // Disk_OTF < Disk_PG, assuming D > P_total
    Verdict rw;    // N_RW_OTF < N_RW_PG, assuming more than one batch
    Verdict time;  // T_OTF < T_PG, assuming P_total < D

    double ram_otf_at_batch(std::uint64_t i) const { return ram_otf(RAM_B, i, RAM_P); }
};

CostReport compare(const CostInputs& inputs);

std::string format_text(const CostReport& report);
std::string format_csv(const CostReport& report);

}  // namespace otf::cost
