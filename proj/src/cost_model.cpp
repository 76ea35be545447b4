#include "otf/cost_model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "otf/error.hpp"

namespace otf::cost {

void CostInputs::validate() const {
    const struct {
        const char* name;
        double value;
    } positive[] = {{"D", D},
                    {"B", B},
                    {"S", S},
                    {"ram_D", ram_D},
                    {"P_per_batch", P_per_batch},
                    {"read_rate_s_per_GB", read_rate_s_per_GB},
                    {"write_rate_s_per_GB", write_rate_s_per_GB},
                    {"T_GB", T_GB}};
    for (const auto& field : positive) {
        if (!(std::isfinite(field.value) && field.value > 0.0)) {
            throw Error(ErrorCode::InvalidInput, std::string(field.name) + " must be finite and > 0");
        }
    }
    if (N_S < 1) throw Error(ErrorCode::InvalidInput, "N_S must be >= 1");
    if (B > D) throw Error(ErrorCode::InvalidInput, "batch size exceeds dataset size");
    num_batches(D, B);
}

std::uint64_t num_batches(double D, double B) {
    if (!(D > 0.0 && B > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "D and B must be > 0");
    }
    const double ratio = D / B;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw Error(ErrorCode::NonIntegralBatching, "D / B = " + std::to_string(ratio) + " is not an integer");
    }
    return static_cast<std::uint64_t>(rounded);
}

double ram_per_batch(double ram_D, std::uint64_t N_B) { return ram_D / static_cast<double>(N_B); }

double ram_otf(double RAM_B, std::uint64_t i, double RAM_P) { return RAM_B + static_cast<double>(i) * RAM_P; }

double disk_pg(double S_disk, double D_disk) { return S_disk + D_disk; }

double disk_otf(double S_disk, std::uint64_t N_B, double P_per_batch) {
    return S_disk + static_cast<double>(N_B) * P_per_batch;
}

RwCounts rw_counts(std::uint64_t N_S, std::uint64_t N_B) { return {N_S + 2 * N_B, N_S + 1}; }

CycleTimes cycle_times(double T_RS, std::uint64_t N_B, double T_GB, double T_WB, double T_RB, double T_WP_total) {
    const double n = static_cast<double>(N_B);
    return {T_RS + n * T_GB + n * T_WB + n * T_RB, T_RS + n * T_GB + T_WP_total};
}

CycleTimes cycle_times(const CostInputs& in) {
    in.validate();
    const auto N_B = num_batches(in.D, in.B);
    const double P_total = static_cast<double>(N_B) * in.P_per_batch;
    return cycle_times(in.S * in.read_rate_s_per_GB, N_B, in.T_GB, in.B * in.write_rate_s_per_GB,
                       in.B * in.read_rate_s_per_GB, P_total * in.write_rate_s_per_GB);
}

CostReport compare(const CostInputs& inputs) {
    inputs.validate();
    CostReport r;
    r.inputs = inputs;
    r.N_B = num_batches(inputs.D, inputs.B);
    r.RAM_B = ram_per_batch(inputs.ram_D, r.N_B);
    // Parameter RAM per batch equals its on-disk footprint.
    r.RAM_P = inputs.P_per_batch;
    r.P_total = static_cast<double>(r.N_B) * inputs.P_per_batch;
    r.Disk_PG = disk_pg(inputs.S, inputs.D);
    r.Disk_OTF = disk_otf(inputs.S, r.N_B, inputs.P_per_batch);
    const auto rw = rw_counts(inputs.N_S, r.N_B);
    r.N_RW_PG = rw.pg;
    r.N_RW_OTF = rw.otf;
    r.T_RS = inputs.S * inputs.read_rate_s_per_GB;
    r.T_WB = inputs.B * inputs.write_rate_s_per_GB;
    r.T_RB = inputs.B * inputs.read_rate_s_per_GB;
    r.T_WP_total = r.P_total * inputs.write_rate_s_per_GB;
    const auto times = cycle_times(r.T_RS, r.N_B, inputs.T_GB, r.T_WB, r.T_RB, r.T_WP_total);
    r.T_PG = times.pg;
    r.T_OTF = times.otf;
    r.otf_time_ratio = r.T_OTF / r.T_PG;

    r.disk = {inputs.D > r.P_total, r.Disk_OTF < r.Disk_PG};
    r.rw = {r.N_B > 1, r.N_RW_OTF < r.N_RW_PG};
    r.time = {r.P_total < inputs.D, r.T_OTF < r.T_PG};
    return r;
}

namespace {

std::string fixed(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string verdict_text(const Verdict& v) {
    std::string s = v.holds ? "holds" : "FAILS";
    if (!v.assumption) s += " (assumption not met, not asserted)";
    return s;
}

}  // namespace

std::string format_text(const CostReport& r) {
    char line[160];
    std::ostringstream out;
    auto row = [&](const char* name, const std::string& pg, const std::string& otf) {
        std::snprintf(line, sizeof line, "%-22s %16s %16s\n", name, pg.c_str(), otf.c_str());
        out << line;
    };
    row("quantity", "pre-generation", "on-the-fly");
    row("N_B", std::to_string(r.N_B), std::to_string(r.N_B));
    row("RAM per batch (GB)", fixed(r.RAM_B, 4), fixed(r.ram_otf_at_batch(r.N_B), 4));
    row("Disk (GB)", fixed(r.Disk_PG, 4), fixed(r.Disk_OTF, 4));
    row("disk r/w instances", std::to_string(r.N_RW_PG), std::to_string(r.N_RW_OTF));
    row("cycle time (s)", fixed(r.T_PG), fixed(r.T_OTF));
    out << "T_OTF / T_PG = " << fixed(r.otf_time_ratio, 4) << "\n";
    out << "Theorem 1 (disk): " << verdict_text(r.disk) << "\n";
    out << "Theorem 2 (r/w):  " << verdict_text(r.rw) << "\n";
    out << "Theorem 3 (time): " << verdict_text(r.time) << "\n";
    return out.str();
}

std::string format_csv(const CostReport& r) {
    std::ostringstream out;
    out << "N_B,RAM_B,RAM_OTF_final,P_total,Disk_PG,Disk_OTF,N_RW_PG,N_RW_OTF,T_RS,T_WB,T_RB,T_WP_total,"
           "T_PG,T_OTF,otf_time_ratio,disk_assumption,disk_holds,rw_assumption,rw_holds,time_assumption,"
           "time_holds\n";
    out << r.N_B << ',' << full(r.RAM_B) << ',' << full(r.ram_otf_at_batch(r.N_B)) << ',' << full(r.P_total) << ','
        << full(r.Disk_PG) << ',' << full(r.Disk_OTF) << ',' << r.N_RW_PG << ',' << r.N_RW_OTF << ','
        << full(r.T_RS) << ',' << full(r.T_WB) << ',' << full(r.T_RB) << ',' << full(r.T_WP_total) << ','
        << full(r.T_PG) << ',' << full(r.T_OTF) << ',' << full(r.otf_time_ratio) << ',' << r.disk.assumption
        << ',' << r.disk.holds << ',' << r.rw.assumption << ',' << r.rw.holds << ',' << r.time.assumption << ','
        << r.time.holds << '\n';
    return out.str();
}

}  // namespace otf::cost
