#include <chrono>
#include <optional>

#include "odwf/analytics.hpp"
#include "odwf/engine.hpp"
#include "odwf/experiment.hpp"
#include "odwf/parallel.hpp"
#include "odwf/relay_banks.hpp"

namespace odwf::experiment {

namespace {

enum Column : std::size_t {
    kRow, kMode, kScenario, kScheme, kK, kN, kP, kBeta, kAlpha, kM, kQ, kR,
    kWarmup, kMeasure, kReplications, kSeed, kRateBits, kStatus,
    kSimT, kSimTHw, kSimD, kSimDHw, kSimPrd, kSimPrdHw, kSimPsr, kSimPsrHw,
    kSimOcc, kSimOccHw, kSimUndelivered,
    kPredT, kPredTMax, kPredD, kPredPrd, kPredOcc, kPredDelta, kPredC,
    kPredTFiniteK, kPredBetaOpt, kPredFlags,
    kOverrides, kWallTime, kColumnCount
};

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

void put(std::vector<Cell>& row, Column c, const std::optional<double>& v) {
    if (v) {
        row[c] = *v;
    }
}

analytics::Prediction predict(const SystemConfig& cfg) {
    const double K = cfg.K;
    if (cfg.scenario == Scenario::Fixed) {
        return cfg.scheme == Scheme::Odwf ? analytics::odwf_fixed_prediction(K, cfg.N, cfg.p, cfg.beta)
                                          : analytics::baseline_fixed_prediction(K, cfg.N, cfg.p);
    }
    return cfg.scheme == Scheme::Odwf
               ? analytics::odwf_mobile_prediction(K, cfg.N, cfg.alpha, cfg.beta, cfg.q)
               : analytics::baseline_mobile_prediction(K, cfg.N, cfg.alpha, cfg.M, cfg.q);
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) {
            out += ';';
        }
        out += p;
    }
    return out;
}

std::vector<Cell> run_point(const ExperimentSpec& spec, const SystemConfig& cfg, std::size_t index,
                            const std::string& overrides) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Cell> row(kColumnCount);
    const bool mobile = cfg.scenario == Scenario::Mobile;

    row[kRow] = static_cast<std::int64_t>(index);
    row[kMode] = std::string(to_string(spec.mode));
    row[kScenario] = std::string(to_string(cfg.scenario));
    row[kScheme] = std::string(to_string(cfg.scheme));
    row[kK] = static_cast<std::int64_t>(cfg.K);
    row[kN] = static_cast<std::int64_t>(cfg.N);
    row[kP] = cfg.p;
    row[kBeta] = cfg.beta;
    if (mobile) {
        row[kAlpha] = cfg.alpha;
        row[kM] = static_cast<std::int64_t>(cfg.M);
        row[kQ] = cfg.q;
        row[kR] = cfg.R;
    }
    row[kWarmup] = as_int(cfg.effective_warmup());
    row[kMeasure] = as_int(cfg.measure_frames);
    row[kReplications] = static_cast<std::int64_t>(cfg.replications);
    row[kSeed] = as_int(cfg.seed);
    row[kRateBits] = cfg.rate().rate();
    if (!overrides.empty()) {
        row[kOverrides] = overrides;
    }

    std::string status = "ok";
    if (spec.mode != Mode::Predict) {
        try {
            const auto s = engine::run_replicated(cfg, 1);
            row[kSimT] = s.throughput.mean;
            row[kSimTHw] = s.throughput.half_width;
            if (s.delay) {
                row[kSimD] = s.delay->mean;
                row[kSimDHw] = s.delay->half_width;
            }
            row[kSimPrd] = s.p_rd.mean;
            row[kSimPrdHw] = s.p_rd.half_width;
            row[kSimPsr] = s.p_sr.mean;
            row[kSimPsrHw] = s.p_sr.half_width;
            row[kSimOcc] = s.occupancy.mean;
            row[kSimOccHw] = s.occupancy.half_width;
            row[kSimUndelivered] = as_int(s.undelivered);
        } catch (const protocol::BufferGuardError&) {
            status = "failed:buffer_guard";
        }
    }
    if (spec.mode != Mode::Simulate) {
        try {
            const auto pred = predict(cfg);
            row[kPredT] = pred.T;
            row[kPredTMax] = pred.T_max;
            row[kPredD] = pred.D;
            put(row, kPredPrd, pred.P_RD);
            put(row, kPredOcc, pred.occupancy_alpha);
            put(row, kPredDelta, pred.delta);
            put(row, kPredC, pred.c);
            put(row, kPredTFiniteK, pred.T_finite_k);
            put(row, kPredBetaOpt, pred.beta_opt);
            row[kPredFlags] = join(pred.flags);
        } catch (const std::logic_error&) {
            if (status == "ok") {
                status = "failed:prediction_domain";
            }
        }
    }
    row[kStatus] = status;
    if (spec.record_wall_time) {
        row[kWallTime] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return row;
}

}  // namespace

const std::vector<std::string>& columns() {
    static const std::vector<std::string> names{
        "row", "mode", "scenario", "scheme", "K", "N", "p", "beta", "alpha", "M", "q", "R",
        "warmup_frames", "measure_frames", "replications", "seed", "rate_bits", "status",
        "sim_T", "sim_T_hw", "sim_D", "sim_D_hw", "sim_P_RD", "sim_P_RD_hw", "sim_P_SR",
        "sim_P_SR_hw", "sim_occupancy", "sim_occupancy_hw", "sim_undelivered",
        "pred_T", "pred_T_max", "pred_D", "pred_P_RD", "pred_occupancy", "pred_delta", "pred_c",
        "pred_T_finite_k", "pred_beta_opt", "pred_flags", "overrides", "wall_time_s"};
    return names;
}

ResultTable run_experiment(const ExperimentSpec& spec) {
    const auto points = spec.plan();
    std::string overrides;
    for (const auto& [key, value] : spec.overrides) {
        if (!overrides.empty()) {
            overrides += ';';
        }
        overrides += key + '=' + value;
    }
    ResultTable table;
    table.rows.resize(points.size());
    parallel_for(points.size(), spec.threads, [&](std::size_t i) {
        table.rows[i] = run_point(spec, points[i], i, overrides);
    });
    return table;
}

}  // namespace odwf::experiment
