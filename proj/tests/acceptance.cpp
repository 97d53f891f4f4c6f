// SPDX-License-Identifier: Apache-2.0
//
// favprop: interference scaling analysis for massive MIMO in Ricean fading
// Copyright (C) 2026 The favprop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Acceptance suite: criteria 1-10, one PASS/FAIL line each. Exit status 1 if any fail.

#include "favprop/channel.hpp"
#include "favprop/config.hpp"
#include "favprop/csv.hpp"
#include "favprop/experiments.hpp"
#include "favprop/interference.hpp"
#include "favprop/performance.hpp"
#include "favprop/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace favprop;

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// large-scale gains of the ten-user CDF setup.
const std::vector<double> kTenUserGains{0.749, 0.546, 0.425, 0.635, 0.468, 0.31, 0.64, 0.757, 0.695, 0.515};

unsigned g_threads = 0;

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string &what)
    {
        if (!ok)
        {
            pass = false;
            failures.push_back(what);
        }
    }
};

// Random Hermitian PSD matrix of trace M: A A^H with A M x rank.
ComplexMatrix random_wishart(std::size_t m, std::size_t rank, RngStream &rng)
{
    ComplexMatrix a(m, rank);
    for (Eigen::Index c = 0; c < a.cols(); ++c)
        rng.fill_complex_normal(a.col(c));
    ComplexMatrix r = a * a.adjoint();
    r *= static_cast<double>(m) / r.trace().real();
    return hermitian_part(r);
}

ComplexMatrix random_covariance(std::size_t m, RngStream &rng)
{
    if (rng.uniform() < 0.5)
        return one_ring_covariance({m, 0.5}, deg_to_rad(rng.uniform(1.0, 90.0)), rng.uniform(0.0, 2.0 * kPi));
    const auto rank = static_cast<std::size_t>(1 + std::floor(rng.uniform(0.0, static_cast<double>(m))));
    return random_wishart(m, rank, rng);
}

// 1. Closed-form mean interference against Monte-Carlo.
Outcome criterion_1()
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (std::size_t g = 0; g < 20; ++g)
    {
        RngStream geo(20240, kGeometryStream + g);
        const double delta = deg_to_rad(g % 2 == 0 ? 10.0 : 60.0);
        const ArrayGeometry geom{64, 0.5};
        std::vector<double> angles(4), ks(4);
        for (auto &a : angles)
            a = geo.uniform(0.0, 2.0 * kPi);
        for (auto &k : ks)
            k = geo.uniform(0.0, 2.0);
        std::vector<UserProfile> users;
        for (std::size_t u = 0; u < 4; ++u)
            users.push_back(one_ring_user(geom, delta, angles[u], ks[u], ula_los(geom, angles[u])));

        const TermReport rep = validate_terms(users, 200000, 1000 + g, g_threads);
        for (const auto &row : rep.rows)
            worst = std::max(worst, std::abs(row.z));
        out.require(rep.pass, "geometry " + std::to_string(g));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.detail << "max |z| = " << worst << " over 120 pairs, " << secs << " s";
    out.require(secs <= 300.0, "runtime over 5 min");
    return out;
}

// 2. Aligned LoS: term3 / M^2 = 1/4 with K1 = K2 = 1.
Outcome criterion_2()
{
    Outcome out;
    double worst = 0.0;
    for (std::size_t m : {16, 100, 1024})
    {
        auto [u1, u2] = build_scenario_3({m, 0.5}, 0.37, deg_to_rad(40.0), {1.0, 1.0}, deg_to_rad(60.0));
        const double v = mean_interference(u1, u2).term3 / (static_cast<double>(m) * static_cast<double>(m));
        worst = std::max(worst, std::abs(v - 0.25));
    }
    out.detail << "max |term3/M^2 - 0.25| = " << worst;
    out.require(worst <= 1e-12, "tolerance 1e-12");
    return out;
}

// 3. Near-aligned LoS limit and its classification.
Outcome criterion_3()
{
    Outcome out;
    const double limit = 4.0 / (kPi * kPi);
    const std::size_t m = 100000;
    const ArrayGeometry big{m, 0.5};
    const double theta_l = std::asin(1.0 / static_cast<double>(m));
    const ComplexVector hk = ula_los(big, 0.0);
    const ComplexVector hl = ula_los(big, theta_l);
    const double metric = std::norm(hl.dot(hk)) / (static_cast<double>(m) * static_cast<double>(m));
    out.detail << "metric(M=1e5) = " << std::setprecision(9) << metric << ", 4/pi^2 = " << limit;
    out.require(std::abs(metric - limit) <= 1e-3, "limit within 1e-3");
    out.require(std::abs(scenario_4_limit(1.0, 0.5, {kInf, kInf}) - limit) <= 1e-15, "closed-form limit");

    const UserPairFactory factory = [](std::size_t mm) {
        return build_scenario_4({mm, 0.5}, 0.4, 1.0, {1.0, 1.0}, deg_to_rad(60.0));
    };
    const ScalingReport rep = scaling_report(factory, {64, 128, 256, 512, 1024}, g_threads);
    const ScalingClass c3 = rep.classification()[2];
    out.detail << ", c3 slope " << std::setprecision(4) << rep.fitted_slopes[2] << " (" << to_string(c3) << ")";
    out.require(c3 == ScalingClass::NonVanishing, "c3 non-vanishing");
    return out;
}

// 4. C2 law: 1/M for i.i.d., non-vanishing 1/4 for the shared spiked covariance.
Outcome criterion_4()
{
    Outcome out;
    const std::vector<std::size_t> grid{64, 128, 256, 512, 1024};

    const UserPairFactory iid = [](std::size_t m) {
        ScenarioSpec spec;
        spec.kind = ScenarioKind::Iid;
        RngStream rng(4, kGeometryStream);
        return draw_scenario_pair(spec, {m, 0.5}, rng);
    };
    const ScalingReport a = scaling_report(iid, grid, g_threads);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(a.c2_metric[i] * static_cast<double>(grid[i]) - 1.0));
    out.detail << "iid: max |c2*M - 1| = " << worst << ", slope " << std::setprecision(6) << a.fitted_slopes[1];
    out.require(worst <= 1e-12, "c2 = 1/M");
    out.require(std::abs(a.fitted_slopes[1] + 1.0) <= 0.01, "slope -1 +- 0.01");

    const UserPairFactory spiked = [](std::size_t m) { return build_scenario_2({m, 0.5}, {1.0, 1.0}, 0.3, 2.1); };
    const ScalingReport b = scaling_report(spiked, grid, g_threads);
    const double at_1024 = b.c2_metric.back();
    const ScalingClass cls = b.classification()[1];
    out.detail << "; spiked: c2(1024) = " << at_1024 << " (" << to_string(cls) << ")";
    out.require(std::abs(at_1024 - 0.25) <= 0.02 * 0.25, "c2(1024) within 2% of 0.25");
    out.require(cls == ScalingClass::NonVanishing, "non-vanishing");
    return out;
}

// 5. Gram mean-square convergence in the i.i.d. case.
Outcome criterion_5()
{
    Outcome out;
    std::vector<double> msd;
    for (std::size_t m : {64, 128, 256})
    {
        const ArrayGeometry geom{m, 0.5};
        const std::vector<UserProfile> users{identity_user(0.0, ula_los(geom, 0.3)),
                                             identity_user(0.0, ula_los(geom, 1.9))};
        const GramDeviation dev = gram_deviation(users, 10000, 55, m << 32, g_threads);
        const double inv = 1.0 / static_cast<double>(m);
        out.require(std::abs(dev.s3_var - inv) <= 1e-15, "s3_var = 1/M at M=" + std::to_string(m));
        const double z = (dev.max_entry_msd - inv) / dev.max_entry_stderr;
        out.require(std::abs(z) <= 4.0, "msd within 4 SE at M=" + std::to_string(m));
        out.detail << "M=" << m << " msd*M=" << std::setprecision(4) << dev.max_entry_msd * static_cast<double>(m)
                   << " z=" << z << "; ";
        msd.push_back(dev.max_entry_msd);
    }
    for (std::size_t i = 0; i + 1 < msd.size(); ++i)
    {
        const double ratio = msd[i + 1] / msd[i];
        out.detail << "ratio " << ratio << " ";
        out.require(ratio >= 0.4 && ratio <= 0.6, "ratio in [0.4, 0.6]");
    }
    return out;
}

// 6. Eigen-expansion identity.
Outcome criterion_6()
{
    Outcome out;
    RngStream rng(66, 0);
    const std::size_t m = 128;
    double worst_id = 0.0, worst_norm = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        const ComplexMatrix r = random_covariance(m, rng);
        const ComplexVector h = ula_los({m, 0.5}, rng.uniform(0.0, 2.0 * kPi));
        const AlignmentProfile prof = alignment_profile(h, r);
        const double direct = h.dot(r * h).real() / (static_cast<double>(m) * static_cast<double>(m));
        worst_id = std::max(worst_id, std::abs(direct - prof.weighted_energy()));
        worst_norm = std::max(worst_norm, std::abs(prof.betas.squaredNorm() - 1.0));
    }
    out.detail << "max identity error " << worst_id << ", max |sum|beta|^2 - 1| " << worst_norm;
    out.require(worst_id <= 1e-9, "identity");
    out.require(worst_norm <= 1e-9, "unit norm");
    return out;
}

// 7. Rayleigh-Ritz sandwich.
Outcome criterion_7()
{
    Outcome out;
    RngStream rng(77, 0);
    std::size_t violations = 0;
    double max_upper = 0.0;
    for (std::size_t m : {16, 64})
        for (int i = 0; i < 1000; ++i)
        {
            const ComplexMatrix r = random_covariance(m, rng);
            const ComplexVector h = ula_los({m, 0.5}, rng.uniform(0.0, 2.0 * kPi));
            const RitzBounds b = ritz_bounds(h, r);
            const double q = h.dot(r * h).real() / (static_cast<double>(m) * static_cast<double>(m));
            const double tol = 1e-12;
            if (q < b.lower - tol || q > b.upper + tol || b.upper > 1.0 + tol)
                ++violations;
            max_upper = std::max(max_upper, b.upper);
        }
    out.detail << violations << " violations in 2000 instances, max upper " << max_upper;
    out.require(violations == 0, "sandwich");
    return out;
}

ExperimentConfig ten_user_cdf_config(CovarianceModel cov)
{
    ExperimentConfig c;
    c.experiment = ExperimentKind::Cdf;
    c.m = {100};
    c.l = 10;
    c.covariance = cov;
    c.delta_deg = {10.0};
    c.k_factor.mode = KFactorMode::Zero;
    c.large_scale = kTenUserGains;
    c.trials = 1000;
    c.seed = 8;
    return c;
}

// 8. Correlated-fading tail gap, its reduction by dropping, and i.i.d. concentration.
Outcome criterion_8()
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    const CdfResult case1 = run_cdf_experiment(ten_user_cdf_config(CovarianceModel::Identity), g_threads);
    const CdfResult case2 = run_cdf_experiment(ten_user_cdf_config(CovarianceModel::OneRing), g_threads);
    ExperimentConfig dropped_cfg = ten_user_cdf_config(CovarianceModel::OneRing);
    dropped_cfg.drop_count = 2;
    dropped_cfg.paired_baseline = true;
    const CdfResult dropped = run_cdf_experiment(dropped_cfg, g_threads);

    const double q1 = case1.ensemble.quantile(0.05);
    const double q2 = case2.ensemble.quantile(0.05);
    const double gap = q1 - q2;
    const double gap_dropped = dropped.baseline->quantile(0.05) - dropped.ensemble.quantile(0.05);
    const double conc = case1.ensemble.std_dev / case1.ensemble.mean;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    out.detail << std::setprecision(5) << "q05 case1 " << q1 << ", case2 " << q2 << ", gap " << gap
               << ", gap after drop " << gap_dropped << ", case1 std/mean " << conc << ", " << secs << " s";
    out.require(q2 < q1, "(i) case-2 tail below case-1");
    out.require(gap > 0.0 && gap_dropped <= 0.5 * gap, "(ii) gap shrinks by >= 50%");
    out.require(conc < 0.1, "(iii) concentration");
    out.require(secs <= 600.0, "runtime over 10 min");
    return out;
}

// Trials per M for the saturation sweep.
constexpr std::size_t kSaturationTrials = 300;

std::vector<SaturationRow> saturation(ScenarioKind kind)
{
    ExperimentConfig c;
    c.experiment = ExperimentKind::Saturation;
    c.m = {32, 64, 128, 256, 512};
    c.l = 2;
    c.large_scale = {0.749, 0.546};
    ScenarioSpec spec;
    spec.kind = kind;
    spec.k_factors = {1.0, 1.0};
    spec.delta = deg_to_rad(60.0);
    c.scenario = spec;
    c.trials = kSaturationTrials;
    c.seed = 9;
    return run_saturation_sweep(c, g_threads);
}

double se_at(const std::vector<SaturationRow> &rows, std::size_t m)
{
    for (const auto &r : rows)
        if (r.m == m)
            return r.mean_se;
    return std::numeric_limits<double>::quiet_NaN();
}

// 9. MRC saturation in the adversarial scenarios.
Outcome criterion_9()
{
    Outcome out;
    const std::pair<ScenarioKind, const char *> kinds[] = {{ScenarioKind::EigenAligned, "S1"},
                                                           {ScenarioKind::SharedSpikedCovariance, "S2"},
                                                           {ScenarioKind::LosAligned, "S3"},
                                                           {ScenarioKind::Iid, "iid"}};
    std::vector<double> at512;
    out.detail << std::setprecision(4);
    for (const auto &[kind, name] : kinds)
    {
        const auto rows = saturation(kind);
        const double growth = se_at(rows, 256) - se_at(rows, 128);
        out.detail << name << ":";
        for (const auto &r : rows)
            out.detail << ' ' << r.mean_se;
        out.detail << " (d=" << growth << ") ";
        if (kind == ScenarioKind::Iid)
            out.require(growth > 0.5, std::string(name) + " grows > 0.5 bit");
        else
            out.require(growth < 0.1, std::string(name) + " saturates");
        at512.push_back(se_at(rows, 512));
    }
    out.require(at512[2] < at512[0] && at512[2] < at512[1], "S3 lowest at M=512");
    return out;
}

template <typename Run>
bool same_bytes(Run run)
{
    return run(1) == run(4);
}

// 10. Byte-identical CSV for different worker counts.
Outcome criterion_10()
{
    Outcome out;
    ExperimentConfig terms;
    terms.experiment = ExperimentKind::Terms;
    terms.m = {32};
    terms.l = 3;
    terms.k_factor = {KFactorMode::Uniform, 0.0, 0.0, 2.0};
    terms.trials = 3000;
    terms.seed = 10;
    out.require(same_bytes([&](unsigned t) {
                    std::ostringstream s;
                    write_terms_csv(s, terms, run_term_validation(terms, t));
                    return s.str();
                }),
                "terms");

    ExperimentConfig scaling;
    scaling.experiment = ExperimentKind::Scaling;
    scaling.m = {16, 32, 64, 128};
    scaling.l = 2;
    ScenarioSpec s3;
    s3.kind = ScenarioKind::LosAligned;
    s3.delta = deg_to_rad(30.0);
    scaling.scenario = s3;
    scaling.seed = 10;
    out.require(same_bytes([&](unsigned t) {
                    std::ostringstream s;
                    write_scaling_csv(s, scaling, run_scaling_experiment(scaling, t));
                    return s.str();
                }),
                "scaling");

    ExperimentConfig cdf;
    cdf.experiment = ExperimentKind::Cdf;
    cdf.m = {32};
    cdf.l = 4;
    cdf.drop_count = 1;
    cdf.trials = 64;
    cdf.seed = 10;
    out.require(same_bytes([&](unsigned t) {
                    std::ostringstream s;
                    write_cdf_csv(s, cdf, run_cdf_experiment(cdf, t).ensemble);
                    return s.str();
                }),
                "cdf");

    ExperimentConfig sat;
    sat.experiment = ExperimentKind::Saturation;
    sat.m = {16, 32};
    sat.l = 2;
    ScenarioSpec s1;
    s1.kind = ScenarioKind::EigenAligned;
    s1.delta = deg_to_rad(60.0);
    sat.scenario = s1;
    sat.trials = 40;
    sat.seed = 10;
    out.require(same_bytes([&](unsigned t) {
                    std::ostringstream s;
                    write_saturation_csv(s, sat, run_saturation_sweep(sat, t));
                    return s.str();
                }),
                "saturation");

    ExperimentConfig gram;
    gram.experiment = ExperimentKind::Gram;
    gram.m = {16, 32};
    gram.l = 3;
    gram.trials = 300;
    gram.seed = 10;
    out.require(same_bytes([&](unsigned t) {
                    std::ostringstream s;
                    write_gram_csv(s, gram, run_gram_experiment(gram, t));
                    return s.str();
                }),
                "gram");
    out.detail << "terms, scaling, cdf, saturation, gram at 1 vs 4 workers";
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    if (argc > 1)
        g_threads = static_cast<unsigned>(std::stoul(argv[1]));

    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"mean interference closed form vs Monte-Carlo", criterion_1},
        {"aligned LoS term3/M^2 = 1/4", criterion_2},
        {"near-aligned LoS limit 4/pi^2", criterion_3},
        {"trace-product scaling law", criterion_4},
        {"Gram mean-square convergence", criterion_5},
        {"eigen-expansion identity", criterion_6},
        {"Rayleigh-Ritz sandwich", criterion_7},
        {"correlated-fading capacity tail and user dropping", criterion_8},
        {"MRC spectral efficiency saturation", criterion_9},
        {"thread-count determinism", criterion_10},
    };

    int failed = 0;
    int index = 0;
    for (const auto &[name, run] : criteria)
    {
        ++index;
        Outcome o;
        try
        {
            o = run();
        }
        catch (const std::exception &e)
        {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << index << ": " << name << " -- "
                  << o.detail.str();
        for (const auto &f : o.failures)
            std::cout << " [failed: " << f << "]";
        std::cout << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
