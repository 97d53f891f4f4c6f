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

// favprop: run one experiment from a JSON config and write its CSV.

#include "favprop/config.hpp"
#include "favprop/csv.hpp"
#include "favprop/errors.hpp"
#include "favprop/experiments.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace
{

enum ExitCode
{
    kOk = 0,
    kConfig = 2,
    kNumerical = 3,
    kCheckFailed = 4,
};

struct Options
{
    std::string config;
    std::string out = "-";
    std::string baseline_out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    unsigned threads = 1;
    bool check = false;
};

void emit(const std::string &path, const std::string &text)
{
    if (path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
}

int run(favprop::ExperimentKind kind, const Options &opt)
{
    using namespace favprop;
    ExperimentConfig cfg = load_config(opt.config);
    if (cfg.experiment != kind)
        throw ConfigError("experiment", "config is for '" + std::string(to_string(cfg.experiment)) +
                                            "', subcommand is '" + std::string(to_string(kind)) + "'");
    if (opt.seed)
        cfg.seed = *opt.seed;
    if (opt.trials)
        cfg.trials = *opt.trials;
    validate(cfg);

    std::ostringstream csv;
    bool ok = true;
    switch (kind)
    {
    case ExperimentKind::Terms: {
        const TermReport report = run_term_validation(cfg, opt.threads);
        write_terms_csv(csv, cfg, report);
        ok = report.pass;
        break;
    }
    case ExperimentKind::Scaling:
        write_scaling_csv(csv, cfg, run_scaling_experiment(cfg, opt.threads));
        break;
    case ExperimentKind::Cdf: {
        if (!opt.baseline_out.empty())
            cfg.paired_baseline = true;
        const CdfResult res = run_cdf_experiment(cfg, opt.threads);
        write_cdf_csv(csv, cfg, res.ensemble);
        if (res.baseline && !opt.baseline_out.empty())
        {
            std::ostringstream base;
            write_cdf_csv(base, cfg, *res.baseline);
            emit(opt.baseline_out, base.str());
        }
        break;
    }
    case ExperimentKind::Saturation:
        write_saturation_csv(csv, cfg, run_saturation_sweep(cfg, opt.threads));
        break;
    case ExperimentKind::Gram: {
        const auto rows = run_gram_experiment(cfg, opt.threads);
        write_gram_csv(csv, cfg, rows);
        for (const auto &r : rows)
        {
            const double want = r.s1_var + r.s2_var + r.s3_var;
            if (!(std::abs(r.pair_msd - want) <= 4.0 * r.pair_msd_stderr))
            {
                std::cerr << "check: M=" << r.m << " pair msd " << r.pair_msd << " vs " << want << '\n';
                ok = false;
            }
        }
        break;
    }
    }
    emit(opt.out, csv.str());
    if (opt.check && !ok)
    {
        std::cerr << "favprop: acceptance check failed\n";
        return kCheckFailed;
    }
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"favprop: interference scaling experiments for massive MIMO in Ricean fading"};
    app.set_version_flag("--version", std::string(FAVPROP_VERSION));
    app.require_subcommand(1);

    Options opt;
    std::optional<favprop::ExperimentKind> chosen;
    for (auto kind : {favprop::ExperimentKind::Terms, favprop::ExperimentKind::Scaling, favprop::ExperimentKind::Cdf,
                      favprop::ExperimentKind::Saturation, favprop::ExperimentKind::Gram})
    {
        const std::string name(favprop::to_string(kind));
        auto *sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", opt.config, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "CSV output path ('-' for stdout)");
        sub->add_option("--seed", opt.seed, "override the config seed");
        sub->add_option("--trials", opt.trials, "override the trial count")->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
        if (kind == favprop::ExperimentKind::Terms || kind == favprop::ExperimentKind::Gram)
            sub->add_flag("--check", opt.check, "exit 4 when the Monte-Carlo check fails");
        if (kind == favprop::ExperimentKind::Cdf)
            sub->add_option("--baseline-out", opt.baseline_out, "also write the R = I paired baseline CDF here");
        sub->callback([&chosen, kind] { chosen = kind; });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfig;
    }

    try
    {
        return run(*chosen, opt);
    }
    catch (const favprop::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    catch (const favprop::ParameterError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    catch (const favprop::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
