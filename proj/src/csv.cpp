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

#include "favprop/csv.hpp"

#include <cmath>
#include <cstdio>

namespace favprop
{

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_preamble(std::ostream &out, const ExperimentConfig &config)
{
    out << "# favprop " << FAVPROP_VERSION << '\n';
    out << "# config_hash " << config_hash(config) << '\n';
    out << "# seed " << config.seed << '\n';
}

void write_terms_csv(std::ostream &out, const ExperimentConfig &config, const TermReport &report)
{
    write_preamble(out, config);
    out << "k,l,term1,term2,term3,term4,total,mc_mean,mc_se,z\n";
    for (const auto &r : report.rows)
    {
        out << r.k + 1 << ',' << r.l + 1 << ',' << format_number(r.terms.term1) << ','
            << format_number(r.terms.term2) << ',' << format_number(r.terms.term3) << ','
            << format_number(r.terms.term4) << ',' << format_number(r.terms.total) << ','
            << format_number(r.mc_mean) << ',' << format_number(r.mc_se) << ',' << format_number(r.z) << '\n';
    }
}

void write_scaling_csv(std::ostream &out, const ExperimentConfig &config, const ScalingReport &report)
{
    write_preamble(out, config);
    out << "M,c1,c2,c3\n";
    for (std::size_t i = 0; i < report.m_values.size(); ++i)
        out << report.m_values[i] << ',' << format_number(report.c1_metric[i]) << ','
            << format_number(report.c2_metric[i]) << ',' << format_number(report.c3_metric[i]) << '\n';
    const auto cls = report.classification();
    const char *names[] = {"c1", "c2", "c3"};
    for (std::size_t c = 0; c < 3; ++c)
        out << "# slope " << names[c] << ' ' << format_number(report.fitted_slopes[c]) << ' ' << to_string(cls[c])
            << '\n';
}

void write_cdf_csv(std::ostream &out, const ExperimentConfig &config, const TrialEnsemble &ensemble)
{
    write_preamble(out, config);
    out << "value,prob\n";
    for (const auto &p : ensemble.cdf)
        out << format_number(p.value) << ',' << format_number(p.prob) << '\n';
}

void write_saturation_csv(std::ostream &out, const ExperimentConfig &config, const std::vector<SaturationRow> &rows)
{
    write_preamble(out, config);
    out << "M,mean_se,se_stderr\n";
    for (const auto &r : rows)
        out << r.m << ',' << format_number(r.mean_se) << ',' << format_number(r.se_stderr) << '\n';
}

void write_gram_csv(std::ostream &out, const ExperimentConfig &config, const std::vector<GramDeviation> &rows)
{
    write_preamble(out, config);
    out << "M,max_entry_msd,s1_var,s2_var,s3_var\n";
    for (const auto &r : rows)
        out << r.m << ',' << format_number(r.max_entry_msd) << ',' << format_number(r.s1_var) << ','
            << format_number(r.s2_var) << ',' << format_number(r.s3_var) << '\n';
}

} // namespace favprop
