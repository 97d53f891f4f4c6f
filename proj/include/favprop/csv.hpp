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

#ifndef FAVPROP_CSV_HPP
#define FAVPROP_CSV_HPP

#include "favprop/experiments.hpp"

#include <ostream>
#include <string>

namespace favprop
{

// Shortest round-trip text for a double ("%.17g"); inf / nan spelled as such.
std::string format_number(double value);

// Comment lines that open every CSV: tool version, config hash, seed.
void write_preamble(std::ostream &out, const ExperimentConfig &config);

// k and l are written 1-based.
void write_terms_csv(std::ostream &out, const ExperimentConfig &config, const TermReport &report);

// Fitted slopes and classes follow the rows as comment lines.
void write_scaling_csv(std::ostream &out, const ExperimentConfig &config, const ScalingReport &report);

void write_cdf_csv(std::ostream &out, const ExperimentConfig &config, const TrialEnsemble &ensemble);

void write_saturation_csv(std::ostream &out, const ExperimentConfig &config, const std::vector<SaturationRow> &rows);

void write_gram_csv(std::ostream &out, const ExperimentConfig &config, const std::vector<GramDeviation> &rows);

} // namespace favprop

#endif
