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

#include "favprop/config.hpp"
#include "favprop/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace favprop
{

using nlohmann::json;

namespace
{

// Reads one JSON object, remembering which keys were consumed so leftovers can be rejected.
class ObjectReader
{
public:
    ObjectReader(const json &obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected a JSON object");
    }

    std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    const json *find(const std::string &key)
    {
        seen_.insert(key);
        const auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null())
            return nullptr;
        return &*it;
    }

    std::optional<double> number(const std::string &key)
    {
        const json *v = find(key);
        if (!v)
            return std::nullopt;
        if (!v->is_number())
            throw ConfigError(field(key), "expected a number");
        const double d = v->get<double>();
        if (!std::isfinite(d))
            throw ConfigError(field(key), "must be finite");
        return d;
    }

    std::optional<std::uint64_t> unsigned_integer(const std::string &key)
    {
        const json *v = find(key);
        if (!v)
            return std::nullopt;
        return as_unsigned(*v, field(key));
    }

    std::optional<std::string> string(const std::string &key)
    {
        const json *v = find(key);
        if (!v)
            return std::nullopt;
        if (!v->is_string())
            throw ConfigError(field(key), "expected a string");
        return v->get<std::string>();
    }

    std::optional<bool> boolean(const std::string &key)
    {
        const json *v = find(key);
        if (!v)
            return std::nullopt;
        if (!v->is_boolean())
            throw ConfigError(field(key), "expected true or false");
        return v->get<bool>();
    }

    void reject_unknown() const
    {
        for (const auto &[key, value] : obj_.items())
            if (!seen_.contains(key))
                throw ConfigError(field(key), "unknown key");
    }

    static std::uint64_t as_unsigned(const json &v, const std::string &where)
    {
        if (v.is_number_unsigned())
            return v.get<std::uint64_t>();
        if (v.is_number_integer())
        {
            if (v.get<std::int64_t>() < 0)
                throw ConfigError(where, "must be non-negative");
            return static_cast<std::uint64_t>(v.get<std::int64_t>());
        }
        throw ConfigError(where, "expected a non-negative integer");
    }

private:
    const json &obj_;
    std::string path_;
    std::set<std::string> seen_;
};

std::vector<double> number_list(const json &v, const std::string &where)
{
    std::vector<double> out;
    if (v.is_number())
    {
        out.push_back(v.get<double>());
    }
    else if (v.is_array())
    {
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if (!v[i].is_number())
                throw ConfigError(where + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
    }
    else
    {
        throw ConfigError(where, "expected a number or a list of numbers");
    }
    for (double d : out)
        if (!std::isfinite(d))
            throw ConfigError(where, "values must be finite");
    return out;
}

KFactorSpec parse_k_factor(const json &v, const std::string &where)
{
    ObjectReader r(v, where);
    KFactorSpec k;
    const auto mode = r.string("mode");
    if (!mode)
        throw ConfigError(r.field("mode"), "required");
    if (*mode == "zero")
    {
        k.mode = KFactorMode::Zero;
    }
    else if (*mode == "fixed")
    {
        k.mode = KFactorMode::Fixed;
        const auto value = r.number("value");
        if (!value)
            throw ConfigError(r.field("value"), "required for mode 'fixed'");
        k.value = *value;
    }
    else if (*mode == "uniform")
    {
        k.mode = KFactorMode::Uniform;
        const auto lo = r.number("min");
        const auto hi = r.number("max");
        if (!lo || !hi)
            throw ConfigError(where, "'min' and 'max' are required for mode 'uniform'");
        k.min = *lo;
        k.max = *hi;
    }
    else
    {
        throw ConfigError(r.field("mode"), "expected one of zero, fixed, uniform");
    }
    r.reject_unknown();
    if (k.value < 0.0 || k.min < 0.0 || k.max < k.min)
        throw ConfigError(where, "K-factors must be >= 0 with min <= max");
    return k;
}

ScenarioSpec parse_scenario(const json &v, const std::string &where)
{
    ObjectReader r(v, where);
    ScenarioSpec s;
    const auto kind = r.string("kind");
    if (!kind)
        throw ConfigError(r.field("kind"), "required");
    const auto parsed = scenario_kind_from_string(*kind);
    if (!parsed)
        throw ConfigError(r.field("kind"), "expected one of eigen_aligned, shared_spiked_covariance, los_aligned, "
                                           "los_near_aligned, iid");
    s.kind = *parsed;

    if (const json *k = r.find("k_factors"))
    {
        const auto list = number_list(*k, r.field("k_factors"));
        if (list.size() != 2)
            throw ConfigError(r.field("k_factors"), "expected exactly two values");
        s.k_factors = {list[0], list[1]};
    }
    s.gamma = r.number("gamma");
    const bool near = s.kind == ScenarioKind::LosNearAligned;
    if (near != s.gamma.has_value())
        throw ConfigError(r.field("gamma"), near ? "required for los_near_aligned" : "only valid for los_near_aligned");
    s.exponent = r.number("exponent").value_or(1.0);
    s.delta = deg_to_rad(r.number("delta_deg").value_or(60.0));
    s.alpha_phase = deg_to_rad(r.number("alpha_phase_deg").value_or(0.0));
    if (const auto t = r.number("theta_deg"))
        s.theta = deg_to_rad(*t);
    if (const auto t = r.number("theta2_deg"))
        s.theta_2 = deg_to_rad(*t);
    r.reject_unknown();

    try
    {
        validate(s);
    }
    catch (const ParameterError &e)
    {
        throw ConfigError(where, e.what());
    }
    return s;
}

json scenario_to_json(const ScenarioSpec &s)
{
    auto rad_to_deg = [](double r) { return r * 180.0 / kPi; };
    json j;
    j["kind"] = std::string(to_string(s.kind));
    j["k_factors"] = {s.k_factors.first, s.k_factors.second};
    j["gamma"] = s.gamma ? json(*s.gamma) : json(nullptr);
    j["exponent"] = s.exponent;
    j["delta_deg"] = rad_to_deg(s.delta);
    j["alpha_phase_deg"] = rad_to_deg(s.alpha_phase);
    j["theta_deg"] = s.theta ? json(rad_to_deg(*s.theta)) : json(nullptr);
    j["theta2_deg"] = s.theta_2 ? json(rad_to_deg(*s.theta_2)) : json(nullptr);
    return j;
}

std::vector<std::size_t> default_m(ExperimentKind kind)
{
    switch (kind)
    {
    case ExperimentKind::Saturation:
        return {32, 64, 128, 256, 512};
    case ExperimentKind::Scaling:
        return {64, 128, 256, 512, 1024};
    case ExperimentKind::Gram:
        return {64, 128, 256};
    default:
        return {100};
    }
}

} // namespace

std::string_view to_string(ExperimentKind kind)
{
    switch (kind)
    {
    case ExperimentKind::Cdf:
        return "cdf";
    case ExperimentKind::Saturation:
        return "saturation";
    case ExperimentKind::Terms:
        return "terms";
    case ExperimentKind::Scaling:
        return "scaling";
    case ExperimentKind::Gram:
        return "gram";
    }
    return "cdf";
}

std::optional<ExperimentKind> experiment_kind_from_string(std::string_view name)
{
    for (auto kind : {ExperimentKind::Cdf, ExperimentKind::Saturation, ExperimentKind::Terms, ExperimentKind::Scaling,
                      ExperimentKind::Gram})
        if (to_string(kind) == name)
            return kind;
    return std::nullopt;
}

double ExperimentConfig::delta_rad(std::size_t user) const
{
    return deg_to_rad(delta_deg.size() == 1 ? delta_deg.front() : delta_deg.at(user));
}

double ExperimentConfig::large_scale_for(std::size_t user) const
{
    return large_scale.empty() ? 1.0 : large_scale.at(user);
}

void validate(const ExperimentConfig &c)
{
    if (c.trials < 1)
        throw ConfigError("trials", "must be >= 1");
    if (c.l < 1)
        throw ConfigError("l", "must be >= 1");
    if (c.m.empty())
        throw ConfigError("m", "at least one antenna count is required");
    for (std::size_t m : c.m)
        if (m < 1)
            throw ConfigError("m", "antenna counts must be positive");
    for (std::size_t i = 1; i < c.m.size(); ++i)
        if (c.m[i] <= c.m[i - 1])
            throw ConfigError("m", "antenna counts must be strictly increasing");
    if (!(c.spacing_wavelengths > 0.0))
        throw ConfigError("spacing_wavelengths", "must be positive");
    if (c.delta_deg.size() != 1 && c.delta_deg.size() != c.l)
        throw ConfigError("delta_deg", "expected one value or one value per user");
    for (double d : c.delta_deg)
        if (!(d > 0.0) || d > 180.0)
            throw ConfigError("delta_deg", "angular spread must lie in (0, 180] degrees");
    if (!c.large_scale.empty())
    {
        if (c.large_scale.size() != c.l)
            throw ConfigError("large_scale", "expected one value per user");
        for (double d : c.large_scale)
            if (!(d > 0.0))
                throw ConfigError("large_scale", "values must be positive");
    }
    if (c.drop_count >= c.l)
        throw ConfigError("drop_count", "must be smaller than l");

    const bool single_m = c.experiment == ExperimentKind::Cdf || c.experiment == ExperimentKind::Terms;
    if (single_m && c.m.size() != 1)
        throw ConfigError("m", "this experiment takes a single antenna count");

    switch (c.experiment)
    {
    case ExperimentKind::Saturation:
        if (!c.scenario)
            throw ConfigError("scenario", "required for the saturation experiment");
        if (c.l != 2)
            throw ConfigError("l", "the saturation experiment is defined for two users");
        break;
    case ExperimentKind::Scaling:
        if (c.m.size() < 4)
            throw ConfigError("m", "the scaling experiment needs at least four antenna counts");
        break;
    case ExperimentKind::Terms:
        if (c.l < 2 && !c.scenario)
            throw ConfigError("l", "need at least two users");
        break;
    case ExperimentKind::Gram:
        if (c.trials < 100)
            throw ConfigError("trials", "the gram experiment needs at least 100 trials");
        break;
    case ExperimentKind::Cdf:
        break;
    }
    if (c.scenario && c.experiment == ExperimentKind::Cdf)
        throw ConfigError("scenario", "not used by the cdf experiment");
    if (c.scenario && c.experiment != ExperimentKind::Cdf && c.l != 2)
        throw ConfigError("l", "scenario experiments use exactly two users");
}

ExperimentConfig parse_config(const json &doc)
{
    ObjectReader r(doc, "");
    ExperimentConfig c;

    const auto kind = r.string("experiment");
    if (!kind)
        throw ConfigError("experiment", "required");
    const auto parsed_kind = experiment_kind_from_string(*kind);
    if (!parsed_kind)
        throw ConfigError("experiment", "expected one of cdf, saturation, terms, scaling, gram");
    c.experiment = *parsed_kind;

    c.m = default_m(c.experiment);
    if (const json *m = r.find("m"))
    {
        c.m.clear();
        if (m->is_array())
        {
            for (std::size_t i = 0; i < m->size(); ++i)
                c.m.push_back(ObjectReader::as_unsigned((*m)[i], "m[" + std::to_string(i) + "]"));
        }
        else
        {
            c.m.push_back(ObjectReader::as_unsigned(*m, "m"));
        }
    }

    const bool saturation = c.experiment == ExperimentKind::Saturation;
    const bool has_scenario = doc.contains("scenario") && !doc["scenario"].is_null();
    c.l = r.unsigned_integer("l").value_or(saturation || has_scenario ? 2 : 10);
    c.p_u_db = r.number("p_u_db").value_or(0.0);
    c.p_u = std::pow(10.0, c.p_u_db / 10.0);
    c.spacing_wavelengths = r.number("spacing_wavelengths").value_or(0.5);

    if (const auto cov = r.string("covariance"))
    {
        if (*cov == "identity")
            c.covariance = CovarianceModel::Identity;
        else if (*cov == "one_ring")
            c.covariance = CovarianceModel::OneRing;
        else
            throw ConfigError("covariance", "expected identity or one_ring");
    }
    if (const json *d = r.find("delta_deg"))
        c.delta_deg = number_list(*d, "delta_deg");
    if (const json *k = r.find("k_factor"))
        c.k_factor = parse_k_factor(*k, "k_factor");

    if (const json *ls = r.find("large_scale"))
    {
        if (ls->is_string())
        {
            if (ls->get<std::string>() != "unit")
                throw ConfigError("large_scale", "expected \"unit\" or a list of numbers");
        }
        else
        {
            c.large_scale = number_list(*ls, "large_scale");
        }
    }
    else if (saturation)
    {
        c.large_scale = {0.749, 0.546};
    }

    if (const json *s = r.find("scenario"))
        c.scenario = parse_scenario(*s, "scenario");

    c.drop_count = r.unsigned_integer("drop_count").value_or(0);
    if (const auto metric = r.string("drop_metric"))
    {
        const auto m = drop_metric_from_string(*metric);
        if (!m)
            throw ConfigError("drop_metric", "expected term2 or total");
        c.drop.metric = *m;
    }
    if (const auto rule = r.string("drop_rule"))
    {
        const auto d = drop_rule_from_string(*rule);
        if (!d)
            throw ConfigError("drop_rule", "expected row_sum or pairwise_max");
        c.drop.rule = *d;
    }
    c.paired_baseline = r.boolean("paired_baseline").value_or(false);
    c.trials = r.unsigned_integer("trials").value_or(c.experiment == ExperimentKind::Terms ? 10000 : 1000);
    c.seed = r.unsigned_integer("seed").value_or(1);
    r.reject_unknown();

    validate(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("<file>", "cannot open " + path.string());
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

json to_json(const ExperimentConfig &c)
{
    json j;
    j["experiment"] = std::string(to_string(c.experiment));
    j["m"] = c.m;
    j["l"] = c.l;
    j["p_u_db"] = c.p_u_db;
    j["spacing_wavelengths"] = c.spacing_wavelengths;
    j["covariance"] = c.covariance == CovarianceModel::Identity ? "identity" : "one_ring";
    j["delta_deg"] = c.delta_deg;
    switch (c.k_factor.mode)
    {
    case KFactorMode::Zero:
        j["k_factor"] = {{"mode", "zero"}};
        break;
    case KFactorMode::Fixed:
        j["k_factor"] = {{"mode", "fixed"}, {"value", c.k_factor.value}};
        break;
    case KFactorMode::Uniform:
        j["k_factor"] = {{"mode", "uniform"}, {"min", c.k_factor.min}, {"max", c.k_factor.max}};
        break;
    }
    j["large_scale"] = c.large_scale.empty() ? json("unit") : json(c.large_scale);
    j["scenario"] = c.scenario ? scenario_to_json(*c.scenario) : json(nullptr);
    j["drop_count"] = c.drop_count;
    j["drop_metric"] = std::string(to_string(c.drop.metric));
    j["drop_rule"] = std::string(to_string(c.drop.rule));
    j["paired_baseline"] = c.paired_baseline;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    return j;
}

std::string config_hash(const ExperimentConfig &config)
{
    const std::string text = to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text)
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace favprop
