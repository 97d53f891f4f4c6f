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

#include "catch_amalgamated.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace
{

fs::path scratch()
{
    const fs::path dir = fs::temp_directory_path() / "favprop_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string &name, const std::string &body)
{
    const fs::path p = scratch() / name;
    std::ofstream(p) << body;
    return p;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string &args)
{
    const std::string cmd = std::string(FAVPROP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("CLI - writes the CSV and honours overrides", "[cli]")
{
    const fs::path cfg = write_config("cdf.json", R"({"experiment": "cdf", "m": 16, "l": 3, "trials": 20})");
    const fs::path out = scratch() / "cdf.csv";
    REQUIRE(run("cdf --config " + cfg.string() + " --out " + out.string() + " --seed 42") == 0);
    const std::string text = slurp(out);
    CHECK_THAT(text, ContainsSubstring("# seed 42\n"));
    CHECK_THAT(text, ContainsSubstring("\nvalue,prob\n"));

    const fs::path more = scratch() / "cdf_more.csv";
    REQUIRE(run("cdf --config " + cfg.string() + " --out " + more.string() + " --trials 30") == 0);
    CHECK(slurp(more) != slurp(out));
}

TEST_CASE("CLI - output is byte-identical across thread counts", "[cli]")
{
    const fs::path cfg = write_config("terms.json", R"({"experiment": "terms", "m": 16, "l": 3, "trials": 2000,
        "k_factor": {"mode": "fixed", "value": 1}})");
    const fs::path a = scratch() / "t1.csv", b = scratch() / "t3.csv";
    REQUIRE(run("terms --config " + cfg.string() + " --out " + a.string() + " --threads 1") == 0);
    REQUIRE(run("terms --config " + cfg.string() + " --out " + b.string() + " --threads 3") == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_THAT(slurp(a), ContainsSubstring("\nk,l,term1,term2,term3,term4,total,mc_mean,mc_se,z\n"));
}

TEST_CASE("CLI - cdf baseline output", "[cli]")
{
    const fs::path cfg = write_config("cdf_base.json", R"({"experiment": "cdf", "m": 16, "l": 4, "drop_count": 1,
        "trials": 10})");
    const fs::path out = scratch() / "main.csv", base = scratch() / "base.csv";
    REQUIRE(run("cdf --config " + cfg.string() + " --out " + out.string() + " --baseline-out " + base.string()) == 0);
    CHECK_THAT(slurp(base), ContainsSubstring("\nvalue,prob\n"));
}

TEST_CASE("CLI - exit codes", "[cli]")
{
    const fs::path out = scratch() / "x.csv";
    // config validation
    const fs::path bad = write_config("bad.json", R"({"experiment": "cdf", "trails": 10})");
    CHECK(run("cdf --config " + bad.string() + " --out " + out.string()) == 2);
    const fs::path broken = write_config("broken.json", "{not json");
    CHECK(run("cdf --config " + broken.string() + " --out " + out.string()) == 2);
    CHECK(run("cdf --config " + (scratch() / "missing.json").string()) == 2);
    const fs::path other = write_config("gram.json", R"({"experiment": "gram", "m": [16], "l": 2, "trials": 200})");
    CHECK(run("terms --config " + other.string() + " --out " + out.string()) == 2);

    // numerical failure: finite transmit power whose products overflow
    const fs::path hot = write_config("hot.json", R"({"experiment": "cdf", "m": 8, "l": 2, "trials": 2,
        "p_u_db": 3080})");
    CHECK(run("cdf --config " + hot.string() + " --out " + out.string()) == 3);

    // passing and failing checks
    CHECK(run("gram --config " + other.string() + " --out " + out.string() + " --check") == 0);
    const fs::path tiny = write_config("tiny.json", R"({"experiment": "terms", "m": 8, "l": 10, "trials": 2})");
    CHECK(run("terms --config " + tiny.string() + " --out " + out.string()) == 0);
    CHECK(run("terms --config " + tiny.string() + " --out " + out.string() + " --check") == 4);
}
