/*
   Copyright 2026 The slabrte Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "slabrte/app.hpp"

int main(int argc, char** argv)
{
    CLI::App cli{"Slab radiative transfer: solve, verify, criticality, uq"};
    cli.require_subcommand(1);

    std::string config;
    std::string out = ".";
    for (const char* name : {"solve", "verify", "criticality", "uq"}) {
        auto* sub = cli.add_subcommand(name);
        sub->add_option("--config", config, "JSON configuration file")
            ->required();
        sub->add_option("--out", out, "output directory");
    }

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? 0 : slabrte::app::kConfigError;
    }
    const std::string command = cli.get_subcommands().front()->get_name();
    return slabrte::app::run_command(command, config, out, std::cout, std::cerr);
}
