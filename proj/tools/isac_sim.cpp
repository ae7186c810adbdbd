// SPDX-License-Identifier: Apache-2.0
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

// isac_sim: command-line front end of the ISAC channel simulator.
//
//   isac_sim validate --scenario my.json
//   isac_sim ccf --component comm_static --component comm_mobile --t 2 --N-mc 5000 --out results
//   isac_sim fig3 --out results

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "isac/cli.hpp"

int main(int argc, char** argv)
{
	isac::cli::RunSpec spec;
	std::string command;
	std::string scenario;
	double t = 0.0;
	std::size_t n_mc = 0;
	std::uint64_t seed = 0;
	std::string ensemble = "phases";

	CLI::App app{"Geometry-based ISAC vehicular channel simulator"};
	app.add_option("command", command, "validate | cir | ccf | acf | freq | xcorr | fig2 | fig3")
		->required()
		->check(CLI::IsMember({"validate", "cir", "ccf", "acf", "freq", "xcorr", "fig2", "fig3"}));
	auto* scenario_opt = app.add_option("--scenario", scenario, "Scenario JSON (bundled scenario when omitted)");
	auto* t_opt = app.add_option("--t", t, "Evaluation instant [s]");
	app.add_option("--dt-max", spec.dt_max, "Largest time lag [s]")->capture_default_str();
	app.add_option("--dt-steps", spec.dt_steps, "Number of time-lag steps")->capture_default_str();
	app.add_option("--dq-max", spec.dq_max, "Largest receive spacing [wavelengths]")->capture_default_str();
	app.add_option("--dq-steps", spec.dq_steps, "Number of spacing steps")->capture_default_str();
	app.add_option("--dp", spec.dp, "Transmit spacing of every CCF lag [wavelengths]")->capture_default_str();
	auto* n_opt = app.add_option("--N-mc", n_mc, "Ensemble size")->check(CLI::PositiveNumber);
	auto* seed_opt = app.add_option("--seed", seed, "Root seed (scenario seed when omitted)");
	app.add_option("--component", spec.components, "Component selector; repeatable");
	app.add_option("--out", spec.out_dir, "Output directory")->capture_default_str();
	app.add_option("--threads", spec.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
	app.add_option("--f-max", spec.f_max, "Largest frequency of the freq sweep [Hz]")->capture_default_str();
	app.add_option("--f-steps", spec.f_steps, "Number of frequency steps")->capture_default_str();
	app.add_option("--ensemble", ensemble, "phases | full")
		->capture_default_str()
		->check(CLI::IsMember({"phases", "full"}));

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError& e)
	{
		const int code = app.exit(e);
		return code == 0 ? 0 : static_cast<int>(isac::cli::ExitCode::ParseFailure);
	}

	spec.command = *isac::cli::parse_command(command);
	if (*scenario_opt) { spec.scenario_path = scenario; }
	if (*t_opt) { spec.t = t; }
	if (*n_opt) { spec.n_mc = n_mc; }
	if (*seed_opt) { spec.seed = seed; }
	spec.ensemble = ensemble == "full" ? isac::Ensemble::Full : isac::Ensemble::PhasesOnly;

	return isac::cli::run(spec, std::cerr);
}
