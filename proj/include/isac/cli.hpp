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

// Command driver behind the isac_sim executable.
//
// Every run is a pure function of the scenario bytes and the RunSpec; CSV
// files are written with full precision and are byte-stable for a given
// seed regardless of the worker count.

#ifndef ISAC_CLI_HPP
#define ISAC_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "isac/bundled_scenario.hpp"
#include "isac/comm_channel.hpp"
#include "isac/csv.hpp"
#include "isac/errors.hpp"
#include "isac/scenario.hpp"
#include "isac/scenario_json.hpp"
#include "isac/sensing_channel.hpp"
#include "isac/statistics.hpp"

namespace isac::cli
{
	enum class ExitCode : int
	{
		Ok = 0,
		Failure = 1,
		ParseFailure = 2,
		ValidationFailure = 3,
		DegenerateGeometry = 4,
		UndefinedCorrelation = 5
	};

	enum class Command
	{
		Validate,
		Cir,
		Ccf,
		Acf,
		Freq,
		Xcorr,
		Fig2,
		Fig3
	};

	inline std::optional<Command> parse_command(std::string_view name)
	{
		if (name == "validate") { return Command::Validate; }
		if (name == "cir") { return Command::Cir; }
		if (name == "ccf") { return Command::Ccf; }
		if (name == "acf") { return Command::Acf; }
		if (name == "freq") { return Command::Freq; }
		if (name == "xcorr") { return Command::Xcorr; }
		if (name == "fig2") { return Command::Fig2; }
		if (name == "fig3") { return Command::Fig3; }
		return std::nullopt;
	}

	struct RunSpec
	{
		Command command{Command::Validate};
		std::optional<std::string> scenario_path; ///< bundled scenario when empty
		std::optional<double> t;                  ///< 0 s; 2 s for fig2, 5 s for fig3
		double dt_max{0.05};
		int dt_steps{50};
		double dq_max{2.0};
		int dq_steps{40};
		double dp{0.0};
		std::optional<std::size_t> n_mc;       ///< 1000; 5000 for fig2/fig3
		std::optional<std::uint64_t> seed;     ///< scenario seed when empty
		std::vector<std::string> components;   ///< comm_total when empty
		std::string out_dir{"."};
		unsigned threads{1};
		double f_max{100e6};
		int f_steps{200};
		Ensemble ensemble{Ensemble::PhasesOnly};
	};

	/// Output files of each command, relative to RunSpec::out_dir.
	inline constexpr const char* kCirFile = "cir.csv";
	inline constexpr const char* kCcfFile = "ccf.csv";
	inline constexpr const char* kAcfFile = "acf.csv";
	inline constexpr const char* kFreqFile = "freq.csv";
	inline constexpr const char* kXcorrFile = "xcorr.csv";
	inline constexpr const char* kFig2File = "fig2_ccf.csv";
	inline constexpr const char* kFig3File = "fig3_acf.csv";

	namespace detail
	{
		inline std::vector<double> grid(double max, int steps)
		{
			if (steps < 1) { throw DomainError("grid needs at least one step"); }
			std::vector<double> g;
			for (int i = 0; i <= steps; ++i) { g.push_back(max * static_cast<double>(i) / static_cast<double>(steps)); }
			return g;
		}

		inline std::vector<ComponentSelector> selectors(const RunSpec& spec)
		{
			if (spec.components.empty()) { return {ComponentSelector::CommTotal}; }
			std::vector<ComponentSelector> out;
			for (const auto& name : spec.components)
			{
				const auto s = parse_selector(name);
				if (!s) { throw DomainError("unknown component '" + name + "'"); }
				out.push_back(*s);
			}
			return out;
		}

		inline std::ofstream open(const RunSpec& spec, const char* name)
		{
			std::filesystem::create_directories(spec.out_dir);
			const auto path = std::filesystem::path(spec.out_dir) / name;
			std::ofstream os(path, std::ios::binary | std::ios::trunc);
			if (!os) { throw Error("cannot write '" + path.string() + "'"); }
			return os;
		}

		inline StatisticsOptions options(const RunSpec& spec, const Scenario& scn, std::size_t default_n_mc)
		{
			StatisticsOptions o;
			o.n_mc = spec.n_mc.value_or(default_n_mc);
			o.seed = spec.seed.value_or(scn.seed);
			o.ensemble = spec.ensemble;
			o.threads = spec.threads;
			return o;
		}

		inline std::vector<Lag> spacing_lags(const RunSpec& spec)
		{
			std::vector<Lag> lags;
			for (const double dq : grid(spec.dq_max, spec.dq_steps)) { lags.push_back({spec.dp, dq, 0.0}); }
			return lags;
		}

		/// A named sensing-geometry variant used by the figure presets.
		struct Variant
		{
			std::string suffix;
			Scenario scenario;
		};

		inline std::vector<Variant> sensing_variants(const Scenario& scn)
		{
			std::vector<Variant> v{{"monostatic", with_sensing_mode(scn, SensingMode::Monostatic)}};
			if (scn.sensing_mode == SensingMode::Bistatic) { v.push_back({"bistatic", scn}); }
			return v;
		}

		inline int run_command(const RunSpec& spec, const Scenario& scn, std::ostream& log)
		{
			switch (spec.command)
			{
			case Command::Validate:
				log << "scenario is valid\n";
				return 0;

			case Command::Cir: {
				const double t = spec.t.value_or(0.0);
				auto os = open(spec, kCirFile);
				csv::write_cir_header(os);
				csv::write_cir(os, "sensing", sensing_cir(scn, t));
				csv::write_cir(os, "comm", comm_cir(scn, spec.seed.value_or(scn.seed), t));
				return 0;
			}

			case Command::Ccf: {
				const double t = spec.t.value_or(0.0);
				const auto opts = options(spec, scn, 1000);
				const auto lags = spacing_lags(spec);
				std::vector<CorrelationSeries> series;
				for (const auto s : selectors(spec)) { series.push_back(spatial_ccf(scn, s, t, lags, opts)); }
				std::vector<csv::Column> cols;
				for (const auto& s : series) { cols.push_back({std::string(to_string(s.selector)), &s}); }
				auto os = open(spec, kCcfFile);
				csv::write_correlation(os, csv::LagAxis::ReceiveSpacing, cols);
				return 0;
			}

			case Command::Acf: {
				const double t = spec.t.value_or(0.0);
				const auto opts = options(spec, scn, 1000);
				const auto dts = grid(spec.dt_max, spec.dt_steps);
				std::vector<CorrelationSeries> series;
				for (const auto s : selectors(spec)) { series.push_back(temporal_acf(scn, s, t, dts, opts)); }
				std::vector<csv::Column> cols;
				for (const auto& s : series) { cols.push_back({std::string(to_string(s.selector)), &s}); }
				auto os = open(spec, kAcfFile);
				csv::write_correlation(os, csv::LagAxis::TimeLag, cols);
				return 0;
			}

			case Command::Freq: {
				const double t = spec.t.value_or(0.0);
				const auto sel = selectors(spec);
				if (sel.size() != 1) { throw DomainError("freq takes exactly one component"); }
				const CirMatrix cir = is_sensing(sel[0]) ? static_cast<CirMatrix>(sensing_cir(scn, t))
														 : static_cast<CirMatrix>(comm_cir(scn, spec.seed.value_or(scn.seed), t));
				auto os = open(spec, kFreqFile);
				csv::write_frequency_response(os, frequency_response(cir, grid(spec.f_max, spec.f_steps), sel[0]));
				return 0;
			}

			case Command::Xcorr: {
				const double t = spec.t.value_or(0.0);
				const auto opts = options(spec, scn, 1000);
				const auto x = cross_channel_correlation(scn, t, opts.n_mc, opts.seed, {true, opts.threads});
				auto os = open(spec, kXcorrFile);
				os << "t_s,re,im,abs,se,n_mc\n"
				   << csv::number(t) << ',' << csv::number(x.rho.real()) << ',' << csv::number(x.rho.imag()) << ','
				   << csv::number(std::abs(x.rho)) << ',' << csv::number(x.standard_error) << ',' << x.n_mc << '\n';
				return 0;
			}

			case Command::Fig2: {
				const double t = spec.t.value_or(2.0);
				const auto opts = options(spec, scn, 5000);
				const auto lags = spacing_lags(spec);
				std::vector<std::pair<std::string, CorrelationSeries>> series;
				series.emplace_back("comm_static", spatial_ccf(scn, ComponentSelector::CommStatic, t, lags, opts));
				series.emplace_back("comm_mobile", spatial_ccf(scn, ComponentSelector::CommMobile, t, lags, opts));
				for (const auto& v : sensing_variants(scn))
				{
					series.emplace_back("sensing_" + v.suffix,
										spatial_ccf(v.scenario, ComponentSelector::SensingTotal, t, lags, opts));
				}
				std::vector<csv::Column> cols;
				for (const auto& [name, s] : series) { cols.push_back({name, &s}); }
				auto os = open(spec, kFig2File);
				csv::write_correlation(os, csv::LagAxis::ReceiveSpacing, cols);
				return 0;
			}

			case Command::Fig3: {
				const double t = spec.t.value_or(5.0);
				const auto opts = options(spec, scn, 5000);
				const auto dts = grid(spec.dt_max, spec.dt_steps);
				std::vector<std::pair<std::string, CorrelationSeries>> series;
				series.emplace_back("comm_static", temporal_acf(scn, ComponentSelector::CommStatic, t, dts, opts));
				series.emplace_back("comm_mobile", temporal_acf(scn, ComponentSelector::CommMobile, t, dts, opts));
				for (const auto& v : sensing_variants(scn))
				{
					series.emplace_back("sensing_mobile_" + v.suffix,
										temporal_acf(v.scenario, ComponentSelector::SensingMobile, t, dts, opts));
				}
				std::vector<csv::Column> cols;
				for (const auto& [name, s] : series) { cols.push_back({name, &s}); }
				auto os = open(spec, kFig3File);
				csv::write_correlation(os, csv::LagAxis::TimeLag, cols);
				return 0;
			}
			}
			return 1;
		}
	}

	/// Scenario file named in `spec`, or the bundled one.
	inline Scenario load(const RunSpec& spec)
	{
		return spec.scenario_path ? load_scenario(*spec.scenario_path) : parse_scenario(bundled_scenario_json());
	}

	/// Executes one command; diagnostics go to `log`. Returns the process exit status.
	inline int run(const RunSpec& spec, std::ostream& log)
	{
		try
		{
			const Scenario scn = load(spec);
			const auto violations = validate(scn);
			if (!violations.empty())
			{
				for (const auto& v : violations) { log << "violation " << v.code << ": " << v.detail << '\n'; }
				return static_cast<int>(ExitCode::ValidationFailure);
			}
			return detail::run_command(spec, scn, log);
		}
		catch (const ParseError& e)
		{
			log << "parse error: " << e.what() << '\n';
			return static_cast<int>(ExitCode::ParseFailure);
		}
		catch (const DegenerateGeometryError& e)
		{
			log << "degenerate geometry: " << e.what() << '\n';
			return static_cast<int>(ExitCode::DegenerateGeometry);
		}
		catch (const UndefinedCorrelationError& e)
		{
			log << "undefined correlation: " << e.what() << '\n';
			return static_cast<int>(ExitCode::UndefinedCorrelation);
		}
		catch (const std::exception& e)
		{
			log << "error: " << e.what() << '\n';
			return static_cast<int>(ExitCode::Failure);
		}
	}
}

#endif
