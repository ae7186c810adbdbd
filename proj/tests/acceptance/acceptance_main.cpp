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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "isac/comm_channel.hpp"
#include "isac/sensing_channel.hpp"
#include "isac/statistics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace isac;
using namespace isac::test;
namespace fs = std::filesystem;

namespace
{
	struct Outcome
	{
		bool pass{false};
		std::string detail;
	};

	std::string fmt(const char* f, double a)
	{
		char buf[64];
		std::snprintf(buf, sizeof buf, f, a);
		return buf;
	}

	std::vector<Lag> spacing_grid(double max, int steps)
	{
		std::vector<Lag> lags;
		for (int i = 0; i <= steps; ++i) { lags.push_back({0.0, max * i / steps, 0.0}); }
		return lags;
	}

	std::vector<double> time_grid(double max, int steps)
	{
		std::vector<double> dts;
		for (int i = 0; i <= steps; ++i) { dts.push_back(max * i / steps); }
		return dts;
	}

	StatisticsOptions ensemble(std::size_t n, std::uint64_t seed)
	{
		StatisticsOptions o;
		o.n_mc = n;
		o.seed = seed;
		return o;
	}

	// Floating-point allowance on |rho| <= 1 + 5 SE, needed where SE is exactly zero.
	constexpr double kRounding = 1e-12;

	Outcome normalization()
	{
		const Scenario scn = bundled();
		double worst = 0.0;
		for (const auto sel : kAllSelectors)
		{
			for (const double t : {0.0, 2.0, 5.0})
			{
				const auto a = spatial_ccf(scn, sel, t, {{0.0, 0.0, 0.0}}, ensemble(2000, scn.seed));
				const auto b = temporal_acf(scn, sel, t, {0.0}, ensemble(2000, scn.seed));
				worst = std::max({worst, std::abs(a.rho[0] - 1.0), std::abs(b.rho[0] - 1.0)});
			}
		}
		return {worst <= 1e-9, "max |rho(0) - 1| = " + fmt("%.3g", worst) + " over 8 selectors x 3 instants"};
	}

	Outcome boundedness()
	{
		const Scenario scn = bundled();
		double worst = -1.0;
		std::size_t checked = 0;
		for (const auto sel : kAllSelectors)
		{
			for (const double t : {0.0, 2.0, 5.0})
			{
				const auto o = ensemble(2000, scn.seed);
				for (const auto& r : {spatial_ccf(scn, sel, t, spacing_grid(2.0, 40), o),
									  temporal_acf(scn, sel, t, time_grid(0.05, 50), o)})
				{
					for (std::size_t i = 0; i < r.rho.size(); ++i)
					{
						worst = std::max(worst, std::abs(r.rho[i]) - 1.0 - 5.0 * r.standard_error[i]);
						++checked;
					}
				}
			}
		}
		return {worst <= kRounding,
				"max(|rho| - 1 - 5 SE) = " + fmt("%.3g", worst) + " over " + std::to_string(checked) + " lags, N_mc = 2000"};
	}

	Outcome degeneration()
	{
		Scenario moving = bundled();
		for (auto& s : moving.scatterers)
		{
			if (s.mobile()) { s.motion.speed = 0.0; }
		}
		Scenario fixed = moving;
		for (auto& s : fixed.scatterers) { s.mobility = Mobility::Static; }

		bool clusters_equal = true;
		bool targets_equal = true;
		for (const double t : {0.0, 2.0, 5.0})
		{
			for (int p = 1; p <= 4; ++p)
			{
				for (int q = 1; q <= 6; ++q)
				{
					for (const auto& s : moving.scatterers)
					{
						if (!s.comm_cluster || !s.mobile()) { continue; }
						const RaySet set = draw_ray_set(s, moving.carrier, moving.seed);
						const Tap a = mobile_cluster_tap(moving, set, t, p, q);
						const Tap b = static_cluster_tap(fixed, set, t, p, q);
						clusters_equal = clusters_equal && a.amplitude == b.amplitude && a.delay == b.delay;
					}
				}
				for (int qe = 1; qe <= 4; ++qe)
				{
					std::vector<Tap> a;
					for (const auto& tap : mobile_target_taps(moving, t, p, qe)) { a.push_back(tap); }
					Scenario only_former = fixed;
					std::erase_if(only_former.scatterers, [&](const Scatterer& s) {
						return !s.sensing_target || !bundled().scatterer(s.id).mobile();
					});
					const auto b = static_target_taps(only_former, p, qe);
					targets_equal = targets_equal && a.size() == b.size();
					for (std::size_t i = 0; targets_equal && i < a.size(); ++i)
					{
						targets_equal = a[i].amplitude == b[i].amplitude && a[i].delay == b[i].delay;
					}
				}
			}
		}

		const Scenario mono = with_sensing_mode(bundled(), SensingMode::Monostatic);
		double angle_gap = 0.0;
		for (const double t : {0.0, 2.0, 5.0})
		{
			for (const auto& s : mono.scatterers)
			{
				if (!s.sensing_target) { continue; }
				const auto a = angles_and_distance(mono.nodes.bs_tx.phase_center, s.position_at(t));
				const auto b = angles_and_distance(mono.nodes.echo_rx.phase_center, s.position_at(t));
				angle_gap = std::max({angle_gap, std::abs(a.angles.azimuth - b.angles.azimuth),
									  std::abs(a.angles.elevation - b.angles.elevation)});
			}
		}
		return {clusters_equal && targets_equal && angle_gap <= 1e-12,
				std::string("mobile->static clusters bitwise ") + (clusters_equal ? "equal" : "DIFFERENT") +
					", targets bitwise " + (targets_equal ? "equal" : "DIFFERENT") +
					", monostatic angle gap " + fmt("%.3g", angle_gap)};
	}

	Outcome doppler()
	{
		// Receiver 3 km out moving straight away from the BS base: radial within 5e-5.
		Scenario scn = with_sensing_mode(reference_layout(), SensingMode::Monostatic);
		scn.nodes.comm_rx.phase_center = {3000.0, 0.0, 0.0};
		scn.nodes.comm_rx_motion = {5.0, 0.0};
		const double expected = 2.0 * 5.0 / scn.wavelength();
		double worst = 0.0;
		const double dt = 10e-6;
		for (int i = 0; i < 10; ++i)
		{
			const Tap a = terminal_tap(scn, i * dt, 1, 1);
			const Tap b = terminal_tap(scn, (i + 1) * dt, 1, 1);
			const double rate = std::abs(std::arg(b.amplitude / a.amplitude)) / (2.0 * kPi * dt);
			worst = std::max(worst, std::abs(rate - expected) / expected);
		}
		return {worst <= 0.005, "expected 2 v / lambda = " + fmt("%.4f", expected) + " Hz, max relative error " +
									 fmt("%.3g", worst) + " over 10 steps of 10 us"};
	}

	Outcome power_laws()
	{
		bool ok = true;
		const double lambda = 3e8 / 28e9;
		for (const double x : {1.0, 37.0, 152.970585407784, 999.5})
		{
			for (const double y : {3.0, 80.0, 420.25})
			{
				ok = ok && radar_gain(lambda, 100.0, 2.0 * x, 2.0 * y) == radar_gain(lambda, 100.0, x, y) / 16.0;
			}
			ok = ok && friis_gain(lambda, 2.0 * x) == friis_gain(lambda, x) / 4.0;
			ok = ok && cluster_gain(lambda, 1.0, x, x) == friis_gain(lambda, 2.0 * x);
		}
		return {ok, "radar /16 under doubled legs, Friis /4 under doubled range, cluster(P=1, xi, xi) == Friis(2 xi), all exact"};
	}

	Outcome time_invariance()
	{
		const Scenario scn = frozen(bundled());
		double worst = 0.0;
		for (const auto sel : kAllSelectors)
		{
			if (component_size(scn, sel) == 0) { continue; }
			const auto r = temporal_acf(scn, sel, 2.0, time_grid(0.05, 50), ensemble(500, scn.seed));
			for (const auto& rho : r.rho) { worst = std::max(worst, std::abs(std::abs(rho) - 1.0)); }
		}
		bool cir_equal = true;
		for (const double t : {1.0, 2.0, 5.0, 30.0})
		{
			auto a = sensing_cir(scn, 0.0);
			auto b = sensing_cir(scn, t);
			auto c = comm_cir(scn, 4, 0.0);
			auto d = comm_cir(scn, 4, t);
			b.t = 0.0;
			d.t = 0.0;
			cir_equal = cir_equal && a == b && c == d;
		}
		return {worst <= 1e-12 && cir_equal, "max ||rho| - 1| = " + fmt("%.3g", worst) + ", CIRs across t bitwise " +
												  (cir_equal ? "equal" : "DIFFERENT")};
	}

	Outcome ray_sums()
	{
		const Scenario scn = bundled();
		bool ok = true;
		std::string detail;
		const int n = 20000;
		for (const auto& c : scn.scatterers)
		{
			if (!c.comm_cluster) { continue; }
			const auto rays = realize_rays(c, scn.carrier, scn.seed);
			const auto r = detail::cluster_response(scn, c, rays, c.mobile(), 2.0, {}, {});
			Complex sum{};
			double power = 0.0;
			double power2 = 0.0;
			for (int i = 0; i < n; ++i)
			{
				const Complex s = r.combine(draw_ray_phases(c, scn.carrier.ray_count, scn.seed, static_cast<std::uint64_t>(i))) /
								  std::sqrt(r.gain);
				sum += s;
				power += std::norm(s);
				power2 += std::norm(s) * std::norm(s);
			}
			const double mean_power = power / n;
			const double sigma_mean = std::sqrt(mean_power / n);
			const double sigma_power = std::sqrt((power2 / n - mean_power * mean_power) / n);
			const double mean = std::abs(sum / static_cast<double>(n));
			ok = ok && mean < 3.0 * sigma_mean && std::abs(mean_power - 1.0) <= 3.0 * sigma_power;
			detail += c.id + ": |E| = " + fmt("%.4f", mean) + " (3s " + fmt("%.4f", 3.0 * sigma_mean) + "), E|.|^2 = " +
					  fmt("%.4f", mean_power) + " +- " + fmt("%.4f", 3.0 * sigma_power) + "; ";
		}
		return {ok, detail + std::to_string(n) + " draws each"};
	}

	Outcome figure_shapes()
	{
		const Scenario bi = bundled();
		const Scenario mono = with_sensing_mode(bi, SensingMode::Monostatic);
		const auto o = ensemble(5000, bi.seed);

		const auto lags = spacing_grid(0.5, 10);
		const std::vector<std::pair<std::string, CorrelationSeries>> ccf{
			{"comm_static", spatial_ccf(bi, ComponentSelector::CommStatic, 2.0, lags, o)},
			{"comm_mobile", spatial_ccf(bi, ComponentSelector::CommMobile, 2.0, lags, o)},
			{"sensing_monostatic", spatial_ccf(mono, ComponentSelector::SensingTotal, 2.0, lags, o)},
			{"sensing_bistatic", spatial_ccf(bi, ComponentSelector::SensingTotal, 2.0, lags, o)}};
		bool monotone = true;
		for (const auto& [name, r] : ccf)
		{
			for (std::size_t i = 1; i < r.rho.size(); ++i)
			{
				const double slack = 3.0 * std::hypot(r.standard_error[i], r.standard_error[i - 1]) + kRounding;
				monotone = monotone && std::abs(r.rho[i]) <= std::abs(r.rho[i - 1]) + slack;
			}
		}

		const auto dts = time_grid(0.05, 50);
		const auto comm_static = temporal_acf(bi, ComponentSelector::CommStatic, 5.0, dts, o);
		const auto comm_mobile = temporal_acf(bi, ComponentSelector::CommMobile, 5.0, dts, o);
		const auto sense_mono = temporal_acf(mono, ComponentSelector::SensingMobile, 5.0, dts, o);
		const auto sense_bi = temporal_acf(bi, ComponentSelector::SensingMobile, 5.0, dts, o);
		bool mobile_below_static = true;
		bool sensing_below_comm = true;
		for (std::size_t i = 1; i < dts.size(); ++i)
		{
			const double s = std::abs(comm_static.rho[i]);
			const double m = std::abs(comm_mobile.rho[i]);
			mobile_below_static = mobile_below_static && m < s;
			for (const auto* r : {&sense_mono, &sense_bi})
			{
				sensing_below_comm = sensing_below_comm && std::abs(r->rho[i]) < std::min(s, m);
			}
		}
		const std::size_t last = dts.size() - 1;
		return {monotone && mobile_below_static && sensing_below_comm,
				std::string("CCF monotone on [0, 0.5 lambda]: ") + (monotone ? "yes" : "NO") +
					"; ACF comm_mobile < comm_static: " + (mobile_below_static ? "yes" : "NO") +
					"; ACF sensing_mobile < both comm: " + (sensing_below_comm ? "yes" : "NO") +
					" (at 50 ms: comm_static " + fmt("%.3f", std::abs(comm_static.rho[last])) + ", comm_mobile " +
					fmt("%.3f", std::abs(comm_mobile.rho[last])) + ", sensing_mobile mono " +
					fmt("%.3f", std::abs(sense_mono.rho[last])) + ", bi " + fmt("%.3f", std::abs(sense_bi.rho[last])) + ")"};
	}

	Outcome oracle_equivalence()
	{
		const Scenario scn = bundled();
		double worst_fr = 0.0;
		std::vector<double> f;
		for (int i = 0; i <= 100; ++i) { f.push_back(-5e8 + 1e7 * i); }
		for (const double t : {0.0, 2.0, 5.0})
		{
			for (const CirMatrix& cir : {static_cast<CirMatrix>(sensing_cir(scn, t)), static_cast<CirMatrix>(comm_cir(scn, 17, t))})
			{
				const auto fr = frequency_response(cir, f);
				for (int p = 1; p <= cir.tx_count; ++p)
				{
					for (int q = 1; q <= cir.rx_count; ++q)
					{
						double scale = 0.0;
						for (const auto& tap : cir.at(p, q)) { scale += std::abs(tap.amplitude); }
						for (std::size_t i = 0; i < f.size(); ++i)
						{
							const auto d = oracle::direct_sum(cir.at(p, q), f[i]);
							const Complex direct(static_cast<double>(d.real()), static_cast<double>(d.imag()));
							worst_fr = std::max(worst_fr, std::abs(fr.at(p, q)[i] - direct) / scale);
						}
					}
				}
			}
		}

		Scenario one = reference_layout();
		one.scatterers.push_back(cluster("c", {60.0, 40.0, 10.0}, 1.0, 5.0));
		const auto lags = spacing_grid(2.0, 20);
		std::vector<double> dq;
		for (const auto& l : lags) { dq.push_back(l.dq); }
		const auto lib = spatial_ccf(one, ComponentSelector::CommStatic, 2.0, lags, ensemble(5000, one.seed));
		const auto naive = oracle::naive_ccf(one, ComponentSelector::CommStatic, 2.0, dq, 5000, one.seed, 424242);
		double worst_z = 0.0;
		for (std::size_t i = 0; i < dq.size(); ++i)
		{
			const double se = std::hypot(lib.standard_error[i], naive.standard_error[i]);
			if (se > 0.0) { worst_z = std::max(worst_z, std::abs(lib.rho[i] - naive.rho[i]) / se); }
		}
		return {worst_fr <= 1e-12 && worst_z <= 3.0, "frequency response max relative error " + fmt("%.3g", worst_fr) +
														  "; CCF vs naive Monte Carlo max |diff| / SE = " + fmt("%.3f", worst_z)};
	}

	std::string slurp(const fs::path& p)
	{
		std::ifstream in(p, std::ios::binary);
		std::ostringstream s;
		s << in.rdbuf();
		return s.str();
	}

	Outcome determinism()
	{
		const fs::path root = fs::temp_directory_path() / "isac_acceptance_determinism";
		fs::remove_all(root);
		const std::string exe = ISAC_SIM_PATH;
		struct Run
		{
			std::string args;
			std::string file;
		};
		const std::vector<Run> runs{
			{"ccf --component comm_static --component comm_mobile --component sensing_total --N-mc 5000 --seed 7", "ccf.csv"},
			{"acf --component comm_total --component sensing_mobile --t 5 --N-mc 2000 --seed 7", "acf.csv"},
			{"fig2 --N-mc 2000 --ensemble full", "fig2_ccf.csv"},
			{"xcorr --t 2 --N-mc 3000", "xcorr.csv"}};
		bool ok = true;
		int index = 0;
		for (const auto& r : runs)
		{
			std::vector<std::string> outputs;
			for (const char* variant : {"a", "b", "threads"})
			{
				const fs::path dir = root / (std::to_string(index) + variant);
				const std::string threads = std::string(variant) == "threads" ? " --threads 4" : "";
				const std::string cmd =
					"\"" + exe + "\" " + r.args + threads + " --out \"" + dir.string() + "\" >/dev/null 2>&1";
				ok = ok && std::system(cmd.c_str()) == 0;
				outputs.push_back(slurp(dir / r.file));
			}
			ok = ok && !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
			++index;
		}
		fs::remove_all(root);
		return {ok, std::to_string(runs.size()) + " commands, repeated and with 1 vs 4 threads: " +
						(ok ? "byte-identical" : "MISMATCH")};
	}
}

int main()
{
	struct Criterion
	{
		int number;
		const char* name;
		double budget_s;
		std::function<Outcome()> check;
	};
	const std::vector<Criterion> criteria{
		{1, "normalization", 60.0, normalization},
		{2, "boundedness", 300.0, boundedness},
		{3, "degeneration equivalences", 0.0, degeneration},
		{4, "two-way Doppler", 0.0, doppler},
		{5, "power laws", 0.0, power_laws},
		{6, "time invariance", 0.0, time_invariance},
		{7, "ray-sum moments", 0.0, ray_sums},
		{8, "figure shapes", 900.0, figure_shapes},
		{9, "oracle equivalence", 0.0, oracle_equivalence},
		{10, "determinism", 0.0, determinism}};

	int failures = 0;
	for (const auto& c : criteria)
	{
		const auto start = std::chrono::steady_clock::now();
		Outcome out;
		try
		{
			out = c.check();
		}
		catch (const std::exception& e)
		{
			out = {false, std::string("exception: ") + e.what()};
		}
		const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		std::string timing = fmt("%.1f s", elapsed);
		if (c.budget_s > 0.0)
		{
			timing += " of " + fmt("%.0f s", c.budget_s);
			out.pass = out.pass && elapsed <= c.budget_s;
		}
		std::printf("criterion %2d %s: %s [%s] (%s)\n", c.number, out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(),
					timing.c_str());
		std::fflush(stdout);
		if (!out.pass) { ++failures; }
	}
	std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
	return failures == 0 ? 0 : 1;
}
