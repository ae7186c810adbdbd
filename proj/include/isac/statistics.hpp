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

// Correlation statistics of the narrowband channel gains h_pq(t) = sum_k a_k(t).
//
//   rho = E[h_a^* h_b] / sqrt(E|h_a|^2 E|h_b|^2)
//
// where (a, b) are two antenna pairs (spatial CCF) or two instants (temporal
// ACF). Expectations are plain sample means over seeded realizations of the
// communication ray phases (and optionally ray placements), combined after
// averaging. The sensing channel has no random variables, so its expectation
// is a single evaluation.
//
// Realizations are processed in fixed blocks whose partial sums are reduced
// in block order, so results are bitwise identical for any thread count.

#ifndef ISAC_STATISTICS_HPP
#define ISAC_STATISTICS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "isac/comm_channel.hpp"
#include "isac/errors.hpp"
#include "isac/geometry.hpp"
#include "isac/scenario.hpp"
#include "isac/sensing_channel.hpp"
#include "isac/tap.hpp"

namespace isac
{
	enum class ComponentSelector
	{
		SensingTerminal,
		SensingStatic,
		SensingMobile,
		SensingTotal,
		CommLos,
		CommStatic,
		CommMobile,
		CommTotal
	};

	inline constexpr ComponentSelector kAllSelectors[] = {
		ComponentSelector::SensingTerminal, ComponentSelector::SensingStatic, ComponentSelector::SensingMobile,
		ComponentSelector::SensingTotal,    ComponentSelector::CommLos,       ComponentSelector::CommStatic,
		ComponentSelector::CommMobile,      ComponentSelector::CommTotal};

	inline std::string_view to_string(ComponentSelector s) noexcept
	{
		switch (s)
		{
		case ComponentSelector::SensingTerminal: return "sensing_terminal";
		case ComponentSelector::SensingStatic: return "sensing_static";
		case ComponentSelector::SensingMobile: return "sensing_mobile";
		case ComponentSelector::SensingTotal: return "sensing_total";
		case ComponentSelector::CommLos: return "comm_los";
		case ComponentSelector::CommStatic: return "comm_static";
		case ComponentSelector::CommMobile: return "comm_mobile";
		case ComponentSelector::CommTotal: return "comm_total";
		}
		return "unknown";
	}

	inline std::optional<ComponentSelector> parse_selector(std::string_view name) noexcept
	{
		for (const auto s : kAllSelectors)
		{
			if (to_string(s) == name) { return s; }
		}
		return std::nullopt;
	}

	inline bool is_sensing(ComponentSelector s) noexcept
	{
		return s == ComponentSelector::SensingTerminal || s == ComponentSelector::SensingStatic ||
			   s == ComponentSelector::SensingMobile || s == ComponentSelector::SensingTotal;
	}

	/// Whether taps of `kind` belong to component `s`.
	inline bool includes(ComponentSelector s, PathKind kind) noexcept
	{
		switch (s)
		{
		case ComponentSelector::SensingTerminal: return kind == PathKind::Terminal;
		case ComponentSelector::SensingStatic: return kind == PathKind::StaticTarget;
		case ComponentSelector::SensingMobile: return kind == PathKind::MobileTarget;
		case ComponentSelector::SensingTotal:
			return kind == PathKind::Terminal || kind == PathKind::StaticTarget || kind == PathKind::MobileTarget;
		case ComponentSelector::CommLos: return kind == PathKind::LineOfSight;
		case ComponentSelector::CommStatic: return kind == PathKind::StaticCluster;
		case ComponentSelector::CommMobile: return kind == PathKind::MobileCluster;
		case ComponentSelector::CommTotal:
			return kind == PathKind::LineOfSight || kind == PathKind::StaticCluster || kind == PathKind::MobileCluster;
		}
		return false;
	}

	/// Number of taps component `s` has in `scn`.
	inline std::size_t component_size(const Scenario& scn, ComponentSelector s)
	{
		std::size_t n = 0;
		if (includes(s, PathKind::Terminal)) { ++n; }
		if (includes(s, PathKind::LineOfSight)) { ++n; }
		for (const auto& sc : scn.scatterers)
		{
			if (sc.sensing_target && includes(s, sc.mobile() ? PathKind::MobileTarget : PathKind::StaticTarget)) { ++n; }
			if (sc.comm_cluster && includes(s, sc.mobile() ? PathKind::MobileCluster : PathKind::StaticCluster)) { ++n; }
		}
		return n;
	}

	enum class Ensemble
	{
		PhasesOnly, ///< ray placements frozen at the root seed, ray phases redrawn
		Full        ///< ray placements and ray phases redrawn
	};

	struct AntennaPair
	{
		int p{1};
		int q{1};
	};

	struct StatisticsOptions
	{
		std::size_t n_mc{1000};
		std::uint64_t seed{0};
		Ensemble ensemble{Ensemble::PhasesOnly};
		AntennaPair reference{};
		unsigned threads{1};
	};

	/// Antenna spacings in wavelengths, time lag in seconds.
	struct Lag
	{
		double dp{};
		double dq{};
		double dt{};
	};

	struct CorrelationSeries
	{
		double t{};
		ComponentSelector selector{ComponentSelector::CommTotal};
		std::vector<Lag> lags;
		std::vector<Complex> rho;
		std::vector<double> standard_error;
		std::size_t n_mc{};
	};

	// ------------------------------------------------------------------------
	// Estimator
	// ------------------------------------------------------------------------

	namespace detail
	{
		/// Instant and element offsets at which a narrowband gain is evaluated.
		struct EvalPoint
		{
			double t{};
			Vec3 d_tx;
			Vec3 d_rx;
		};

		// Additive moments of one lag; a = |h_ref|^2, b = |h_lag|^2, x = h_ref^* h_lag.
		struct LagMoments
		{
			Complex sum_x{};
			double sum_x2{};
			double sum_b{};
			double sum_b2{};
			double sum_ab{};
			Complex sum_xa{}; // sum conj(x) a
			Complex sum_xb{}; // sum conj(x) b

			void add(const LagMoments& o)
			{
				sum_x += o.sum_x;
				sum_x2 += o.sum_x2;
				sum_b += o.sum_b;
				sum_b2 += o.sum_b2;
				sum_ab += o.sum_ab;
				sum_xa += o.sum_xa;
				sum_xb += o.sum_xb;
			}
		};

		struct Moments
		{
			std::size_t n{};
			double sum_a{};
			double sum_a2{};
			std::vector<LagMoments> lags;

			explicit Moments(std::size_t lag_count) : lags(lag_count) {}

			/// values[0] is the reference gain, values[1 + k] the gain at lag k.
			void accumulate(const std::vector<Complex>& values)
			{
				const Complex ref = values[0];
				const double a = std::norm(ref);
				++n;
				sum_a += a;
				sum_a2 += a * a;
				for (std::size_t k = 0; k < lags.size(); ++k)
				{
					const Complex h = values[k + 1];
					const Complex x = std::conj(ref) * h;
					const double b = std::norm(h);
					auto& m = lags[k];
					m.sum_x += x;
					m.sum_x2 += std::norm(x);
					m.sum_b += b;
					m.sum_b2 += b * b;
					m.sum_ab += a * b;
					m.sum_xa += std::conj(x) * a;
					m.sum_xb += std::conj(x) * b;
				}
			}

			void add(const Moments& o)
			{
				n += o.n;
				sum_a += o.sum_a;
				sum_a2 += o.sum_a2;
				for (std::size_t k = 0; k < lags.size(); ++k) { lags[k].add(o.lags[k]); }
			}
		};

		/**
		 * Normalized correlation with a delta-method standard error.
		 *
		 * The linearized per-sample contribution of rho = X / sqrt(A B) is
		 * r = x / D - rho / 2 (a / A + b / B), D = sqrt(A B); its sample
		 * variance is expanded in terms of the accumulated moments.
		 */
		inline void finish(const Moments& m, std::vector<Complex>& rho, std::vector<double>& se)
		{
			const double n = static_cast<double>(m.n);
			const double mean_a = m.sum_a / n;
			rho.clear();
			se.clear();
			for (const auto& l : m.lags)
			{
				const double mean_b = l.sum_b / n;
				if (!(mean_a > 0.0) || !(mean_b > 0.0))
				{
					throw UndefinedCorrelationError("channel component has zero power");
				}
				const double d = std::sqrt(mean_a * mean_b);
				const Complex r = (l.sum_x / n) / d;
				rho.push_back(r);
				if (m.n < 2)
				{
					se.push_back(0.0);
					continue;
				}
				const double sum_c2 = m.sum_a2 / (mean_a * mean_a) + 2.0 * l.sum_ab / (mean_a * mean_b) +
									  l.sum_b2 / (mean_b * mean_b);
				const Complex sum_xc = l.sum_xa / mean_a + l.sum_xb / mean_b;
				const double mean_r2 =
					(l.sum_x2 / (d * d) - std::real(r * sum_xc) / d + std::norm(r) * sum_c2 / 4.0) / n;
				se.push_back(std::sqrt(std::max(0.0, mean_r2) / (n - 1.0)));
			}
		}

		inline constexpr std::size_t kBlockSize = 64;

		/**
		 * Runs `sample(n, values)` for n in [0, count) and accumulates the
		 * moments. Blocks of kBlockSize realizations are summed independently
		 * and reduced in block order.
		 */
		template <class Sampler>
		Moments run_ensemble(std::size_t count, std::size_t lag_count, unsigned threads, const Sampler& sample)
		{
			const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
			std::vector<Moments> partial(blocks, Moments(lag_count));
			std::atomic<std::size_t> next{0};
			std::exception_ptr failure;
			std::mutex failure_mutex;

			auto worker = [&] {
				std::vector<Complex> values(lag_count + 1);
				for (std::size_t b = next++; b < blocks; b = next++)
				{
					try
					{
						const std::size_t end = std::min(count, (b + 1) * kBlockSize);
						for (std::size_t n = b * kBlockSize; n < end; ++n)
						{
							sample(n, values);
							partial[b].accumulate(values);
						}
					}
					catch (...)
					{
						const std::lock_guard lock(failure_mutex);
						if (!failure) { failure = std::current_exception(); }
						next = blocks;
					}
				}
			};

			const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
			if (workers == 1) { worker(); }
			else
			{
				std::vector<std::jthread> pool;
				for (unsigned i = 0; i < workers; ++i) { pool.emplace_back(worker); }
			}
			if (failure) { std::rethrow_exception(failure); }

			Moments total(lag_count);
			for (const auto& p : partial) { total.add(p); }
			return total;
		}

		inline Complex sum_selected(const std::vector<Tap>& taps, ComponentSelector s)
		{
			Complex h{};
			for (const auto& tap : taps)
			{
				if (includes(s, tap.source.kind)) { h += tap.amplitude; }
			}
			return h;
		}

		/// Per-point deterministic part of a communication component.
		struct CommPointResponse
		{
			Complex los{};
			std::vector<ClusterResponse> clusters; // parallel to the selected cluster list
		};

		struct CommEvaluator
		{
			const Scenario& scn;
			ComponentSelector selector;
			std::vector<const Scatterer*> clusters; // selected clusters in scenario order

			CommEvaluator(const Scenario& s, ComponentSelector sel) : scn(s), selector(sel)
			{
				for (const auto& c : scn.scatterers)
				{
					if (c.comm_cluster && includes(sel, c.mobile() ? PathKind::MobileCluster : PathKind::StaticCluster))
					{
						clusters.push_back(&c);
					}
				}
			}

			[[nodiscard]] std::vector<std::vector<RayPoint>> placements(std::uint64_t seed, std::uint64_t index) const
			{
				std::vector<std::vector<RayPoint>> out;
				for (const auto* c : clusters) { out.push_back(realize_rays(*c, scn.carrier, seed, index)); }
				return out;
			}

			[[nodiscard]] CommPointResponse respond(const EvalPoint& at,
													const std::vector<std::vector<RayPoint>>& rays) const
			{
				CommPointResponse r;
				if (includes(selector, PathKind::LineOfSight)) { r.los = los_tap_at(scn, at.t, at.d_tx, at.d_rx).amplitude; }
				for (std::size_t i = 0; i < clusters.size(); ++i)
				{
					r.clusters.push_back(
						cluster_response(scn, *clusters[i], rays[i], clusters[i]->mobile(), at.t, at.d_tx, at.d_rx));
				}
				return r;
			}

			[[nodiscard]] std::vector<std::vector<double>> phases(std::uint64_t seed, std::uint64_t index) const
			{
				std::vector<std::vector<double>> out;
				for (const auto* c : clusters) { out.push_back(draw_ray_phases(*c, scn.carrier.ray_count, seed, index)); }
				return out;
			}

			static Complex combine(const CommPointResponse& r, const std::vector<std::vector<double>>& phases)
			{
				Complex h = r.los;
				for (std::size_t i = 0; i < r.clusters.size(); ++i) { h += r.clusters[i].combine(phases[i]); }
				return h;
			}
		};

		inline CorrelationSeries correlate(const Scenario& scn, ComponentSelector selector, double t,
										   const std::vector<Lag>& lags, const std::vector<EvalPoint>& points,
										   const StatisticsOptions& options)
		{
			if (component_size(scn, selector) == 0)
			{
				throw UndefinedCorrelationError("component '" + std::string(to_string(selector)) +
												"' has no paths in this scenario");
			}
			if (options.n_mc < 1) { throw DomainError("ensemble size must be >= 1"); }

			CorrelationSeries out;
			out.t = t;
			out.selector = selector;
			out.lags = lags;
			const std::size_t lag_count = lags.size();

			if (is_sensing(selector))
			{
				// Deterministic channel: the expectation is the value itself.
				std::vector<Complex> values;
				for (const auto& at : points) { values.push_back(sum_selected(sensing_taps_at(scn, at.t, at.d_tx, at.d_rx), selector)); }
				Moments m(lag_count);
				m.accumulate(values);
				finish(m, out.rho, out.standard_error);
				out.n_mc = 1;
				return out;
			}

			const CommEvaluator eval(scn, selector);
			Moments m(lag_count);
			if (options.ensemble == Ensemble::PhasesOnly)
			{
				const auto rays = eval.placements(options.seed, 0);
				std::vector<CommPointResponse> responses;
				for (const auto& at : points) { responses.push_back(eval.respond(at, rays)); }
				m = run_ensemble(options.n_mc, lag_count, options.threads,
								 [&](std::size_t n, std::vector<Complex>& values) {
									 const auto phases = eval.phases(options.seed, n);
									 for (std::size_t i = 0; i < responses.size(); ++i)
									 {
										 values[i] = CommEvaluator::combine(responses[i], phases);
									 }
								 });
			}
			else
			{
				m = run_ensemble(options.n_mc, lag_count, options.threads,
								 [&](std::size_t n, std::vector<Complex>& values) {
									 const auto rays = eval.placements(options.seed, n);
									 const auto phases = eval.phases(options.seed, n);
									 for (std::size_t i = 0; i < points.size(); ++i)
									 {
										 values[i] = CommEvaluator::combine(eval.respond(points[i], rays), phases);
									 }
								 });
			}
			finish(m, out.rho, out.standard_error);
			out.n_mc = options.n_mc;
			return out;
		}

		inline const UlaConfig& receive_array(const Scenario& scn, ComponentSelector s)
		{
			return is_sensing(s) ? scn.nodes.echo_rx : scn.nodes.comm_rx;
		}
	}

	/**
	 * Spatial CCF between the reference pair and virtual pairs displaced by
	 * (dp, dq) wavelengths along the transmit and receive array axes. The
	 * virtual elements sit at fractional indices p + dp lambda / delta_T and
	 * q + dq lambda / delta_R. `dt` of each lag is ignored.
	 */
	inline CorrelationSeries spatial_ccf(const Scenario& scn, ComponentSelector selector, double t,
										 const std::vector<Lag>& lags, const StatisticsOptions& options = {})
	{
		const UlaConfig& tx = scn.nodes.bs_tx;
		const UlaConfig& rx = detail::receive_array(scn, selector);
		const double lambda = scn.wavelength();
		const auto [p, q] = options.reference;

		std::vector<detail::EvalPoint> points{{t, element_displacement(tx, p), element_displacement(rx, q)}};
		for (const auto& lag : lags)
		{
			points.push_back({t, displacement_at(tx, p + lag.dp * lambda / tx.spacing),
							  displacement_at(rx, q + lag.dq * lambda / rx.spacing)});
		}
		return detail::correlate(scn, selector, t, lags, points, options);
	}

	/// Temporal ACF of the reference pair between t and t + dt for each lag.
	inline CorrelationSeries temporal_acf(const Scenario& scn, ComponentSelector selector, double t,
										  const std::vector<double>& dt_grid, const StatisticsOptions& options = {})
	{
		const Vec3 d_tx = element_displacement(scn.nodes.bs_tx, options.reference.p);
		const Vec3 d_rx = element_displacement(detail::receive_array(scn, selector), options.reference.q);

		std::vector<Lag> lags;
		std::vector<detail::EvalPoint> points{{t, d_tx, d_rx}};
		for (const double dt : dt_grid)
		{
			if (t + dt < 0.0) { throw DomainError("t + dt must be >= 0"); }
			lags.push_back({0.0, 0.0, dt});
			points.push_back({t + dt, d_tx, d_rx});
		}
		return detail::correlate(scn, selector, t, lags, points, options);
	}

	// ------------------------------------------------------------------------
	// Frequency response
	// ------------------------------------------------------------------------

	struct FrequencyResponse
	{
		double t{};
		std::vector<double> frequencies;      ///< [Hz]
		int tx_count{};
		int rx_count{};
		std::vector<std::vector<Complex>> values; ///< [pair][frequency], pairs row-major as in CirMatrix

		[[nodiscard]] const std::vector<Complex>& at(int p, int q) const
		{
			return values.at(static_cast<std::size_t>((p - 1) * rx_count + (q - 1)));
		}
	};

	/// H(t, f) = sum_k a_k exp(-j 2 pi f tau_k) for every antenna pair, optionally restricted to one component.
	inline FrequencyResponse frequency_response(const CirMatrix& cir, const std::vector<double>& f_grid,
												std::optional<ComponentSelector> component = std::nullopt)
	{
		FrequencyResponse out;
		out.t = cir.t;
		out.frequencies = f_grid;
		out.tx_count = cir.tx_count;
		out.rx_count = cir.rx_count;
		for (const auto& pair : cir.taps)
		{
			std::vector<Complex> row(f_grid.size());
			for (const auto& tap : pair)
			{
				if (component && !includes(*component, tap.source.kind)) { continue; }
				for (std::size_t i = 0; i < f_grid.size(); ++i)
				{
					row[i] += tap.amplitude * std::polar(1.0, -2.0 * std::numbers::pi * f_grid[i] * tap.delay);
				}
			}
			out.values.push_back(std::move(row));
		}
		return out;
	}

	/// Per-pair narrowband gains sum_k a_k, i.e. the frequency response at f = 0.
	struct NarrowbandFading
	{
		double t{};
		int tx_count{};
		int rx_count{};
		std::vector<Complex> gains;
	};

	inline NarrowbandFading narrowband(const CirMatrix& cir, std::optional<ComponentSelector> component = std::nullopt)
	{
		NarrowbandFading out{cir.t, cir.tx_count, cir.rx_count, {}};
		for (const auto& pair : cir.taps)
		{
			Complex h{};
			for (const auto& tap : pair)
			{
				if (!component || includes(*component, tap.source.kind)) { h += tap.amplitude; }
			}
			out.gains.push_back(h);
		}
		return out;
	}

	// ------------------------------------------------------------------------
	// Sensing/communication cross-correlation
	// ------------------------------------------------------------------------

	struct CrossCorrelation
	{
		Complex rho;
		double standard_error{};
		std::size_t n_mc{};
	};

	struct CrossCorrelationOptions
	{
		bool require_shared{true};
		unsigned threads{1};
	};

	/**
	 * Correlation between the target echoes of the sensing channel (pair
	 * (1, 1)) and the cluster paths of the communication channel (pair
	 * (1, 1)).
	 *
	 * Ray sets are frozen at `seed`. The ensemble runs over an unknown phase
	 * of each scatterer's BS leg, drawn per scatterer and realization and
	 * applied to every path through that scatterer in both channels. A shared
	 * scatterer carries the same phase into both channels; distinct
	 * scatterers carry independent ones and decorrelate.
	 */
	inline CrossCorrelation cross_channel_correlation(const Scenario& scn, double t, std::size_t n_mc,
													  std::uint64_t seed, const CrossCorrelationOptions& options = {})
	{
		const bool any_shared = std::any_of(scn.scatterers.begin(), scn.scatterers.end(),
											[](const Scatterer& s) { return s.shared(); });
		if (options.require_shared && !any_shared)
		{
			throw UndefinedCorrelationError("scenario has no shared clusters");
		}
		if (n_mc < 1) { throw DomainError("ensemble size must be >= 1"); }

		const Vec3 d_tx = element_displacement(scn.nodes.bs_tx, 1);
		const Vec3 d_echo = element_displacement(scn.nodes.echo_rx, 1);
		const Vec3 d_mr = element_displacement(scn.nodes.comm_rx, 1);

		struct Path
		{
			const Scatterer* scatterer;
			Complex gain;
		};
		std::vector<Path> echoes;
		std::vector<Path> links;
		for (const auto& s : scn.scatterers)
		{
			if (s.sensing_target)
			{
				const auto path = s.mobile() ? detail::mobile_path(scn, s, t) : detail::static_path(scn, s);
				echoes.push_back({&s, detail::echo_tap(scn, path, d_tx, d_echo).amplitude});
			}
			if (s.comm_cluster)
			{
				const RaySet set = draw_ray_set(s, scn.carrier, seed);
				links.push_back({&s, detail::cluster_tap(scn, s, set, s.mobile(), t, d_tx, d_mr).amplitude});
			}
		}
		if (echoes.empty() || links.empty())
		{
			throw UndefinedCorrelationError("cross-correlation needs sensing targets and communication clusters");
		}

		const auto moments = detail::run_ensemble(n_mc, 1, options.threads, [&](std::size_t n, std::vector<Complex>& values) {
			auto leg_phase = [&](const Scatterer& s) {
				RandomStream rng(stream_seed(seed, s.id, "bs-leg-phase", n));
				return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
			};
			values[0] = {};
			values[1] = {};
			for (const auto& e : echoes) { values[0] += e.gain * leg_phase(*e.scatterer); }
			for (const auto& l : links) { values[1] += l.gain * leg_phase(*l.scatterer); }
		});

		std::vector<Complex> rho;
		std::vector<double> se;
		detail::finish(moments, rho, se);
		return {rho[0], se[0], n_mc};
	}
}

#endif
