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

// Communication channel: BS transmit array -> (LoS | cluster) -> mobile receiver.
//
// Each cluster contributes a single tap whose delay follows the centroid
// legs; its I rays only differ in phase. Ray sub-scatterer positions and
// random ray phases form a RaySet, drawn once per realization and reused for
// every antenna pair and time instant.

#ifndef ISAC_COMM_CHANNEL_HPP
#define ISAC_COMM_CHANNEL_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "isac/errors.hpp"
#include "isac/geometry.hpp"
#include "isac/rng.hpp"
#include "isac/scenario.hpp"
#include "isac/tap.hpp"

namespace isac
{
	/// One-way free-space gain lambda^2 / ((4 pi)^2 xi^2).
	inline double friis_gain(double lambda, double xi)
	{
		if (!(xi > 0.0)) { throw DegenerateGeometryError("path length must be positive"); }
		constexpr double four_pi = 4.0 * std::numbers::pi;
		return lambda * lambda / (four_pi * four_pi * xi * xi);
	}

	/// lambda^2 P / ((4 pi)^2 (xi_T + xi_R)^2); note the sum of the legs, not the product.
	inline double cluster_gain(double lambda, double power, double xi_t, double xi_r)
	{
		if (!(power >= 0.0)) { throw DomainError("cluster power must be >= 0"); }
		const double length = xi_t + xi_r;
		if (!(length > 0.0)) { throw DegenerateGeometryError("cluster path length must be positive"); }
		constexpr double four_pi = 4.0 * std::numbers::pi;
		return lambda * lambda * power / (four_pi * four_pi * length * length);
	}

	/// Ray geometry and random ray phases of one cluster within one realization.
	struct RaySet
	{
		std::string cluster_id;
		std::vector<RayPoint> rays;
		std::vector<double> phases; ///< uniform on [0, 2 pi)

		friend bool operator==(const RaySet&, const RaySet&) = default;
	};

	/// Stream indices of one realization; phases and placements may be redrawn independently.
	struct RayDraw
	{
		std::uint64_t placement_index{0};
		std::uint64_t phase_index{0};
	};

	inline std::vector<double> draw_ray_phases(const Scatterer& cluster, int count, std::uint64_t seed,
											   std::uint64_t index = 0)
	{
		RandomStream rng(stream_seed(seed, cluster.id, "ray-phase", index));
		std::vector<double> phases(static_cast<std::size_t>(count));
		for (auto& phi : phases) { phi = rng.uniform(0.0, 2.0 * std::numbers::pi); }
		return phases;
	}

	inline RaySet draw_ray_set(const Scatterer& cluster, const CarrierConfig& carrier, std::uint64_t seed,
							   RayDraw draw = {})
	{
		RaySet set;
		set.cluster_id = cluster.id;
		set.rays = realize_rays(cluster, carrier, seed, draw.placement_index);
		set.phases = draw_ray_phases(cluster, carrier.ray_count, seed, draw.phase_index);
		return set;
	}

	/// Ray sets of every communication cluster, in scenario order.
	inline std::vector<RaySet> draw_ray_sets(const Scenario& scn, std::uint64_t seed, RayDraw draw = {})
	{
		std::vector<RaySet> sets;
		for (const auto& s : scn.scatterers)
		{
			if (s.comm_cluster) { sets.push_back(draw_ray_set(s, scn.carrier, seed, draw)); }
		}
		return sets;
	}

	/**
	 * Deterministic part of a cluster tap: gain, delay and the per-ray phasors
	 * without the random ray phase. The tap amplitude is
	 * sqrt(gain) / sqrt(I) * sum_i exp(j phi_i) * ray_terms[i].
	 */
	struct ClusterResponse
	{
		double gain{};
		double delay{};
		std::vector<Complex> ray_terms;

		[[nodiscard]] Complex combine(const std::vector<double>& phases) const
		{
			Complex sum{};
			for (std::size_t i = 0; i < ray_terms.size(); ++i) { sum += std::polar(1.0, phases[i]) * ray_terms[i]; }
			return std::sqrt(gain / static_cast<double>(ray_terms.size())) * sum;
		}
	};

	namespace detail
	{
		/**
		 * Shared kernel of the static and mobile cluster paths. A static
		 * cluster is evaluated with zero velocity, which turns every
		 * cluster-motion factor into exp(j 0).
		 *
		 * As in the sensing channel, the propagation phase of each ray uses its
		 * path length at t = 0 and motion enters only through the Doppler
		 * factors <-v_c t, e_T> and <(v_R - v_c) t, e_R>.
		 */
		inline ClusterResponse cluster_response(const Scenario& scn, const Scatterer& cluster,
												const std::vector<RayPoint>& rays, bool moving, double t,
												const Vec3& d_tx, const Vec3& d_rx)
		{
			const Vec3& bs = scn.nodes.bs_tx.phase_center;
			const Vec3 mr_now = scn.nodes.comm_rx_position(t);
			const Vec3& mr_initial = scn.nodes.comm_rx.phase_center;
			const double k = scn.carrier.wavenumber();

			const Vec3 centre_now = moving ? propagate(cluster.initial_position, cluster.motion, t) : cluster.initial_position;
			const Vec3 v_cluster = moving ? cluster.motion.velocity() : Vec3{};
			const Vec3 tx_shift = -(t * v_cluster);
			const Vec3 rx_shift = t * (scn.nodes.comm_rx_motion.velocity() - v_cluster);

			ClusterResponse out;
			const double xi_t = angles_and_distance(bs, centre_now).distance;
			const double xi_r = angles_and_distance(mr_now, centre_now).distance;
			out.gain = cluster_gain(scn.wavelength(), scn.cluster_power(cluster), xi_t, xi_r);
			out.delay = (xi_t + xi_r) / scn.carrier.speed_of_light;

			out.ray_terms.reserve(rays.size());
			for (const auto& ray : rays)
			{
				const Vec3 point_now = centre_now + ray.offset;
				const Vec3 point_initial = cluster.initial_position + ray.offset;
				const Vec3 e_t = angles_and_distance(bs, point_now).direction();
				const Vec3 e_r = angles_and_distance(mr_now, point_now).direction();
				const double initial_length = angles_and_distance(bs, point_initial).distance +
											  angles_and_distance(mr_initial, point_initial).distance;
				const double phase = -k * initial_length + k * dot(e_t, d_tx) + k * dot(tx_shift, e_t) +
									 k * dot(e_r, d_rx) + k * dot(rx_shift, e_r);
				out.ray_terms.push_back(std::polar(1.0, phase));
			}
			return out;
		}

		inline Tap cluster_tap(const Scenario& scn, const Scatterer& cluster, const RaySet& set, bool moving, double t,
							   const Vec3& d_tx, const Vec3& d_rx)
		{
			if (set.rays.empty() || set.rays.size() != set.phases.size())
			{
				throw ConfigError("ray set of '" + set.cluster_id + "' is inconsistent");
			}
			const ClusterResponse r = cluster_response(scn, cluster, set.rays, moving, t, d_tx, d_rx);
			return {r.combine(set.phases), r.delay,
					{moving ? PathKind::MobileCluster : PathKind::StaticCluster, cluster.id}};
		}
	}

	inline Tap los_tap_at(const Scenario& scn, double t, const Vec3& d_tx, const Vec3& d_rx)
	{
		const Vec3& bs = scn.nodes.bs_tx.phase_center;
		const double k = scn.carrier.wavenumber();
		const LinkGeometry leg = angles_and_distance(bs, scn.nodes.comm_rx_position(t));
		const Vec3 e_t = leg.direction();
		const double initial_length = angles_and_distance(bs, scn.nodes.comm_rx.phase_center).distance;
		const Vec3 moved = t * scn.nodes.comm_rx_motion.velocity();

		const double phase = -k * initial_length + k * dot(e_t, d_tx) + k * dot(-e_t, d_rx) + k * dot(moved, -e_t);
		return {std::sqrt(friis_gain(scn.wavelength(), leg.distance)) * std::polar(1.0, phase),
				leg.distance / scn.carrier.speed_of_light, {PathKind::LineOfSight, "LoS"}};
	}

	inline Tap static_cluster_tap_at(const Scenario& scn, const RaySet& set, double t, const Vec3& d_tx,
									 const Vec3& d_rx)
	{
		return detail::cluster_tap(scn, scn.scatterer(set.cluster_id), set, false, t, d_tx, d_rx);
	}

	inline Tap mobile_cluster_tap_at(const Scenario& scn, const RaySet& set, double t, const Vec3& d_tx,
									 const Vec3& d_rx)
	{
		return detail::cluster_tap(scn, scn.scatterer(set.cluster_id), set, true, t, d_tx, d_rx);
	}

	/// LoS tap, then one tap per cluster in ray-set order (static clusters first).
	inline std::vector<Tap> comm_taps_at(const Scenario& scn, const std::vector<RaySet>& sets, double t,
										 const Vec3& d_tx, const Vec3& d_rx)
	{
		std::vector<Tap> taps{los_tap_at(scn, t, d_tx, d_rx)};
		for (const bool moving : {false, true})
		{
			for (const auto& set : sets)
			{
				const Scatterer& c = scn.scatterer(set.cluster_id);
				if (c.mobile() == moving) { taps.push_back(detail::cluster_tap(scn, c, set, moving, t, d_tx, d_rx)); }
			}
		}
		return taps;
	}

	// Antenna-index API (1-based p and q).

	inline Tap los_tap(const Scenario& scn, double t, int p, int q)
	{
		return los_tap_at(scn, t, element_displacement(scn.nodes.bs_tx, p), element_displacement(scn.nodes.comm_rx, q));
	}

	/// Cluster treated as static (its motion is ignored).
	inline Tap static_cluster_tap(const Scenario& scn, const RaySet& set, double t, int p, int q)
	{
		return static_cluster_tap_at(scn, set, t, element_displacement(scn.nodes.bs_tx, p),
									 element_displacement(scn.nodes.comm_rx, q));
	}

	inline Tap mobile_cluster_tap(const Scenario& scn, const RaySet& set, double t, int p, int q)
	{
		return mobile_cluster_tap_at(scn, set, t, element_displacement(scn.nodes.bs_tx, p),
									 element_displacement(scn.nodes.comm_rx, q));
	}

	struct CommCir : CirMatrix
	{
		std::uint64_t seed{};
	};

	inline CommCir comm_cir(const Scenario& scn, std::uint64_t realization_seed, double t)
	{
		const std::vector<RaySet> sets = draw_ray_sets(scn, realization_seed);
		CommCir cir;
		cir.t = t;
		cir.seed = realization_seed;
		cir.tx_count = scn.nodes.bs_tx.element_count;
		cir.rx_count = scn.nodes.comm_rx.element_count;
		cir.taps.reserve(static_cast<std::size_t>(cir.tx_count * cir.rx_count));
		for (int p = 1; p <= cir.tx_count; ++p)
		{
			const Vec3 d_tx = element_displacement(scn.nodes.bs_tx, p);
			for (int q = 1; q <= cir.rx_count; ++q)
			{
				cir.taps.push_back(comm_taps_at(scn, sets, t, d_tx, element_displacement(scn.nodes.comm_rx, q)));
			}
		}
		return cir;
	}
}

#endif
