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

// Sensing channel: BS transmit array -> target -> echo receive array.
//
// Every (p, q^e) pair carries one tap for the mobile receiver seen as a
// radar target, one per static target and one per mobile target. Tap
// amplitudes follow the bistatic radar equation; the channel is fully
// deterministic.

#ifndef ISAC_SENSING_CHANNEL_HPP
#define ISAC_SENSING_CHANNEL_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "isac/errors.hpp"
#include "isac/geometry.hpp"
#include "isac/scenario.hpp"
#include "isac/tap.hpp"

namespace isac
{
	/// Two-way power gain lambda^2 sigma / ((4 pi)^3 (xi_T xi_R)^2).
	inline double radar_gain(double lambda, double sigma, double xi_t, double xi_r)
	{
		if (!(xi_t > 0.0) || !(xi_r > 0.0)) { throw DegenerateGeometryError("radar leg length must be positive"); }
		if (!(sigma > 0.0)) { throw DomainError("radar cross section must be positive"); }
		constexpr double four_pi = 4.0 * std::numbers::pi;
		const double legs = xi_t * xi_r;
		return lambda * lambda * sigma / (four_pi * four_pi * four_pi * legs * legs);
	}

	struct SensingCir : CirMatrix
	{
	};

	/// One reflecting point as seen by the sensing link at time t.
	struct EchoPath
	{
		Vec3 position;         ///< at t
		Vec3 initial_position; ///< at t = 0
		Vec3 velocity;
		double t{};
		double sigma{};
		TapSource source;
	};

	namespace detail
	{
		/**
		 * Echo tap for element offsets `d_tx`, `d_rx`.
		 *
		 * Motion enters the phase through the two Doppler factors
		 * <-v t, e_T(t)> and <-v t, e_Re(t)>; the propagation phase uses the
		 * path length at t = 0 so the displacement is not counted twice. Gain,
		 * delay and direction vectors use the exact geometry at t.
		 */
		inline Tap echo_tap(const Scenario& scn, const EchoPath& path, const Vec3& d_tx, const Vec3& d_rx)
		{
			const Vec3& tx = scn.nodes.bs_tx.phase_center;
			const Vec3& rx = scn.nodes.echo_rx.phase_center;
			const double lambda = scn.wavelength();
			const double k = scn.carrier.wavenumber();

			const LinkGeometry leg_t = angles_and_distance(tx, path.position);
			const LinkGeometry leg_r = angles_and_distance(rx, path.position);
			const Vec3 e_t = leg_t.direction();
			const Vec3 e_r = leg_r.direction();
			const double initial_length = angles_and_distance(tx, path.initial_position).distance +
										  angles_and_distance(rx, path.initial_position).distance;
			const Vec3 shift = -(path.t * path.velocity);

			const double phase = -k * initial_length + k * dot(e_t, d_tx) + k * dot(e_r, d_rx) + k * dot(shift, e_t) +
								 k * dot(shift, e_r);

			Tap tap;
			tap.amplitude =
				std::sqrt(radar_gain(lambda, path.sigma, leg_t.distance, leg_r.distance)) * std::polar(1.0, phase);
			tap.delay = (leg_t.distance + leg_r.distance) / scn.carrier.speed_of_light;
			tap.source = path.source;
			return tap;
		}

		inline EchoPath terminal_path(const Scenario& scn, double t)
		{
			const auto& n = scn.nodes;
			return {n.comm_rx_position(t), n.comm_rx.phase_center, n.comm_rx_motion.velocity(), t, n.terminal_rcs,
					{PathKind::Terminal, "MR"}};
		}

		inline EchoPath static_path(const Scenario& scn, const Scatterer& s)
		{
			return {s.initial_position, s.initial_position, Vec3{}, 0.0, scn.target_rcs(s),
					{PathKind::StaticTarget, s.id}};
		}

		inline EchoPath mobile_path(const Scenario& scn, const Scatterer& s, double t)
		{
			return {propagate(s.initial_position, s.motion, t), s.initial_position, s.motion.velocity(), t,
					scn.target_rcs(s), {PathKind::MobileTarget, s.id}};
		}
	}

	// Element-offset variants; the statistics sweeps place virtual elements.

	inline Tap terminal_tap_at(const Scenario& scn, double t, const Vec3& d_tx, const Vec3& d_rx)
	{
		return detail::echo_tap(scn, detail::terminal_path(scn, t), d_tx, d_rx);
	}

	inline std::vector<Tap> static_target_taps_at(const Scenario& scn, const Vec3& d_tx, const Vec3& d_rx)
	{
		std::vector<Tap> taps;
		for (const auto& s : scn.scatterers)
		{
			if (s.sensing_target && !s.mobile()) { taps.push_back(detail::echo_tap(scn, detail::static_path(scn, s), d_tx, d_rx)); }
		}
		return taps;
	}

	inline std::vector<Tap> mobile_target_taps_at(const Scenario& scn, double t, const Vec3& d_tx, const Vec3& d_rx)
	{
		std::vector<Tap> taps;
		for (const auto& s : scn.scatterers)
		{
			if (s.sensing_target && s.mobile())
			{
				taps.push_back(detail::echo_tap(scn, detail::mobile_path(scn, s, t), d_tx, d_rx));
			}
		}
		return taps;
	}

	/// Terminal, static and mobile taps, in that order.
	inline std::vector<Tap> sensing_taps_at(const Scenario& scn, double t, const Vec3& d_tx, const Vec3& d_rx)
	{
		std::vector<Tap> taps{terminal_tap_at(scn, t, d_tx, d_rx)};
		auto fixed = static_target_taps_at(scn, d_tx, d_rx);
		auto moving = mobile_target_taps_at(scn, t, d_tx, d_rx);
		taps.insert(taps.end(), fixed.begin(), fixed.end());
		taps.insert(taps.end(), moving.begin(), moving.end());
		return taps;
	}

	// Antenna-index API (1-based p and q^e).

	inline Tap terminal_tap(const Scenario& scn, double t, int p, int qe)
	{
		return terminal_tap_at(scn, t, element_displacement(scn.nodes.bs_tx, p),
							   element_displacement(scn.nodes.echo_rx, qe));
	}

	/// Static-target taps; time-invariant, hence no time argument.
	inline std::vector<Tap> static_target_taps(const Scenario& scn, int p, int qe)
	{
		return static_target_taps_at(scn, element_displacement(scn.nodes.bs_tx, p),
									 element_displacement(scn.nodes.echo_rx, qe));
	}

	inline std::vector<Tap> mobile_target_taps(const Scenario& scn, double t, int p, int qe)
	{
		return mobile_target_taps_at(scn, t, element_displacement(scn.nodes.bs_tx, p),
									 element_displacement(scn.nodes.echo_rx, qe));
	}

	inline SensingCir sensing_cir(const Scenario& scn, double t)
	{
		SensingCir cir;
		cir.t = t;
		cir.tx_count = scn.nodes.bs_tx.element_count;
		cir.rx_count = scn.nodes.echo_rx.element_count;
		cir.taps.reserve(static_cast<std::size_t>(cir.tx_count * cir.rx_count));
		for (int p = 1; p <= cir.tx_count; ++p)
		{
			const Vec3 d_tx = element_displacement(scn.nodes.bs_tx, p);
			for (int q = 1; q <= cir.rx_count; ++q)
			{
				cir.taps.push_back(sensing_taps_at(scn, t, d_tx, element_displacement(scn.nodes.echo_rx, q)));
			}
		}
		return cir;
	}
}

#endif
