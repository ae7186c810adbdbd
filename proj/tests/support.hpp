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

// Scenario builders shared by the test programs.

#ifndef ISAC_TESTS_SUPPORT_HPP
#define ISAC_TESTS_SUPPORT_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "isac/bundled_scenario.hpp"
#include "isac/scenario.hpp"
#include "isac/scenario_json.hpp"

namespace isac::test
{
	inline constexpr double kPi = std::numbers::pi;

	inline double deg(double d) { return d * kPi / 180.0; }

	/// Nodes of the reference vehicular layout with no scatterers (bistatic sensing).
	inline Scenario reference_layout()
	{
		Scenario scn;
		scn.carrier = {28e9, 3e8, 20};
		const double lambda = scn.wavelength();
		scn.nodes.bs_tx = {4, lambda / 2.0, deg(60), deg(45), {0.0, 0.0, 30.0}};
		scn.nodes.echo_rx = {4, lambda / 2.0, deg(60), deg(45), {100.0, -30.0, 30.0}};
		scn.nodes.comm_rx = {6, lambda / 2.0, deg(45), deg(45), {150.0, 0.0, 0.0}};
		scn.nodes.comm_rx_motion = {5.0, -kPi / 6.0};
		scn.nodes.terminal_rcs = 100.0;
		scn.sensing_mode = SensingMode::Bistatic;
		scn.seed = 11;
		return scn;
	}

	inline Scatterer target(std::string id, Vec3 position, double rcs, double speed = 0.0, double heading = 0.0)
	{
		Scatterer s;
		s.id = std::move(id);
		s.initial_position = position;
		s.motion = {speed, heading};
		s.mobility = speed > 0.0 ? Mobility::Mobile : Mobility::Static;
		s.sensing_target = true;
		s.rcs = rcs;
		return s;
	}

	inline Scatterer cluster(std::string id, Vec3 position, double power, double radius, double speed = 0.0,
							 double heading = 0.0)
	{
		Scatterer s;
		s.id = std::move(id);
		s.initial_position = position;
		s.motion = {speed, heading};
		s.mobility = speed > 0.0 ? Mobility::Mobile : Mobility::Static;
		s.comm_cluster = true;
		s.cluster_power = power;
		s.ray_extent = radius;
		return s;
	}

	inline Scatterer shared(std::string id, Vec3 position, double rcs, double power, double radius,
							double speed = 0.0, double heading = 0.0)
	{
		Scatterer s = cluster(std::move(id), position, power, radius, speed, heading);
		s.sensing_target = true;
		s.rcs = rcs;
		return s;
	}

	/// Same scenario with every velocity set to zero.
	inline Scenario frozen(Scenario scn)
	{
		scn.nodes.comm_rx_motion.speed = 0.0;
		for (auto& s : scn.scatterers)
		{
			s.motion.speed = 0.0;
			s.mobility = Mobility::Static;
		}
		return scn;
	}

	inline Scenario bundled() { return parse_scenario(bundled_scenario_json()); }
}

#endif
