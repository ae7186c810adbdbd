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

// Scenario documents (JSON).
//
//   {
//     "carrier":  {"frequency_hz": 28e9, "ray_count": 20, "speed_of_light": 3e8},
//     "nodes": {
//       "bs":       {"height": 30, "elements": 4, "spacing_wavelengths": 0.5,
//                    "azimuth_deg": 60, "elevation_deg": 45},
//       "echo_rx":  {"position": [100, -30, 30], "elements": 4, ...},
//       "comm_rx":  {"xi": 150, "elements": 6, ..., "speed": 5, "heading_deg": -30},
//       "terminal": {"type": "automobile"}            // or {"rcs": 100}
//     },
//     "sensing_mode": "bistatic",                     // or "monostatic"
//     "targets":  [{"id": "t1", "position": [x, y, z], "type": "adult",
//                   "speed": 1.5, "heading_deg": 90}],
//     "clusters": [{"id": "c1", "position": [x, y, z], "power": 1, "radius": 5}],
//     "shared":   [{"id": "s1", "position": [x, y, z],
//                   "target": {"rcs": 40}, "cluster": {"power": 1, "radius": 4}}],
//     "rcs_overrides": {"t1": 2.5},
//     "seed": 7,
//     "cluster_power": "normalized"                   // optional, or "explicit"
//   }
//
// Angles are degrees and lengths meters. Array spacing is given either as
// "spacing_m" or as "spacing_wavelengths". A scatterer is mobile when it
// has a non-zero speed unless "mobile" says otherwise. The echo array may be
// omitted in monostatic mode, where it is the BS array.

#ifndef ISAC_SCENARIO_JSON_HPP
#define ISAC_SCENARIO_JSON_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "isac/errors.hpp"
#include "isac/scenario.hpp"

namespace isac
{
	namespace detail
	{
		using Json = nlohmann::json;

		inline double deg2rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

		inline const Json& require(const Json& obj, const char* key, std::string_view where)
		{
			if (!obj.is_object() || !obj.contains(key))
			{
				throw ParseError(std::string(where) + ": missing key '" + key + "'");
			}
			return obj.at(key);
		}

		inline double number(const Json& obj, const char* key, std::string_view where)
		{
			const Json& v = require(obj, key, where);
			if (!v.is_number()) { throw ParseError(std::string(where) + "." + key + ": expected a number"); }
			return v.get<double>();
		}

		inline double number_or(const Json& obj, const char* key, double fallback, std::string_view where)
		{
			return obj.contains(key) ? number(obj, key, where) : fallback;
		}

		inline Vec3 position(const Json& obj, std::string_view where)
		{
			const Json& v = require(obj, "position", where);
			if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
			{
				throw ParseError(std::string(where) + ".position: expected [x, y, z]");
			}
			return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
		}

		inline UlaConfig array(const Json& obj, double wavelength, std::string_view where)
		{
			UlaConfig ula;
			const Json& m = require(obj, "elements", where);
			if (!m.is_number_integer()) { throw ParseError(std::string(where) + ".elements: expected an integer"); }
			ula.element_count = m.get<int>();
			if (obj.contains("spacing_m")) { ula.spacing = number(obj, "spacing_m", where); }
			else if (obj.contains("spacing_wavelengths"))
			{
				ula.spacing = number(obj, "spacing_wavelengths", where) * wavelength;
			}
			else { throw ParseError(std::string(where) + ": missing 'spacing_m' or 'spacing_wavelengths'"); }
			ula.azimuth_orientation = deg2rad(number_or(obj, "azimuth_deg", 0.0, where));
			ula.elevation_orientation = deg2rad(number_or(obj, "elevation_deg", 0.0, where));
			return ula;
		}

		inline MotionState motion(const Json& obj, std::string_view where)
		{
			return {number_or(obj, "speed", 0.0, where), deg2rad(number_or(obj, "heading_deg", 0.0, where))};
		}

		inline std::string identifier(const Json& obj, std::string_view where)
		{
			const Json& v = require(obj, "id", where);
			if (!v.is_string()) { throw ParseError(std::string(where) + ".id: expected a string"); }
			return v.get<std::string>();
		}

		inline Scatterer scatterer_base(const Json& obj, std::string_view where)
		{
			Scatterer s;
			s.id = identifier(obj, where);
			s.initial_position = position(obj, where);
			s.motion = motion(obj, where);
			bool mobile = s.motion.speed != 0.0;
			if (obj.contains("mobile"))
			{
				if (!obj.at("mobile").is_boolean()) { throw ParseError(std::string(where) + ".mobile: expected bool"); }
				mobile = obj.at("mobile").get<bool>();
			}
			s.mobility = mobile ? Mobility::Mobile : Mobility::Static;
			return s;
		}

		// RCS from either an explicit "rcs" or a registered "type".
		inline std::optional<double> rcs_of(const Json& obj, const RcsRegistry& registry, std::string_view where)
		{
			if (obj.contains("rcs")) { return number(obj, "rcs", where); }
			if (obj.contains("type"))
			{
				if (!obj.at("type").is_string()) { throw ParseError(std::string(where) + ".type: expected a string"); }
				try
				{
					return registry.lookup(obj.at("type").get<std::string>());
				}
				catch (const LookupError& e)
				{
					throw ParseError(std::string(where) + ": " + e.what());
				}
			}
			return std::nullopt;
		}

		inline void cluster_fields(Scatterer& s, const Json& obj, std::string_view where)
		{
			s.comm_cluster = true;
			if (obj.contains("power")) { s.cluster_power = number(obj, "power", where); }
			if (obj.contains("radius")) { s.ray_extent = number(obj, "radius", where); }
		}

		inline const Json& list(const Json& doc, const char* key)
		{
			static const Json empty = Json::array();
			if (!doc.contains(key)) { return empty; }
			const Json& v = doc.at(key);
			if (!v.is_array()) { throw ParseError(std::string(key) + ": expected an array"); }
			return v;
		}
	}

	/// Builds a scenario from a JSON document; throws ParseError on malformed input.
	inline Scenario parse_scenario(std::string_view text)
	{
		using detail::Json;
		Json doc;
		try
		{
			doc = Json::parse(text.begin(), text.end());
		}
		catch (const nlohmann::json::exception& e)
		{
			throw ParseError(std::string("invalid JSON: ") + e.what());
		}
		if (!doc.is_object()) { throw ParseError("scenario must be a JSON object"); }

		static const std::set<std::string> known = {"carrier", "nodes",         "sensing_mode", "targets", "clusters",
													"shared",  "rcs_overrides", "seed",         "cluster_power"};
		for (const auto& item : doc.items())
		{
			if (!known.contains(item.key())) { throw ParseError("unknown top-level key '" + item.key() + "'"); }
		}

		Scenario scn;
		try
		{
			const Json& carrier = detail::require(doc, "carrier", "scenario");
			scn.carrier.frequency = detail::number(carrier, "frequency_hz", "carrier");
			scn.carrier.speed_of_light = detail::number_or(carrier, "speed_of_light", kDefaultSpeedOfLight, "carrier");
			const double rays = detail::number_or(carrier, "ray_count", 1.0, "carrier");
			if (rays != std::floor(rays)) { throw ParseError("carrier.ray_count: expected an integer"); }
			scn.carrier.ray_count = static_cast<int>(rays);
			if (!(scn.carrier.frequency > 0.0) || !(scn.carrier.speed_of_light > 0.0))
			{
				throw ParseError("carrier: frequency and speed of light must be positive");
			}
			const double lambda = scn.carrier.wavelength();

			const Json& mode = detail::require(doc, "sensing_mode", "scenario");
			if (mode == "monostatic") { scn.sensing_mode = SensingMode::Monostatic; }
			else if (mode == "bistatic") { scn.sensing_mode = SensingMode::Bistatic; }
			else { throw ParseError("sensing_mode: expected \"monostatic\" or \"bistatic\""); }

			const Json& nodes = detail::require(doc, "nodes", "scenario");
			const Json& bs = detail::require(nodes, "bs", "nodes");
			scn.nodes.bs_tx = detail::array(bs, lambda, "nodes.bs");
			scn.nodes.bs_tx.phase_center = {0.0, 0.0, detail::number(bs, "height", "nodes.bs")};

			if (nodes.contains("echo_rx"))
			{
				const Json& echo = nodes.at("echo_rx");
				scn.nodes.echo_rx = detail::array(echo, lambda, "nodes.echo_rx");
				scn.nodes.echo_rx.phase_center = detail::position(echo, "nodes.echo_rx");
			}
			else if (scn.sensing_mode == SensingMode::Monostatic) { scn.nodes.echo_rx = scn.nodes.bs_tx; }
			else { throw ParseError("nodes: bistatic sensing requires 'echo_rx'"); }

			const Json& mr = detail::require(nodes, "comm_rx", "nodes");
			scn.nodes.comm_rx = detail::array(mr, lambda, "nodes.comm_rx");
			scn.nodes.comm_rx.phase_center = {detail::number(mr, "xi", "nodes.comm_rx"), 0.0, 0.0};
			scn.nodes.comm_rx_motion = detail::motion(mr, "nodes.comm_rx");

			if (nodes.contains("terminal"))
			{
				const auto sigma = detail::rcs_of(nodes.at("terminal"), scn.rcs_registry, "nodes.terminal");
				if (!sigma) { throw ParseError("nodes.terminal: expected 'rcs' or 'type'"); }
				scn.nodes.terminal_rcs = *sigma;
			}

			for (const Json& t : detail::list(doc, "targets"))
			{
				Scatterer s = detail::scatterer_base(t, "targets[]");
				s.sensing_target = true;
				s.rcs = detail::rcs_of(t, scn.rcs_registry, "targets[" + s.id + "]");
				scn.scatterers.push_back(std::move(s));
			}
			for (const Json& c : detail::list(doc, "clusters"))
			{
				Scatterer s = detail::scatterer_base(c, "clusters[]");
				detail::cluster_fields(s, c, "clusters[" + s.id + "]");
				scn.scatterers.push_back(std::move(s));
			}
			for (const Json& sh : detail::list(doc, "shared"))
			{
				Scatterer s = detail::scatterer_base(sh, "shared[]");
				const std::string where = "shared[" + s.id + "]";
				s.sensing_target = true;
				s.rcs = detail::rcs_of(detail::require(sh, "target", where), scn.rcs_registry, where + ".target");
				detail::cluster_fields(s, detail::require(sh, "cluster", where), where + ".cluster");
				scn.scatterers.push_back(std::move(s));
			}

			if (doc.contains("rcs_overrides"))
			{
				const Json& o = doc.at("rcs_overrides");
				if (!o.is_object()) { throw ParseError("rcs_overrides: expected an object"); }
				for (const auto& item : o.items())
				{
					if (!item.value().is_number()) { throw ParseError("rcs_overrides." + item.key() + ": expected a number"); }
					scn.rcs_registry.set_override(item.key(), item.value().get<double>());
				}
			}

			if (doc.contains("seed"))
			{
				const Json& seed = doc.at("seed");
				if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
				{
					throw ParseError("seed: expected a non-negative integer");
				}
				scn.seed = seed.get<std::uint64_t>();
			}

			if (doc.contains("cluster_power"))
			{
				const Json& law = doc.at("cluster_power");
				if (law == "normalized") { scn.power_law = ClusterPowerLaw::Normalized; }
				else if (law == "explicit") { scn.power_law = ClusterPowerLaw::Explicit; }
				else { throw ParseError("cluster_power: expected \"normalized\" or \"explicit\""); }
			}
		}
		catch (const nlohmann::json::exception& e)
		{
			throw ParseError(std::string("malformed scenario: ") + e.what());
		}
		catch (const ConfigError& e)
		{
			throw ParseError(e.what());
		}
		return scn;
	}

	inline Scenario load_scenario(const std::string& path)
	{
		std::ifstream in(path, std::ios::binary);
		if (!in) { throw ParseError("cannot open scenario file '" + path + "'"); }
		std::ostringstream buf;
		buf << in.rdbuf();
		return parse_scenario(buf.str());
	}
}

#endif
