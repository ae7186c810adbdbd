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

#ifndef ISAC_SCENARIO_HPP
#define ISAC_SCENARIO_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "isac/errors.hpp"
#include "isac/geometry.hpp"
#include "isac/rng.hpp"

namespace isac
{
	/// Propagation speed used by default [m/s].
	inline constexpr double kDefaultSpeedOfLight = 3.0e8;

	struct CarrierConfig
	{
		double frequency{};                          ///< f_c [Hz]
		double speed_of_light{kDefaultSpeedOfLight}; ///< c [m/s]
		int ray_count{1};                            ///< I, rays per communication cluster

		[[nodiscard]] double wavelength() const noexcept { return speed_of_light / frequency; }
		[[nodiscard]] double wavenumber() const noexcept { return 2.0 * std::numbers::pi / wavelength(); }
	};

	// ------------------------------------------------------------------------
	// Radar cross sections
	// ------------------------------------------------------------------------

	/**
	 * Radar cross sections by target type, plus per-scatterer overrides.
	 *
	 * Type names are matched case-insensitively, with '_' and '-' treated as
	 * spaces ("pickup_truck" == "Pickup truck").
	 */
	class RcsRegistry
	{
	public:
		/// Registry pre-filled with typical values for common targets [m^2].
		static RcsRegistry typical()
		{
			RcsRegistry r;
			r.add_type("automobile", 100.0);
			r.add_type("pickup truck", 200.0);
			r.add_type("adult", 1.0);
			r.add_type("bird", 0.01);
			r.add_type("insect", 1e-5);
			r.add_type("missile", 0.5);
			r.add_type("jumbo jet airliner", 100.0);
			r.add_type("large bomber", 40.0);
			r.add_type("small fighter aircraft", 2.0);
			return r;
		}

		void add_type(std::string_view name, double sigma)
		{
			if (!(sigma > 0.0)) { throw ConfigError("RCS of type '" + std::string(name) + "' must be positive"); }
			types_[normalize(name)] = sigma;
		}

		[[nodiscard]] double lookup(std::string_view name) const
		{
			const auto it = types_.find(normalize(name));
			if (it == types_.end()) { throw LookupError("unknown target type '" + std::string(name) + "'"); }
			return it->second;
		}

		[[nodiscard]] bool contains(std::string_view name) const { return types_.contains(normalize(name)); }

		void set_override(const std::string& scatterer_id, double sigma)
		{
			if (!(sigma > 0.0)) { throw ConfigError("RCS override for '" + scatterer_id + "' must be positive"); }
			overrides_[scatterer_id] = sigma;
		}

		[[nodiscard]] std::optional<double> override_for(const std::string& scatterer_id) const
		{
			const auto it = overrides_.find(scatterer_id);
			if (it == overrides_.end()) { return std::nullopt; }
			return it->second;
		}

		[[nodiscard]] const std::map<std::string, double>& overrides() const noexcept { return overrides_; }

	private:
		static std::string normalize(std::string_view name)
		{
			std::string out;
			out.reserve(name.size());
			for (const char c : name)
			{
				out.push_back(c == '_' || c == '-' ? ' ' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
			}
			return out;
		}

		std::map<std::string, double> types_;
		std::map<std::string, double> overrides_;
	};

	inline double lookup_rcs(const RcsRegistry& registry, std::string_view type_name)
	{
		return registry.lookup(type_name);
	}

	// ------------------------------------------------------------------------
	// Scatterers and node layout
	// ------------------------------------------------------------------------

	enum class Mobility
	{
		Static,
		Mobile
	};

	/**
	 * A physical scatterer. It is a sensing target, a communication cluster,
	 * or both; a scatterer with both roles is a shared cluster and both
	 * channels read the same position and motion from it.
	 */
	struct Scatterer
	{
		std::string id;
		Vec3 initial_position{};
		MotionState motion{};
		Mobility mobility{Mobility::Static};

		bool sensing_target{false};
		bool comm_cluster{false};

		std::optional<double> rcs;           ///< sigma [m^2], sensing role
		std::optional<double> cluster_power; ///< P_l before normalization, communication role
		std::optional<double> ray_extent;    ///< r_c [m], communication role

		[[nodiscard]] bool shared() const noexcept { return sensing_target && comm_cluster; }
		[[nodiscard]] bool mobile() const noexcept { return mobility == Mobility::Mobile; }

		[[nodiscard]] Vec3 position_at(double t) const noexcept
		{
			return mobile() ? propagate(initial_position, motion, t) : initial_position;
		}

		/// Velocity entering the Doppler terms; zero for static scatterers.
		[[nodiscard]] Vec3 velocity() const noexcept { return mobile() ? motion.velocity() : Vec3{}; }
	};

	enum class SensingMode
	{
		Monostatic,
		Bistatic
	};

	struct NodeLayout
	{
		UlaConfig bs_tx;  ///< centre at (0, 0, H_0)
		UlaConfig echo_rx;
		UlaConfig comm_rx; ///< centre at (xi_R, 0, 0) at t = 0
		MotionState comm_rx_motion;
		double terminal_rcs{100.0}; ///< sigma of the mobile receiver seen as a radar target

		[[nodiscard]] double bs_height() const noexcept { return bs_tx.phase_center.z; }
		[[nodiscard]] Vec3 comm_rx_position(double t) const noexcept
		{
			return propagate(comm_rx.phase_center, comm_rx_motion, t);
		}
	};

	enum class ClusterPowerLaw
	{
		Normalized, ///< P_l rescaled so that the communication clusters sum to 1
		Explicit    ///< P_l used as given
	};

	struct Scenario
	{
		CarrierConfig carrier;
		NodeLayout nodes;
		SensingMode sensing_mode{SensingMode::Bistatic};
		std::vector<Scatterer> scatterers;
		RcsRegistry rcs_registry{RcsRegistry::typical()};
		ClusterPowerLaw power_law{ClusterPowerLaw::Normalized};
		std::uint64_t seed{0};

		[[nodiscard]] double wavelength() const noexcept { return carrier.wavelength(); }

		[[nodiscard]] const Scatterer& scatterer(std::string_view id) const
		{
			const auto it =
				std::find_if(scatterers.begin(), scatterers.end(), [&](const Scatterer& s) { return s.id == id; });
			if (it == scatterers.end()) { throw ConfigError("no scatterer with id '" + std::string(id) + "'"); }
			return *it;
		}

		/// sigma of a sensing target after applying overrides.
		[[nodiscard]] double target_rcs(const Scatterer& s) const
		{
			if (const auto o = rcs_registry.override_for(s.id)) { return *o; }
			if (!s.rcs) { throw ConfigError("sensing target '" + s.id + "' has no RCS"); }
			return *s.rcs;
		}

		/// P_l of a communication cluster under the configured power law.
		[[nodiscard]] double cluster_power(const Scatterer& s) const
		{
			if (!s.cluster_power) { throw ConfigError("cluster '" + s.id + "' has no power"); }
			if (power_law == ClusterPowerLaw::Explicit) { return *s.cluster_power; }
			double total = 0.0;
			for (const auto& c : scatterers)
			{
				if (c.comm_cluster && c.cluster_power) { total += *c.cluster_power; }
			}
			return total > 0.0 ? *s.cluster_power / total : 0.0;
		}
	};

	// ------------------------------------------------------------------------
	// Validation
	// ------------------------------------------------------------------------

	struct Violation
	{
		std::string code;
		std::string detail;
	};

	namespace detail
	{
		inline bool nearly_equal(double a, double b) noexcept
		{
			return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
		}

		inline void check_array(const UlaConfig& ula, std::string_view name, std::vector<Violation>& out)
		{
			if (ula.element_count < 1)
			{
				out.push_back({"array-element-count", std::string(name) + ": element count must be >= 1"});
			}
			if (!(ula.spacing > 0.0))
			{
				out.push_back({"array-spacing-nonpositive", std::string(name) + ": element spacing must be > 0"});
			}
		}
	}

	/// Every broken invariant of `scenario`; empty when it is usable.
	inline std::vector<Violation> validate(const Scenario& scenario)
	{
		std::vector<Violation> out;
		const auto& carrier = scenario.carrier;
		const auto& nodes = scenario.nodes;

		if (!(carrier.frequency > 0.0)) { out.push_back({"carrier-frequency-nonpositive", "f_c must be > 0"}); }
		if (!(carrier.speed_of_light > 0.0)) { out.push_back({"speed-of-light-nonpositive", "c must be > 0"}); }
		if (carrier.ray_count < 1) { out.push_back({"ray-count-nonpositive", "ray count I must be >= 1"}); }

		if (!(nodes.bs_height() > 0.0)) { out.push_back({"bs-height-nonpositive", "H_0 must be > 0"}); }
		if (nodes.bs_tx.phase_center.x != 0.0 || nodes.bs_tx.phase_center.y != 0.0)
		{
			out.push_back({"bs-off-origin", "BS array centre must be at (0, 0, H_0)"});
		}
		detail::check_array(nodes.bs_tx, "bs_tx", out);
		detail::check_array(nodes.echo_rx, "echo_rx", out);
		detail::check_array(nodes.comm_rx, "comm_rx", out);

		const Vec3& mr = nodes.comm_rx.phase_center;
		if (!(mr.x > 0.0) || mr.y != 0.0 || mr.z != 0.0)
		{
			out.push_back({"comm-rx-off-axis", "mobile receiver must start at (xi_R, 0, 0) with xi_R > 0"});
		}
		if (nodes.comm_rx_motion.speed < 0.0) { out.push_back({"negative-speed", "comm_rx: speed must be >= 0"}); }
		if (!(nodes.terminal_rcs > 0.0)) { out.push_back({"terminal-rcs-nonpositive", "sigma_MR must be > 0"}); }

		if (scenario.sensing_mode == SensingMode::Monostatic)
		{
			const Vec3 d = nodes.echo_rx.phase_center - nodes.bs_tx.phase_center;
			if (d.norm() > 1e-9)
			{
				out.push_back({"monostatic-position-mismatch", "monostatic echo receiver must sit at (0, 0, H_0)"});
			}
			const auto& tx = nodes.bs_tx;
			const auto& rx = nodes.echo_rx;
			if (tx.element_count != rx.element_count || !detail::nearly_equal(tx.spacing, rx.spacing) ||
				!detail::nearly_equal(tx.azimuth_orientation, rx.azimuth_orientation) ||
				!detail::nearly_equal(tx.elevation_orientation, rx.elevation_orientation))
			{
				out.push_back({"monostatic-array-mismatch", "monostatic echo array must equal the BS array"});
			}
		}

		std::set<std::string> ids;
		for (const auto& s : scenario.scatterers)
		{
			const std::string who = "scatterer '" + s.id + "'";
			if (s.id.empty()) { out.push_back({"empty-id", "scatterer without id"}); }
			else if (!ids.insert(s.id).second) { out.push_back({"duplicate-id", who + " declared twice"}); }
			if (s.id == "MR" || s.id == "LoS")
			{
				out.push_back({"reserved-id", who + " uses a reserved id"});
			}
			if (!s.sensing_target && !s.comm_cluster) { out.push_back({"no-role", who + " has no role"}); }
			if (s.motion.speed < 0.0) { out.push_back({"negative-speed", who + ": speed must be >= 0"}); }
			if (s.mobility == Mobility::Static && s.motion.speed != 0.0)
			{
				out.push_back({"static-with-velocity", who + " is static but has a speed"});
			}
			if (s.sensing_target)
			{
				const auto sigma = scenario.rcs_registry.override_for(s.id) ? scenario.rcs_registry.override_for(s.id)
																			: s.rcs;
				if (!sigma) { out.push_back({"missing-rcs", who + " is a sensing target without RCS"}); }
				else if (!(*sigma > 0.0)) { out.push_back({"nonpositive-rcs", who + ": RCS must be > 0"}); }
			}
			if (s.comm_cluster)
			{
				if (!s.cluster_power)
				{
					out.push_back({"missing-cluster-power", who + " is a cluster without power"});
				}
				else if (!(*s.cluster_power >= 0.0))
				{
					out.push_back({"negative-cluster-power", who + ": cluster power must be >= 0"});
				}
				if (!s.ray_extent) { out.push_back({"missing-ray-extent", who + " is a cluster without ray extent"}); }
				else if (!(*s.ray_extent >= 0.0))
				{
					out.push_back({"negative-ray-extent", who + ": ray extent must be >= 0"});
				}
			}
		}
		return out;
	}

	// ------------------------------------------------------------------------
	// Ray sub-scatterers
	// ------------------------------------------------------------------------

	/// A ray's sub-scatterer, stored relative to the cluster centre so it co-moves with the cluster.
	struct RayPoint
	{
		Vec3 offset;

		[[nodiscard]] Vec3 position_at(const Scatterer& cluster, double t) const noexcept
		{
			return cluster.position_at(t) + offset;
		}
	};

	/**
	 * Places the I rays of a communication cluster uniformly inside the ball
	 * of radius r_c around its centre. The result depends only on
	 * (seed, cluster id, index, I, r_c).
	 */
	inline std::vector<RayPoint> realize_rays(const Scatterer& cluster, const CarrierConfig& carrier,
											  std::uint64_t seed, std::uint64_t index = 0)
	{
		if (!cluster.comm_cluster) { throw ConfigError("'" + cluster.id + "' is not a communication cluster"); }
		if (!cluster.ray_extent) { throw ConfigError("cluster '" + cluster.id + "' has no ray extent"); }
		if (carrier.ray_count < 1) { throw ConfigError("ray count must be >= 1"); }

		const double radius = *cluster.ray_extent;
		std::vector<RayPoint> rays(static_cast<std::size_t>(carrier.ray_count));
		if (radius == 0.0) { return rays; }

		RandomStream rng(stream_seed(seed, cluster.id, "ray-placement", index));
		for (auto& ray : rays)
		{
			const double r = radius * std::cbrt(rng.uniform());
			const double cos_polar = rng.uniform(-1.0, 1.0);
			const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
			const double sin_polar = std::sqrt(std::max(0.0, 1.0 - cos_polar * cos_polar));
			ray.offset = {r * sin_polar * std::cos(az), r * sin_polar * std::sin(az), r * cos_polar};
		}
		return rays;
	}

	/**
	 * Copy of `scenario` with its sensing mode switched.
	 *
	 * Monostatic places the echo array on top of the BS array. Switching to
	 * bistatic keeps the configured echo array, which must then be separate
	 * from the BS.
	 */
	inline Scenario with_sensing_mode(const Scenario& scenario, SensingMode mode)
	{
		Scenario out = scenario;
		out.sensing_mode = mode;
		if (mode == SensingMode::Monostatic) { out.nodes.echo_rx = out.nodes.bs_tx; }
		else if (distance(out.nodes.echo_rx.phase_center, out.nodes.bs_tx.phase_center) == 0.0)
		{
			throw ConfigError("scenario has no separate echo receiver for bistatic sensing");
		}
		return out;
	}
}

#endif
