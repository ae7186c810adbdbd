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

// Cartesian geometry of the ISAC scene: ULA element offsets, direction
// vectors, angle/distance extraction and linear motion.
//
// Frame: the origin is the ground projection of the BS array centre, the
// x-axis points towards the initial position of the mobile receiver and
// z points up. All angles are radians, all lengths meters.

#ifndef ISAC_GEOMETRY_HPP
#define ISAC_GEOMETRY_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "isac/errors.hpp"

namespace isac
{
	struct Vec3
	{
		double x{};
		double y{};
		double z{};

		[[nodiscard]] double norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

		friend bool operator==(const Vec3&, const Vec3&) = default;
	};

	inline Vec3 operator+(const Vec3& a, const Vec3& b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
	inline Vec3 operator-(const Vec3& a, const Vec3& b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
	inline Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
	inline Vec3 operator*(double s, const Vec3& v) noexcept { return {s * v.x, s * v.y, s * v.z}; }
	inline Vec3 operator*(const Vec3& v, double s) noexcept { return s * v; }

	inline Vec3& operator+=(Vec3& a, const Vec3& b) noexcept
	{
		a.x += b.x;
		a.y += b.y;
		a.z += b.z;
		return a;
	}

	inline double dot(const Vec3& a, const Vec3& b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }

	inline double distance(const Vec3& a, const Vec3& b) noexcept { return (b - a).norm(); }

	/// Azimuth in (-pi, pi], elevation in [-pi/2, pi/2].
	struct AnglePair
	{
		double azimuth{};
		double elevation{};
	};

	/// Wraps an azimuth into (-pi, pi].
	inline double wrap_azimuth(double a) noexcept
	{
		constexpr double two_pi = 2.0 * std::numbers::pi;
		double w = std::remainder(a, two_pi);
		if (w <= -std::numbers::pi) { w += two_pi; }
		return w;
	}

	/**
	 * Uniform linear array.
	 *
	 * Elements are indexed 1..M and laid out symmetrically around
	 * `phase_center` along the axis given by the two orientation angles.
	 */
	struct UlaConfig
	{
		int element_count{1};
		double spacing{};               ///< element spacing [m]
		double azimuth_orientation{};   ///< psi [rad]
		double elevation_orientation{}; ///< phi [rad]
		Vec3 phase_center{};
	};

	/// Horizontal constant-velocity motion.
	struct MotionState
	{
		double speed{};   ///< [m/s], >= 0
		double heading{}; ///< [rad], measured from +x towards +y

		[[nodiscard]] Vec3 velocity() const noexcept
		{
			return {speed * std::cos(heading), speed * std::sin(heading), 0.0};
		}
	};

	/// Unit vector along the array axis.
	inline Vec3 array_axis(const UlaConfig& ula) noexcept
	{
		const double ce = std::cos(ula.elevation_orientation);
		return {ce * std::cos(ula.azimuth_orientation), ce * std::sin(ula.azimuth_orientation),
				std::sin(ula.elevation_orientation)};
	}

	/**
	 * Offset of a (possibly virtual) element from the array centre.
	 *
	 * `index` may be fractional: the offset is the same affine function of the
	 * index as for physical elements, which lets correlation sweeps place
	 * virtual elements at arbitrary spacings along the array axis.
	 */
	inline Vec3 displacement_at(const UlaConfig& ula, double index) noexcept
	{
		const double coeff = (static_cast<double>(ula.element_count) - 2.0 * index + 1.0) / 2.0;
		return (coeff * ula.spacing) * array_axis(ula);
	}

	/// Offset of element `index` (1-based) from the array centre.
	inline Vec3 element_displacement(const UlaConfig& ula, int index)
	{
		if (index < 1 || index > ula.element_count)
		{
			throw DomainError("element index " + std::to_string(index) + " outside 1.." +
							  std::to_string(ula.element_count));
		}
		return displacement_at(ula, static_cast<double>(index));
	}

	inline Vec3 unit_direction(const AnglePair& angles) noexcept
	{
		const double cb = std::cos(angles.elevation);
		return {cb * std::cos(angles.azimuth), cb * std::sin(angles.azimuth), std::sin(angles.elevation)};
	}

	struct LinkGeometry
	{
		AnglePair angles;
		double distance{};

		[[nodiscard]] Vec3 direction() const noexcept { return unit_direction(angles); }
	};

	/**
	 * Angles and length of the link from `from` to `to`.
	 *
	 * A vertical link has no defined azimuth; it is reported as 0 with
	 * elevation +-pi/2.
	 */
	inline LinkGeometry angles_and_distance(const Vec3& from, const Vec3& to)
	{
		const Vec3 r = to - from;
		const double horizontal = std::hypot(r.x, r.y);
		const double d = std::hypot(horizontal, r.z);
		if (!(d > 0.0)) { throw DegenerateGeometryError("coincident link end points"); }
		LinkGeometry g;
		g.distance = d;
		if (horizontal == 0.0)
		{
			g.angles = {0.0, std::copysign(std::numbers::pi / 2.0, r.z)};
		}
		else
		{
			g.angles = {wrap_azimuth(std::atan2(r.y, r.x)), std::atan2(r.z, horizontal)};
		}
		return g;
	}

	inline Vec3 propagate(const Vec3& position0, const MotionState& motion, double t) noexcept
	{
		return position0 + t * motion.velocity();
	}
}

#endif
