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

#ifndef ISAC_TAP_HPP
#define ISAC_TAP_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "isac/errors.hpp"

namespace isac
{
	using Complex = std::complex<double>;

	/// Which propagation mechanism produced a tap.
	enum class PathKind
	{
		Terminal,      ///< sensing echo from the mobile receiver
		StaticTarget,  ///< sensing echo from a static target
		MobileTarget,  ///< sensing echo from a mobile target
		LineOfSight,   ///< communication LoS path
		StaticCluster, ///< communication NLoS path via a static cluster
		MobileCluster  ///< communication NLoS path via a mobile cluster
	};

	inline std::string_view to_string(PathKind kind) noexcept
	{
		switch (kind)
		{
		case PathKind::Terminal: return "terminal";
		case PathKind::StaticTarget: return "static_target";
		case PathKind::MobileTarget: return "mobile_target";
		case PathKind::LineOfSight: return "los";
		case PathKind::StaticCluster: return "static_cluster";
		case PathKind::MobileCluster: return "mobile_cluster";
		}
		return "unknown";
	}

	struct TapSource
	{
		PathKind kind{PathKind::Terminal};
		std::string id; ///< scatterer id, "MR" for the terminal, "LoS" for the direct path

		friend bool operator==(const TapSource&, const TapSource&) = default;
	};

	/// One resolvable path of a tapped delay line.
	struct Tap
	{
		Complex amplitude;
		double delay{}; ///< [s]
		TapSource source;

		friend bool operator==(const Tap&, const Tap&) = default;
	};

	/**
	 * Tapped-delay-line MIMO channel at one instant.
	 *
	 * Antenna indices are 1-based (p = 1..tx_count, q = 1..rx_count).
	 */
	struct CirMatrix
	{
		double t{};
		int tx_count{};
		int rx_count{};
		std::vector<std::vector<Tap>> taps; ///< row-major, (p - 1) * rx_count + (q - 1)

		[[nodiscard]] const std::vector<Tap>& at(int p, int q) const { return taps.at(index(p, q)); }
		[[nodiscard]] std::vector<Tap>& at(int p, int q) { return taps.at(index(p, q)); }

		friend bool operator==(const CirMatrix&, const CirMatrix&) = default;

	private:
		[[nodiscard]] std::size_t index(int p, int q) const
		{
			if (p < 1 || p > tx_count || q < 1 || q > rx_count)
			{
				throw DomainError("antenna pair (" + std::to_string(p) + ", " + std::to_string(q) + ") out of range");
			}
			return static_cast<std::size_t>(p - 1) * static_cast<std::size_t>(rx_count) + static_cast<std::size_t>(q - 1);
		}
	};
}

#endif
