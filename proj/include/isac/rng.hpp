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

// Reproducible random streams.
//
// Every random quantity is drawn from its own stream whose seed is a stable
// hash of (root seed, entity id, purpose tag, index). Results therefore do
// not depend on iteration order or on how work is split across threads.

#ifndef ISAC_RNG_HPP
#define ISAC_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace isac
{
	inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
	{
		x += 0x9E3779B97F4A7C15ULL;
		x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
		x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
		return x ^ (x >> 31);
	}

	/// 64-bit FNV-1a.
	inline constexpr std::uint64_t hash_string(std::string_view s) noexcept
	{
		std::uint64_t h = 0xCBF29CE484222325ULL;
		for (const char c : s)
		{
			h ^= static_cast<std::uint8_t>(c);
			h *= 0x100000001B3ULL;
		}
		return h;
	}

	inline constexpr std::uint64_t stream_seed(std::uint64_t root, std::string_view entity, std::string_view purpose,
											   std::uint64_t index = 0) noexcept
	{
		std::uint64_t h = splitmix64(root);
		h = splitmix64(h ^ hash_string(entity));
		h = splitmix64(h ^ hash_string(purpose));
		return splitmix64(h ^ index);
	}

	/**
	 * Portable uniform generator.
	 *
	 * mt19937_64 output is fixed by the standard; the conversion to double is
	 * done here instead of std::uniform_real_distribution, whose algorithm is
	 * implementation-defined.
	 */
	class RandomStream
	{
	public:
		explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

		/// Uniform on [0, 1) with 53 random bits.
		double uniform()
		{
			++counter();
			return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
		}

		double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

		/// Numbers drawn by all streams on the calling thread so far (audit aid).
		static std::uint64_t draws_on_this_thread() noexcept { return counter(); }

	private:
		static std::uint64_t& counter() noexcept
		{
			thread_local std::uint64_t n = 0;
			return n;
		}

		std::mt19937_64 engine_;
	};
}

#endif
