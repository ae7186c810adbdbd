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

#ifndef ISAC_ERRORS_HPP
#define ISAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isac
{
	/// Base class of every error raised by the library.
	class Error : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	/// Argument outside the domain of an operation (e.g. antenna index > M).
	class DomainError : public Error
	{
	public:
		using Error::Error;
	};

	/// Coincident points or zero-length path legs.
	class DegenerateGeometryError : public Error
	{
	public:
		using Error::Error;
	};

	/// Scenario that cannot be used as configured (missing ray extent, unknown id, ...).
	class ConfigError : public Error
	{
	public:
		using Error::Error;
	};

	/// Malformed scenario document.
	class ParseError : public Error
	{
	public:
		using Error::Error;
	};

	/// Unknown RCS target type.
	class LookupError : public Error
	{
	public:
		using Error::Error;
	};

	/// Correlation requested for an empty component or a zero-power channel.
	class UndefinedCorrelationError : public Error
	{
	public:
		using Error::Error;
	};
}

#endif
