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

#ifndef ISAC_CSV_HPP
#define ISAC_CSV_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "isac/errors.hpp"
#include "isac/statistics.hpp"

namespace isac::csv
{
	/// 17 significant digits; round-trips every double.
	inline std::string number(double v)
	{
		char buf[32];
		std::snprintf(buf, sizeof buf, "%.17g", v);
		return buf;
	}

	/// A labelled correlation series sharing the lag grid of the table.
	struct Column
	{
		std::string name;
		const CorrelationSeries* series;
	};

	enum class LagAxis
	{
		ReceiveSpacing, ///< dq [wavelengths]
		TimeLag         ///< dt [s]
	};

	/// Header `lag, <name>_re, <name>_im, <name>_abs, <name>_se, ...` and one row per lag.
	inline void write_correlation(std::ostream& os, LagAxis axis, const std::vector<Column>& columns)
	{
		if (columns.empty()) { throw DomainError("no correlation columns to write"); }
		const std::size_t rows = columns.front().series->lags.size();
		for (const auto& c : columns)
		{
			if (c.series->lags.size() != rows) { throw DomainError("correlation columns have different lag grids"); }
		}

		os << (axis == LagAxis::ReceiveSpacing ? "lag_dq_wavelengths" : "lag_dt_seconds");
		for (const auto& c : columns) { os << ',' << c.name << "_re," << c.name << "_im," << c.name << "_abs," << c.name << "_se"; }
		os << '\n';
		for (std::size_t i = 0; i < rows; ++i)
		{
			const Lag& lag = columns.front().series->lags[i];
			os << number(axis == LagAxis::ReceiveSpacing ? lag.dq : lag.dt);
			for (const auto& c : columns)
			{
				const Complex r = c.series->rho[i];
				os << ',' << number(r.real()) << ',' << number(r.imag()) << ',' << number(std::abs(r)) << ','
				   << number(c.series->standard_error[i]);
			}
			os << '\n';
		}
	}

	inline void write_frequency_response(std::ostream& os, const FrequencyResponse& fr)
	{
		os << "f_hz,p,q,re,im\n";
		for (std::size_t i = 0; i < fr.frequencies.size(); ++i)
		{
			for (int p = 1; p <= fr.tx_count; ++p)
			{
				for (int q = 1; q <= fr.rx_count; ++q)
				{
					const Complex h = fr.at(p, q)[i];
					os << number(fr.frequencies[i]) << ',' << p << ',' << q << ',' << number(h.real()) << ','
					   << number(h.imag()) << '\n';
				}
			}
		}
	}

	inline void write_cir_header(std::ostream& os) { os << "t_s,channel,p,q,kind,id,delay_s,re,im\n"; }

	inline void write_cir(std::ostream& os, const std::string& channel, const CirMatrix& cir)
	{
		for (int p = 1; p <= cir.tx_count; ++p)
		{
			for (int q = 1; q <= cir.rx_count; ++q)
			{
				for (const auto& tap : cir.at(p, q))
				{
					os << number(cir.t) << ',' << channel << ',' << p << ',' << q << ',' << to_string(tap.source.kind)
					   << ',' << tap.source.id << ',' << number(tap.delay) << ',' << number(tap.amplitude.real()) << ','
					   << number(tap.amplitude.imag()) << '\n';
				}
			}
		}
	}
}

#endif
