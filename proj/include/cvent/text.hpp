// Copyright 2026 The cvent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace cvent {

/// 12 significant digits, `%g` style; negative zero prints as 0.
inline std::string format_double(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// `a+bi`, `a-bi`, or `a` when the imaginary part is zero.
inline std::string format_complex(std::complex<double> z) {
  std::string s = format_double(z.real());
  if (z.imag() != 0.0) {
    const std::string im = format_double(z.imag());
    s += (im.front() == '-' ? "" : "+") + im + "i";
  }
  return s;
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i` (no spaces, locale
/// independent). Throws ParseError.
std::complex<double> parse_complex(std::string_view text);

/// Parses a comma-separated list of complex numbers.
std::vector<std::complex<double>> parse_complex_list(std::string_view text);

/// Rounds to 12 significant digits so serialized output is stable.
inline double round12(double x) {
  const double r = std::strtod(format_double(x).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

}  // namespace cvent
