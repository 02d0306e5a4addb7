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

#include "cvent/text.hpp"

#include <charconv>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ParseError("not a complex number: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  if (text.empty()) throw ParseError("empty complex number");
  if (text.back() != 'i' && text.back() != 'j') {
    const double re = parse_real(text, text);
    if (text == "+" || text == "-") throw ParseError("not a complex number: '" + std::string(text) + "'");
    return {re, 0.0};
  }
  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' &&
        body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_real(body, text)};
  const std::string_view re = body.substr(0, split);
  if (re.empty() || re == "+" || re == "-") {
    throw ParseError("not a complex number: '" + std::string(text) + "'");
  }
  return {parse_real(re, text), parse_real(body.substr(split), text)};
}

std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace cvent
