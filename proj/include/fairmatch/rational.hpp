// Copyright 2026 The fairmatch Authors.
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

#ifndef FAIRMATCH_RATIONAL_HPP_
#define FAIRMATCH_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace fairmatch {

// Every quantity on the mechanism path is an exact rational. mpq_class keeps
// values canonical (lowest terms, positive denominator) after each operation.
using Rational = mpq_class;

inline Rational MakeRational(std::int64_t num, std::int64_t den = 1) {
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

// "p/q" in lowest terms; integers are written "p/1".
std::string ToString(const Rational& r);

// Accepts "p/q" or "p". Throws std::invalid_argument on malformed input or a
// zero denominator.
Rational ParseRational(std::string_view text);

bool IsIntegral(const Rational& r);
mpz_class Floor(const Rational& r);
mpz_class Ceil(const Rational& r);

inline const Rational& Min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& Max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Narrowing helper for values known to be small integers (peaks, multiplicities).
std::int64_t ToInt64(const Rational& r);

}  // namespace fairmatch

#endif  // FAIRMATCH_RATIONAL_HPP_
