/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace efsmt {

/* Exact rational number, always kept in lowest terms with a positive
 * denominator. */
using Rational = mpq_class;
using Integer = mpz_class;

struct RationalSyntaxError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

/* Accepts "17", "-3", "17/2", "-0.125", "1e-3" is not accepted. Decimal
 * literals are converted exactly. */
Rational parse_rational(std::string_view text);

/* "p" for integers, "p/q" otherwise. */
std::string to_string(const Rational &q);

/* Decimal rendering rounded to 'digits' fractional digits. */
std::string to_decimal(const Rational &q, int digits = 6);

Rational floor_div(const Rational &num, const Rational &den);
Rational abs(const Rational &q);
int sign(const Rational &q);
bool is_integer(const Rational &q);
double to_double(const Rational &q);

} // namespace efsmt
