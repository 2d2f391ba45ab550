/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/rational.hpp"

#include <cctype>

namespace efsmt {

namespace {

bool all_digits(std::string_view s)
{
	if (s.empty())
		return false;
	for (char c : s)
		if (!std::isdigit(static_cast<unsigned char>(c)))
			return false;
	return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
	std::string_view s = text;
	bool neg = false;
	if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
		neg = s.front() == '-';
		s.remove_prefix(1);
	}
	Rational r;
	if (auto slash = s.find('/'); slash != std::string_view::npos) {
		std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
		if (!all_digits(p) || !all_digits(q))
			throw RationalSyntaxError("malformed rational '" + std::string(text) + "'");
		Integer den(std::string(q), 10);
		if (den == 0)
			throw RationalSyntaxError("zero denominator in '" + std::string(text) + "'");
		r = Rational(Integer(std::string(p), 10), den);
	} else if (auto dot = s.find('.'); dot != std::string_view::npos) {
		std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
		if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
		    (!fp.empty() && !all_digits(fp)))
			throw RationalSyntaxError("malformed decimal '" + std::string(text) + "'");
		std::string digits = std::string(ip) + std::string(fp);
		Integer num(digits.empty() ? std::string("0") : digits, 10);
		Integer den;
		mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
		r = Rational(num, den);
	} else {
		if (!all_digits(s))
			throw RationalSyntaxError("malformed number '" + std::string(text) + "'");
		r = Rational(Integer(std::string(s), 10));
	}
	r.canonicalize();
	return neg ? Rational(-r) : r;
}

std::string to_string(const Rational &q)
{
	if (q.get_den() == 1)
		return q.get_num().get_str();
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational &q, int digits)
{
	Integer scale;
	mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
	Rational scaled = abs(q) * scale;
	/* round half away from zero */
	Integer n = scaled.get_num(), d = scaled.get_den();
	Integer rounded = (2 * n + d) / (2 * d);
	std::string s = rounded.get_str();
	if (digits > 0) {
		if (s.size() <= static_cast<std::size_t>(digits))
			s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
		s.insert(s.size() - static_cast<std::size_t>(digits), ".");
	}
	bool zero = rounded == 0;
	return (q < 0 && !zero ? "-" : "") + s;
}

Rational floor_div(const Rational &num, const Rational &den)
{
	Rational r = num / den;
	Integer f;
	mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
	return Rational(f);
}

Rational abs(const Rational &q)
{
	return q < 0 ? Rational(-q) : q;
}

int sign(const Rational &q)
{
	return sgn(q);
}

bool is_integer(const Rational &q)
{
	return q.get_den() == 1;
}

double to_double(const Rational &q)
{
	return q.get_d();
}

} // namespace efsmt
