/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace efsmt {

unsigned Monomial::degree() const
{
	unsigned d = 0;
	for (const auto &[v, e] : powers)
		d += e;
	return d;
}

Powers multiply_powers(const Powers &a, const Powers &b)
{
	Powers r;
	r.reserve(a.size() + b.size());
	auto i = a.begin(), j = b.begin();
	while (i != a.end() || j != b.end()) {
		if (j == b.end() || (i != a.end() && i->first < j->first))
			r.push_back(*i++);
		else if (i == a.end() || j->first < i->first)
			r.push_back(*j++);
		else {
			r.emplace_back(i->first, i->second + j->second);
			++i, ++j;
		}
	}
	return r;
}

Polynomial::Polynomial(const Rational &c)
{
	if (c != 0)
		terms_.emplace(Powers{}, c);
}

Polynomial Polynomial::var(VarId v)
{
	return monomial(1, Powers{{v, 1}});
}

Polynomial Polynomial::monomial(const Rational &coeff, Powers powers)
{
	std::sort(powers.begin(), powers.end());
	Powers merged;
	for (const auto &[v, e] : powers) {
		if (e == 0)
			continue;
		if (!merged.empty() && merged.back().first == v)
			merged.back().second += e;
		else
			merged.emplace_back(v, e);
	}
	Polynomial p;
	p.add_term(merged, coeff);
	return p;
}

void Polynomial::add_term(const Powers &p, const Rational &c)
{
	if (c == 0)
		return;
	auto [it, inserted] = terms_.emplace(p, c);
	if (!inserted) {
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

bool Polynomial::is_constant() const
{
	return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant() const
{
	auto it = terms_.find(Powers{});
	return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<Monomial> Polynomial::monomials() const
{
	std::vector<Monomial> r;
	for (const auto &[p, c] : terms_)
		if (!p.empty())
			r.push_back({c, p});
	return r;
}

Rational Polynomial::coefficient(const Powers &p) const
{
	auto it = terms_.find(p);
	return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const
{
	unsigned d = 0;
	for (const auto &[p, c] : terms_) {
		unsigned t = 0;
		for (const auto &[v, e] : p)
			t += e;
		d = std::max(d, t);
	}
	return d;
}

unsigned Polynomial::degree_in(VarId v) const
{
	unsigned d = 0;
	for (const auto &[p, c] : terms_)
		for (const auto &[w, e] : p)
			if (w == v)
				d = std::max(d, e);
	return d;
}

std::set<VarId> Polynomial::vars() const
{
	std::set<VarId> r;
	for (const auto &[p, c] : terms_)
		for (const auto &[v, e] : p)
			r.insert(v);
	return r;
}

Polynomial &Polynomial::operator+=(const Polynomial &o)
{
	for (const auto &[p, c] : o.terms_)
		add_term(p, c);
	return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
	for (const auto &[p, c] : o.terms_)
		add_term(p, -c);
	return *this;
}

Polynomial &Polynomial::operator*=(const Polynomial &o)
{
	Polynomial r;
	for (const auto &[p, c] : terms_)
		for (const auto &[q, d] : o.terms_)
			r.add_term(multiply_powers(p, q), c * d);
	terms_ = std::move(r.terms_);
	return *this;
}

Polynomial &Polynomial::operator*=(const Rational &c)
{
	if (c == 0) {
		terms_.clear();
		return *this;
	}
	for (auto &[p, d] : terms_)
		d *= c;
	return *this;
}

Polynomial Polynomial::operator-() const
{
	return *this * Rational(-1);
}

Polynomial Polynomial::pow(unsigned k) const
{
	Polynomial r(1), base = *this;
	while (k) {
		if (k & 1)
			r *= base;
		k >>= 1;
		if (k)
			base *= base;
	}
	return r;
}

namespace {

Rational rational_pow(const Rational &x, unsigned e)
{
	Rational r = 1;
	Integer n, d;
	mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), e);
	mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), e);
	r = Rational(n, d);
	r.canonicalize();
	return r;
}

} // namespace

Rational Polynomial::evaluate(const Assignment &a) const
{
	Rational sum = 0;
	for (const auto &[p, c] : terms_) {
		Rational t = c;
		for (const auto &[v, e] : p)
			t *= rational_pow(a.number(v), e);
		sum += t;
	}
	return sum;
}

Polynomial Polynomial::substitute(const Assignment &a) const
{
	Polynomial r;
	for (const auto &[p, c] : terms_) {
		Rational coeff = c;
		Powers rest;
		for (const auto &[v, e] : p) {
			const Value *val = a.find(v);
			const Rational *q = val ? std::get_if<Rational>(val) : nullptr;
			if (q)
				coeff *= rational_pow(*q, e);
			else
				rest.emplace_back(v, e);
		}
		r.add_term(rest, coeff);
	}
	return r;
}

Polynomial Polynomial::substitute(VarId v, const Polynomial &q) const
{
	Polynomial r;
	for (const auto &[p, c] : terms_) {
		Powers rest;
		unsigned exp = 0;
		for (const auto &[w, e] : p) {
			if (w == v)
				exp = e;
			else
				rest.emplace_back(w, e);
		}
		if (exp == 0) {
			r.add_term(p, c);
			continue;
		}
		Polynomial t = monomial(c, rest);
		t *= q.pow(exp);
		r += t;
	}
	return r;
}

Polynomial Polynomial::affine_compose(const std::map<VarId, AffineMap> &maps) const
{
	Polynomial r = *this;
	for (const auto &[v, m] : maps) {
		Polynomial image = var(v) * m.scale + Polynomial(m.offset);
		r = r.substitute(v, image);
	}
	return r;
}

Polynomial Polynomial::derivative(VarId v) const
{
	Polynomial r;
	for (const auto &[p, c] : terms_) {
		Powers q;
		Rational coeff = 0;
		for (const auto &[w, e] : p) {
			if (w == v) {
				coeff = c * e;
				if (e > 1)
					q.emplace_back(w, e - 1);
			} else
				q.emplace_back(w, e);
		}
		r.add_term(q, coeff);
	}
	return r;
}

namespace {

/* Lexicographic monomial order, smaller variable ids dominate. */
bool lex_less(const Powers &a, const Powers &b)
{
	auto i = a.begin(), j = b.begin();
	while (i != a.end() && j != b.end()) {
		if (i->first != j->first)
			return i->first > j->first; /* a lacks j's smaller variable */
		if (i->second != j->second)
			return i->second < j->second;
		++i, ++j;
	}
	return i == a.end() && j != b.end();
}

const std::pair<const Powers, Rational> *leading(const std::map<Powers, Rational> &terms)
{
	const std::pair<const Powers, Rational> *best = nullptr;
	for (const auto &t : terms)
		if (!best || lex_less(best->first, t.first))
			best = &t;
	return best;
}

std::optional<Powers> divide_powers(const Powers &a, const Powers &b)
{
	Powers r;
	auto i = a.begin();
	for (const auto &[v, e] : b) {
		while (i != a.end() && i->first < v)
			r.push_back(*i++);
		if (i == a.end() || i->first != v || i->second < e)
			return std::nullopt;
		if (i->second > e)
			r.emplace_back(v, i->second - e);
		++i;
	}
	while (i != a.end())
		r.push_back(*i++);
	return r;
}

} // namespace

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial &d) const
{
	if (d.is_zero())
		return std::nullopt;
	auto *ld = leading(d.terms_);
	Polynomial rem = *this, quot;
	while (!rem.is_zero()) {
		auto *lr = leading(rem.terms_);
		auto q = divide_powers(lr->first, ld->first);
		if (!q)
			return std::nullopt;
		Polynomial t = monomial(lr->second / ld->second, *q);
		quot += t;
		rem -= t * d;
	}
	return quot;
}

std::string Polynomial::str(const std::function<std::string(VarId)> &name) const
{
	if (terms_.empty())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (const auto &[p, c] : terms_) {
		Rational coeff = c;
		if (!first) {
			os << (c < 0 ? " - " : " + ");
			coeff = abs(c);
		}
		bool unit = p.size() > 0 && abs(coeff) == 1;
		if (!unit)
			os << to_string(coeff);
		else if (coeff < 0)
			os << "-";
		bool star = !unit;
		for (const auto &[v, e] : p) {
			if (star)
				os << "*";
			os << name(v);
			if (e > 1)
				os << "^" << e;
			star = true;
		}
		first = false;
	}
	return os.str();
}

std::string Polynomial::str() const
{
	return str([](VarId v) { return "v" + std::to_string(v); });
}

} // namespace efsmt
