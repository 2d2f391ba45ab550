/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/types.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace efsmt {

/* Sorted (by variable id) list of (variable, exponent >= 1). */
using Powers = std::vector<std::pair<VarId, unsigned>>;

struct Monomial {
	Rational coeff;
	Powers powers;

	unsigned degree() const;
};

/* v ↦ scale·v + offset */
struct AffineMap {
	Rational scale = 1;
	Rational offset = 0;
};

/* Sparse multivariate polynomial with exact rational coefficients. Terms are
 * kept in a map keyed by the power vector, which makes structural equality
 * coincide with mathematical equality. The constant term lives under the
 * empty power vector. */
class Polynomial {
public:
	Polynomial() = default;
	Polynomial(const Rational &c);
	Polynomial(int c) : Polynomial(Rational(c)) {}

	static Polynomial var(VarId v);
	static Polynomial monomial(const Rational &coeff, Powers powers);

	bool is_zero() const { return terms_.empty(); }
	bool is_constant() const;
	Rational constant() const;
	/* Non-constant monomials in canonical order. */
	std::vector<Monomial> monomials() const;
	const std::map<Powers, Rational> &terms() const { return terms_; }
	Rational coefficient(const Powers &p) const;

	unsigned degree() const;
	unsigned degree_in(VarId v) const;
	bool is_linear() const { return degree() <= 1; }
	std::set<VarId> vars() const;

	Polynomial &operator+=(const Polynomial &o);
	Polynomial &operator-=(const Polynomial &o);
	Polynomial &operator*=(const Polynomial &o);
	Polynomial &operator*=(const Rational &c);
	friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
	friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
	friend Polynomial operator*(Polynomial a, const Polynomial &b) { return a *= b; }
	friend Polynomial operator*(Polynomial a, const Rational &c) { return a *= c; }
	friend Polynomial operator*(const Rational &c, Polynomial a) { return a *= c; }
	friend Polynomial operator*(Polynomial a, int c) { return a *= Rational(c); }
	friend Polynomial operator*(int c, Polynomial a) { return a *= Rational(c); }
	Polynomial operator-() const;
	Polynomial pow(unsigned k) const;
	Polynomial scale(const Rational &c) const { return *this * c; }

	/* Exact evaluation; throws EvaluationError on an unbound variable. */
	Rational evaluate(const Assignment &a) const;
	/* Replace bound numeric variables by their values. */
	Polynomial substitute(const Assignment &a) const;
	/* Replace variable v by the polynomial q. */
	Polynomial substitute(VarId v, const Polynomial &q) const;
	Polynomial affine_compose(const std::map<VarId, AffineMap> &maps) const;
	Polynomial derivative(VarId v) const;

	/* If p = q·d exactly, return q. Multivariate division in lexicographic
	 * term order; nullopt when d does not divide p. */
	std::optional<Polynomial> exact_divide(const Polynomial &d) const;

	/* Human-readable infix form. */
	std::string str(const std::function<std::string(VarId)> &name) const;
	std::string str() const;

	friend bool operator==(const Polynomial &, const Polynomial &) = default;
	friend auto operator<=>(const Polynomial &a, const Polynomial &b)
	{
		return a.terms_ <=> b.terms_;
	}

private:
	void add_term(const Powers &p, const Rational &c);

	std::map<Powers, Rational> terms_;
};

Powers multiply_powers(const Powers &a, const Powers &b);

} // namespace efsmt
