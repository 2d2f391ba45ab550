/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/transforms.hpp"

#include <random>

namespace efsmt {

EFProblem discretize(const EFProblem &p, const Rational &step, Quantified which)
{
	if (step <= 0)
		throw Error(ErrorKind::Usage, "discretization step must be positive");
	EFProblem r = p;
	auto apply = [&](std::vector<VarDecl> &vars) {
		for (VarDecl &d : vars)
			if (auto *s = std::get_if<RealSort>(&d.sort))
				d.sort = make_fixed_sort(s->range.lo, s->range.hi, step);
	};
	if (which != Quantified::Forall)
		apply(r.exists_vars);
	if (which != Quantified::Exists)
		apply(r.forall_vars);
	return r;
}

namespace {

Rational random_in(const Interval &r, std::mt19937_64 &rng)
{
	std::uniform_int_distribution<long> pick(0, 1 << 20);
	return r.lo + r.width() * Rational(pick(rng), 1 << 20);
}

} // namespace

StrengthenReport strengthen(const PolyCmp &atom, const std::vector<VarId> &universal,
                            const Box &box, const Rational &step, Polarity polarity,
                            unsigned max_depth)
{
	if (atom.op == CmpOp::Eq || atom.op == CmpOp::Ne)
		throw Error(ErrorKind::Unsupported, "only inequalities can be strengthened");
	StrengthenReport rep{atom, atom, {}, {}};
	Polynomial f = atom.lhs;
	bool want_large = atom.op == CmpOp::Gt || atom.op == CmpOp::Ge;
	if (polarity == Polarity::Assumption)
		want_large = !want_large;
	std::map<VarId, AffineMap> shifts;
	for (VarId y : universal) {
		if (f.degree_in(y) == 0)
			continue;
		Polynomial d = f.derivative(y);
		bool nonneg = check_atom(PolyCmp{d, CmpOp::Ge, 0}, box, max_depth).proved();
		bool nonpos = !nonneg && check_atom(PolyCmp{d, CmpOp::Le, 0}, box, max_depth).proved();
		if (!nonneg && !nonpos)
			throw StrengthenFailure(y, "sign of the derivative in variable #" + std::to_string(y) +
			                                   " could not be certified over the box");
		/* Shift towards the side where the atom is harder to satisfy. */
		Rational s = (nonneg == want_large) ? Rational(-step) : step;
		rep.shift[y] = s;
		shifts[y] = AffineMap{1, s};
		rep.justification.push_back("d/d#" + std::to_string(y) + (nonneg ? " >= 0" : " <= 0"));
	}
	rep.strengthened = make_cmp(f.affine_compose(shifts), atom.op, Polynomial(atom.rhs));

	std::mt19937_64 rng(0x5eed);
	for (int i = 0; i < 1000; ++i) {
		Assignment pt;
		for (const auto &[v, r] : box)
			pt.set(v, random_in(r, rng));
		bool orig = atom.holds(pt), strong = rep.strengthened.holds(pt);
		bool ok = polarity == Polarity::Guarantee ? (!strong || orig) : (!orig || strong);
		if (!ok)
			throw Error(ErrorKind::Internal, "strengthening failed its sampled implication check");
	}
	return rep;
}

std::vector<Polynomial> routh_first_column(std::vector<Polynomial> coeffs)
{
	if (coeffs.empty() || coeffs.front().is_zero())
		throw Error(ErrorKind::Degenerate, "leading coefficient is identically zero");
	if (coeffs.front().is_constant() && coeffs.front().constant() < 0)
		for (Polynomial &c : coeffs)
			c = -c;
	std::size_t n = coeffs.size() - 1;
	std::size_t width = n / 2 + 1;
	std::vector<std::vector<Polynomial>> rows(n + 1, std::vector<Polynomial>(width + 1));
	for (std::size_t i = 0; i <= n; ++i)
		rows[i % 2][i / 2] = coeffs[i];
	std::vector<Polynomial> column;
	for (std::size_t i = 0; i <= n; ++i) {
		if (i >= 2) {
			const auto &a = rows[i - 2], &b = rows[i - 1];
			for (std::size_t j = 0; j < width; ++j)
				rows[i][j] = b[0] * a[j + 1] - a[0] * b[j + 1];
			for (auto it = column.rbegin(); it != column.rend(); ++it) {
				if (it->is_constant())
					continue;
				for (;;) {
					std::vector<Polynomial> q;
					for (std::size_t j = 0; j < width; ++j) {
						auto d = rows[i][j].exact_divide(*it);
						if (!d)
							break;
						q.push_back(*d);
					}
					if (q.size() != width || rows[i][0].is_zero())
						break;
					q.push_back(Polynomial());
					rows[i] = std::move(q);
				}
			}
		}
		if (rows[i][0].is_zero())
			throw Error(ErrorKind::Degenerate,
			            "zero pivot in row " + std::to_string(i) + " of the Routh array");
		column.push_back(rows[i][0]);
	}
	return column;
}

std::pair<Polynomial, Polynomial> complex_split(const Polynomial &den, VarId s, VarId alpha,
                                                VarId beta)
{
	std::map<unsigned, Polynomial> by_power;
	for (const auto &[powers, coeff] : den.terms()) {
		Powers rest;
		unsigned k = 0;
		for (auto [v, e] : powers)
			if (v == s)
				k = e;
			else
				rest.push_back({v, e});
		by_power[k] += Polynomial::monomial(coeff, rest);
	}
	Polynomial re, im, pr = 1, pi = 0;
	Polynomial a = Polynomial::var(alpha), b = Polynomial::var(beta);
	unsigned top = by_power.empty() ? 0 : by_power.rbegin()->first;
	for (unsigned k = 0; k <= top; ++k) {
		if (auto it = by_power.find(k); it != by_power.end()) {
			re += it->second * pr;
			im += it->second * pi;
		}
		Polynomial nr = pr * a - pi * b, ni = pr * b + pi * a;
		pr = std::move(nr);
		pi = std::move(ni);
	}
	return {re, im};
}

} // namespace efsmt
