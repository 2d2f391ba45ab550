/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#pragma once

#include "efsmt/engine.hpp"
#include "efsmt/problem.hpp"

#include <functional>
#include <random>
#include <vector>

namespace efsmt::test {

using Rng = std::mt19937_64;

inline long uniform(Rng &rng, long lo, long hi)
{
	return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/* n/d in lowest terms (the two-argument constructor does not reduce). */
inline Rational ratio(long n, long d)
{
	Rational r(n, d);
	r.canonicalize();
	return r;
}

/* p/den with p drawn so the value lies in [lo, hi]. */
inline Rational rational(Rng &rng, long lo, long hi, long den = 1)
{
	return ratio(uniform(rng, lo * den, hi * den), den);
}

inline Rational in_interval(Rng &rng, const Interval &iv, long resolution = 1000)
{
	return iv.lo + iv.width() * ratio(uniform(rng, 0, resolution), resolution);
}

/* Every value of a finite sort. */
inline std::vector<Value> domain(const Sort &s)
{
	std::vector<Value> out;
	if (is_bool(s))
		return {false, true};
	if (auto *i = std::get_if<IntSort>(&s)) {
		for (Rational x = i->range.lo; x <= i->range.hi; x += 1)
			out.emplace_back(x);
		return out;
	}
	const auto &f = std::get<FixedSort>(s);
	for (Rational x = f.range.lo; x <= f.range.hi; x += f.step)
		out.emplace_back(x);
	return out;
}

/* Calls f on every total assignment of vars extending base. */
inline bool for_each_point(const std::vector<VarDecl> &vars, Assignment base,
                           const std::function<bool(const Assignment &)> &f, std::size_t k = 0)
{
	if (k == vars.size())
		return f(base);
	for (const Value &v : domain(vars[k].sort)) {
		base.set(vars[k].id, v);
		if (!for_each_point(vars, base, f, k + 1))
			return false;
	}
	return true;
}

/* The double loop: some x with φ(x, y) for every y. */
inline bool brute_force_valid(const EFProblem &p)
{
	bool found = false;
	for_each_point(p.exists_vars, {}, [&](const Assignment &x) {
		bool all = for_each_point(p.forall_vars, x, [&](const Assignment &xy) {
			return evaluate(p.matrix, xy);
		});
		found = found || all;
		return !found;
	});
	return found;
}

inline Polynomial random_poly(Rng &rng, const std::vector<VarId> &vars, unsigned max_deg,
                              unsigned terms, long coeff = 5)
{
	Polynomial p;
	for (unsigned t = 0; t < terms; ++t) {
		Polynomial m(rational(rng, -coeff, coeff, uniform(rng, 1, 3)));
		unsigned deg = static_cast<unsigned>(uniform(rng, 0, max_deg));
		for (unsigned d = 0; d < deg; ++d)
			m *= Polynomial::var(vars[static_cast<std::size_t>(uniform(rng, 0, long(vars.size()) - 1))]);
		p += m;
	}
	return p;
}

inline CmpOp random_op(Rng &rng, bool with_eq = true)
{
	static const CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq, CmpOp::Ne};
	return ops[uniform(rng, 0, with_eq ? 5 : 3)];
}

/* Random formula over the declared variables; atoms are linear unless
 * max_deg > 1. */
inline Formula random_formula(Rng &rng, const std::vector<VarDecl> &vars, unsigned depth,
                              unsigned max_deg = 1, long coeff = 3)
{
	std::vector<VarId> nums, bools;
	for (const VarDecl &d : vars)
		(is_bool(d.sort) ? bools : nums).push_back(d.id);
	auto leaf = [&]() -> Formula {
		if (!bools.empty() && (nums.empty() || uniform(rng, 0, 3) == 0))
			return Formula::boolean(bools[static_cast<std::size_t>(uniform(rng, 0, long(bools.size()) - 1))]);
		if (nums.empty())
			return Formula::constant(uniform(rng, 0, 1));
		Polynomial lhs = random_poly(rng, nums, max_deg, static_cast<unsigned>(uniform(rng, 1, 3)), coeff);
		return Formula::cmp(make_cmp(lhs, random_op(rng), Polynomial(rational(rng, -coeff, coeff, 2))));
	};
	if (depth == 0)
		return leaf();
	switch (uniform(rng, 0, 5)) {
	case 0:
		return leaf();
	case 1:
		return Formula::negation(random_formula(rng, vars, depth - 1, max_deg, coeff));
	case 2:
		return Formula::conj({random_formula(rng, vars, depth - 1, max_deg, coeff),
		                      random_formula(rng, vars, depth - 1, max_deg, coeff)});
	case 3:
		return Formula::disj({random_formula(rng, vars, depth - 1, max_deg, coeff),
		                      random_formula(rng, vars, depth - 1, max_deg, coeff)});
	case 4:
		return Formula::implies(random_formula(rng, vars, depth - 1, max_deg, coeff),
		                        random_formula(rng, vars, depth - 1, max_deg, coeff));
	default:
		return Formula::iff(random_formula(rng, vars, depth - 1, max_deg, coeff),
		                    random_formula(rng, vars, depth - 1, max_deg, coeff));
	}
}

/* A random total point of the declared variables (grid points for finite
 * sorts, rationals with the given resolution for reals). */
inline Assignment random_point(Rng &rng, const std::vector<VarDecl> &vars, long resolution = 64)
{
	Assignment a;
	for (const VarDecl &d : vars) {
		if (is_bool(d.sort))
			a.set_bool(d.id, uniform(rng, 0, 1));
		else if (is_real(d.sort))
			a.set(d.id, in_interval(rng, *sort_range(d.sort), resolution));
		else {
			auto vals = domain(d.sort);
			a.set(d.id, vals[static_cast<std::size_t>(uniform(rng, 0, long(vals.size()) - 1))]);
		}
	}
	return a;
}

} // namespace efsmt::test
