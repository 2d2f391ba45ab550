/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/encoders.hpp"

#include <algorithm>

namespace efsmt {

namespace {

Formula cmp(const Polynomial &lhs, CmpOp op, const Polynomial &rhs)
{
	PolyCmp c = make_cmp(lhs, op, rhs);
	if (c.lhs.is_constant())
		return Formula::constant(compare(c.lhs.constant(), c.op, c.rhs));
	return Formula::cmp(std::move(c));
}

Box numeric_box(const EFProblem &p)
{
	Box box;
	for (const VarDecl &d : p.all_vars())
		if (const Interval *r = sort_range(d.sort))
			box[d.id] = *r;
	return box;
}

/* Univariate polynomial as dense coefficients, lowest power first. */
using Dense = std::vector<Rational>;

Polynomial poly_of(const Dense &d, VarId z)
{
	Polynomial p;
	for (std::size_t k = 0; k < d.size(); ++k)
		if (d[k] != 0)
			p += Polynomial::monomial(d[k], k ? Powers{{z, unsigned(k)}} : Powers{});
	return p;
}

Rational eval(const Dense &d, const Rational &x)
{
	Rational acc = 0;
	for (std::size_t k = d.size(); k-- > 0;)
		acc = acc * x + d[k];
	return acc;
}

/* Synthetic division by (z − root); nullopt when the remainder is nonzero. */
std::optional<Dense> deflate(const Dense &d, const Rational &root)
{
	if (d.size() < 2)
		return std::nullopt;
	Dense q(d.size() - 1);
	Rational carry = 0;
	for (std::size_t k = d.size(); k-- > 1;) {
		carry = carry * root + d[k];
		q[k - 1] = carry;
	}
	if (carry * root + d[0] != 0)
		return std::nullopt;
	return q;
}

std::vector<Integer> divisors(Integer n)
{
	n = abs(n);
	if (n > 1000000)
		throw Error(ErrorKind::Unsupported, "coefficients too large for rational root search");
	std::vector<Integer> out;
	for (Integer k = 1; k * k <= n; ++k)
		if (n % k == 0) {
			out.push_back(k);
			if (k * k != n)
				out.push_back(n / k);
		}
	return out;
}

/* Rational roots of d inside [lo, hi], sorted, without multiplicity. The
 * cofactor left after deflation must keep its sign on the interval. */
std::vector<Rational> rational_roots(Dense d, VarId z, const Interval &range)
{
	std::vector<Rational> roots;
	auto add = [&](const Rational &r) {
		if (range.contains(r) && std::find(roots.begin(), roots.end(), r) == roots.end())
			roots.push_back(r);
	};
	while (d.size() > 1 && d[0] == 0) {
		d.erase(d.begin());
		add(0);
	}
	for (bool again = true; again && d.size() > 1;) {
		again = false;
		Integer lcm = 1;
		for (const Rational &c : d)
			lcm = lcm * c.get_den() / gcd(lcm, c.get_den());
		Integer a0 = Rational(d.front() * lcm).get_num(), an = Rational(d.back() * lcm).get_num();
		for (const Integer &p : divisors(a0)) {
			for (const Integer &q : divisors(an)) {
				for (int s : {1, -1}) {
					Rational cand(p * s, q);
					cand.canonicalize();
					if (auto next = deflate(d, cand)) {
						add(cand);
						d = *next;
						again = true;
						break;
					}
				}
				if (again)
					break;
			}
			if (again)
				break;
		}
	}
	if (d.size() > 1) {
		Box box{{z, range}};
		Polynomial rest = poly_of(d, z);
		if (!check_atom(PolyCmp{rest, CmpOp::Gt, 0}, box).proved() &&
		    !check_atom(PolyCmp{rest, CmpOp::Lt, 0}, box).proved())
			throw Error(ErrorKind::Unsupported,
			            "guarantee has roots that are not rational inside the box");
	}
	std::sort(roots.begin(), roots.end());
	return roots;
}

/* Closed intervals of [lo, hi] where q op 0 holds on a set with interior;
 * isolated points are dropped. */
std::vector<Interval> sign_intervals(const Dense &q, const std::vector<Rational> &roots,
                                     const Interval &range, bool nonneg)
{
	std::vector<Rational> cuts{range.lo};
	for (const Rational &r : roots)
		if (r > range.lo && r < range.hi)
			cuts.push_back(r);
	cuts.push_back(range.hi);
	std::vector<Interval> out;
	for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
		Rational v = eval(q, (cuts[i] + cuts[i + 1]) / 2);
		if (nonneg ? v < 0 : v > 0)
			continue;
		if (!out.empty() && out.back().hi == cuts[i])
			out.back().hi = cuts[i + 1];
		else
			out.emplace_back(cuts[i], cuts[i + 1]);
	}
	return out;
}

Formula strengthened(const PolyCmp &atom, VarId z, const Box &box, const Rational &step,
                     Polarity pol)
{
	return Formula::cmp(strengthen(atom, {z}, box, step, pol).strengthened);
}

Formula interval_set(const std::vector<Interval> &parts, VarId z, const Interval &range,
                     const Box &box, const Rational &step)
{
	std::vector<Formula> alts;
	for (const Interval &iv : parts) {
		std::vector<Formula> side;
		if (iv.lo > range.lo)
			side.push_back(strengthened({Polynomial::var(z), CmpOp::Ge, iv.lo}, z, box, step,
			                            Polarity::Guarantee));
		if (iv.hi < range.hi)
			side.push_back(strengthened({Polynomial::var(z), CmpOp::Le, iv.hi}, z, box, step,
			                            Polarity::Guarantee));
		alts.push_back(Formula::conj(std::move(side)));
	}
	return Formula::disj(std::move(alts));
}

} // namespace

EFProblem encode_bibo(const std::vector<Polynomial> &den, EFProblem vars)
{
	std::vector<Formula> cs;
	for (const Polynomial &c : routh_first_column(den))
		cs.push_back(cmp(c, CmpOp::Gt, Polynomial(0)));
	vars.matrix = simplify(Formula::conj(std::move(cs)));
	vars.validate();
	return vars;
}

EFProblem paper_bibo_problem()
{
	EFProblem p;
	VarId kp = p.declare_exists("k_p", make_real_sort(-100, 100));
	VarId ki = p.declare_exists("k_i", make_real_sort(-100, 100));
	VarId m = p.declare_forall("m", make_real_sort(600, 1200));
	return encode_bibo({Polynomial::var(m), Polynomial::var(kp), Polynomial::var(ki)}, std::move(p));
}

EFProblem encode_lyapunov(const LyapunovSpec &spec, LyapunovRoute route, const Rational &step)
{
	EFProblem p = spec.skeleton;
	if (!p.is_forall(spec.z) || !p.is_exists(spec.r))
		throw Error(ErrorKind::Encoding, "z must be universal and r existential");
	const Box box = numeric_box(p);
	const Interval zr = box.at(spec.z);
	const std::string where = "z in [" + to_string(zr.lo) + ", " + to_string(zr.hi) + "]";

	std::vector<Formula> cs = spec.conditions;
	if (spec.den.is_zero())
		throw Error(ErrorKind::Encoding, "zero denominator");
	if (!spec.den.is_constant() &&
	    !check_atom(PolyCmp{spec.den, CmpOp::Gt, 0}, box).proved() &&
	    !check_atom(PolyCmp{spec.den, CmpOp::Lt, 0}, box).proved()) {
		/* Keep the region −r < z < r inside the root-free neighbourhood of
		 * the equilibrium, where the denominator has the sign of den(0). */
		if (spec.den.vars() != std::set<VarId>{spec.z})
			throw Error(ErrorKind::Encoding, "denominator is not sign-definite on " + where);
		Dense d(spec.den.degree_in(spec.z) + 1);
		for (const auto &[powers, c] : spec.den.terms())
			d[powers.empty() ? 0 : powers.front().second] = c;
		if (d[0] == 0)
			throw Error(ErrorKind::Encoding, "denominator vanishes at the equilibrium");
		std::vector<Rational> roots;
		try {
			roots = rational_roots(d, spec.z, zr);
		} catch (const Error &) {
			throw Error(ErrorKind::Encoding, "denominator is not sign-definite on " + where);
		}
		Rational rho = std::max(abs(zr.lo), abs(zr.hi));
		for (const Rational &x : roots)
			rho = std::min(rho, abs(x));
		cs.push_back(cmp(Polynomial::var(spec.r), CmpOp::Le, Polynomial(rho)));
	}

	/* V̇ ≤ 0 with V̇ = V′·num/den, multiplied by den² */
	const Polynomial G = -(spec.V.derivative(spec.z) * spec.num * spec.den);
	const Polynomial z = Polynomial::var(spec.z), r = Polynomial::var(spec.r);

	if (route == LyapunovRoute::Bernstein) {
		Formula a = cmp(z, CmpOp::Gt, -r) && cmp(z, CmpOp::Lt, r);
		cs.push_back(Formula::implies(a, cmp(G, CmpOp::Ge, Polynomial(0))));
		p.matrix = Formula::conj(std::move(cs));
		p.validate();
		return p;
	}

	/* G = c(params)·q(z) */
	std::map<unsigned, Polynomial> by_power;
	for (const auto &[powers, coeff] : G.terms()) {
		Powers rest;
		unsigned k = 0;
		for (const auto &[v, e] : powers)
			if (v == spec.z)
				k = e;
			else
				rest.emplace_back(v, e);
		by_power[k] += Polynomial::monomial(coeff, rest);
	}
	if (by_power.empty())
		throw Error(ErrorKind::Encoding, "the Lyapunov derivative vanishes identically");
	const Polynomial c = by_power.rbegin()->second;
	Dense q(by_power.rbegin()->first + 1);
	for (const auto &[k, part] : by_power) {
		auto ratio = part.exact_divide(c);
		if (!ratio || !ratio->is_constant())
			throw Error(ErrorKind::Unsupported,
			            "guarantee does not factor into parameter and state parts");
		q[k] = ratio->constant();
	}
	const std::vector<Rational> roots = rational_roots(q, spec.z, zr);
	Formula pos = interval_set(sign_intervals(q, roots, zr, true), spec.z, zr, box, step);
	Formula neg = interval_set(sign_intervals(q, roots, zr, false), spec.z, zr, box, step);
	Formula guarantee = Formula::implies(cmp(c, CmpOp::Ge, Polynomial(0)), pos) &&
	                    Formula::implies(cmp(c, CmpOp::Lt, Polynomial(0)), neg);

	Formula a = strengthened(make_cmp(z, CmpOp::Gt, -r), spec.z, box, step, Polarity::Assumption) &&
	            strengthened(make_cmp(z, CmpOp::Lt, r), spec.z, box, step, Polarity::Assumption);
	cs.push_back(Formula::implies(a, simplify(guarantee)));
	p.matrix = Formula::conj(std::move(cs));
	p = discretize(p, step, Quantified::Both);
	p.validate();
	return p;
}

LyapunovSpec paper_lyapunov_spec(const Interval &z_box)
{
	LyapunovSpec s;
	VarId a = s.skeleton.declare_exists("a", make_real_sort(0, 10));
	s.r = s.skeleton.declare_exists("r", make_real_sort(0, 10));
	s.z = s.skeleton.declare_forall("z", make_real_sort(z_box.lo, z_box.hi));
	const Polynomial z = Polynomial::var(s.z);
	s.V = Polynomial::var(a) * z * z;
	/* 2/(2+z) − z − 1 = −(z² + 3z)/(2 + z) */
	s.num = -(z * z + 3 * z);
	s.den = z + 2;
	s.conditions = {Formula::cmp(Polynomial::var(a), CmpOp::Gt, 0),
	                Formula::cmp(Polynomial::var(s.r), CmpOp::Gt, 0)};
	return s;
}

EFProblem paper_lyapunov_printed(const Rational &step)
{
	EFProblem p;
	VarId a = p.declare_exists("a", make_fixed_sort(0, 10, step));
	VarId r = p.declare_exists("r", make_fixed_sort(0, 10, step));
	VarId zv = p.declare_forall("z", make_fixed_sort(-10, 10, step));
	const Polynomial z = Polynomial::var(zv), A = Polynomial::var(a), R = Polynomial::var(r);
	const Polynomial bit(step);
	Formula assume = cmp(z + bit, CmpOp::Gt, -R) && cmp(z - bit, CmpOp::Lt, R);
	Formula pos = cmp(z - bit, CmpOp::Ge, 0) ||
	              (cmp(z - bit, CmpOp::Ge, -2) && cmp(z + bit, CmpOp::Le, 0));
	Formula neg = cmp(z + bit, CmpOp::Le, -3);
	p.matrix = Formula::implies(assume,
	                            Formula::implies(cmp(2 * A, CmpOp::Ge, 0), pos) &&
	                                    Formula::implies(cmp(2 * A, CmpOp::Lt, 0), neg));
	p.validate();
	return p;
}

PendulumEncoding pendulum_preset(const PendulumParams &pp)
{
	PendulumEncoding e;
	EFProblem &p = e.problem;
	e.xb1 = p.declare_exists("xb1", make_real_sort(pp.radius.lo, pp.radius.hi));
	e.xb2 = p.declare_exists("xb2", make_real_sort(pp.radius.lo, pp.radius.hi));
	e.kp = p.declare_exists("k_p", make_real_sort(pp.gains.lo, pp.gains.hi));
	e.kd = p.declare_exists("k_d", make_real_sort(pp.gains.lo, pp.gains.hi));
	e.a = p.declare_exists("a", make_real_sort(pp.energy.lo, pp.energy.hi));
	e.b = p.declare_exists("b", make_real_sort(pp.energy.lo, pp.energy.hi));
	e.x1 = p.declare_forall("x1", make_real_sort(pp.state.lo, pp.state.hi));
	e.x2 = p.declare_forall("x2", make_real_sort(pp.state.lo, pp.state.hi));
	e.M2 = p.declare_forall("M2", make_real_sort(pp.M2.lo, pp.M2.hi));
	e.l = p.declare_forall("l", make_real_sort(pp.l.lo, pp.l.hi));

	auto v = [](VarId id) { return Polynomial::var(id); };
	const Polynomial x1 = v(e.x1), x2 = v(e.x2), M2 = v(e.M2), l = v(e.l);
	const Polynomial tau = v(e.kp) * x1 + v(e.kd) * x2;
	/* (J2 + M2 l²) θ̈ = M2 g l θ − M2 l r τ / J1 */
	e.theta_num = M2 * l * x1 * pp.g - M2 * l * tau * (pp.r / pp.J1);
	e.theta_den = Polynomial(pp.J2) + M2 * l * l;
	e.V = v(e.a) * x1 * x1 + v(e.b) * x2 * x2;
	/* ẋ1 = x2, ẋ2 = θ̈ */
	e.vdot = e.V.derivative(e.x1) * x2 * e.theta_den + e.V.derivative(e.x2) * e.theta_num;

	const Polynomial xb1 = v(e.xb1), xb2 = v(e.xb2);
	std::vector<Formula> cs{cmp(xb1, CmpOp::Gt, 0), cmp(xb2, CmpOp::Gt, 0),
	                        cmp(v(e.a), CmpOp::Gt, 0), cmp(v(e.b), CmpOp::Gt, 0)};
	Formula region = Formula::conj({cmp(x1, CmpOp::Gt, -xb1), cmp(x1, CmpOp::Lt, xb1),
	                                cmp(x2, CmpOp::Gt, -xb2), cmp(x2, CmpOp::Lt, xb2),
	                                cmp(x1 * x1 + x2 * x2, CmpOp::Gt, 0)});
	cs.push_back(Formula::implies(
		region, cmp(e.vdot, pp.strict ? CmpOp::Lt : CmpOp::Le, Polynomial(0))));
	p.matrix = Formula::conj(std::move(cs));
	p.validate();
	return e;
}

} // namespace efsmt
