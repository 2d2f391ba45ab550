/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/encoders.hpp"

namespace efsmt {

namespace {

Formula cmp(const Polynomial &lhs, CmpOp op, const Polynomial &rhs)
{
	PolyCmp c = make_cmp(lhs, op, rhs);
	if (c.lhs.is_constant())
		return Formula::constant(compare(c.lhs.constant(), c.op, c.rhs));
	return Formula::cmp(std::move(c));
}

Formula between(const Polynomial &lo, const Polynomial &x, const Polynomial &hi)
{
	return cmp(lo, CmpOp::Le, x) && cmp(x, CmpOp::Le, hi);
}

Sort param_sort(const Rational &lo, const Rational &hi, const Rational &step)
{
	return step > 0 ? make_fixed_sort(lo, hi, step) : make_real_sort(lo, hi);
}

} // namespace

HybridSystem paper_hybrid_system(const Rational &step)
{
	HybridSystem sys;
	sys.modes = {{Param::constant(2), 10}, {Param::variable("gamma"), 6}};
	sys.jumps = {{0, 1, Param::variable("beta"), Param::variable("alpha")},
	             {1, 0, Param::variable("eta"), Param::constant(6)}};
	sys.initial_h = 100;
	sys.safe_h = {80, 120};
	sys.parameters = {{"alpha", param_sort(0, 10, step)},
	                  {"beta", param_sort(0, 10, step)},
	                  {"eta", param_sort(0, 10, step)},
	                  {"gamma", param_sort(-10, 10, step)}};
	sys.h_range = {-200, 400};
	sys.bound_sort = param_sort(0, 200, step);
	return sys;
}

HybridEncoding encode_hybrid(const HybridSystem &sys)
{
	if (sys.modes.size() != 2)
		throw Error(ErrorKind::Encoding, "hybrid encoder supports exactly two modes");
	HybridEncoding enc;
	EFProblem &p = enc.problem;
	for (const auto &[name, sort] : sys.parameters)
		enc.params[name] = p.declare_exists(name, sort);
	auto param = [&](const Param &q) -> Polynomial {
		if (q.is_constant())
			return Polynomial(*q.value);
		auto it = enc.params.find(q.name);
		if (it == enc.params.end())
			throw Error(ErrorKind::Encoding, "undeclared parameter " + q.name);
		return Polynomial::var(it->second);
	};
	for (std::size_t m = 0; m < sys.modes.size(); ++m) {
		enc.lower.push_back(p.declare_exists("l_m" + std::to_string(m), sys.bound_sort));
		enc.upper.push_back(p.declare_exists("u_m" + std::to_string(m), sys.bound_sort));
	}
	for (std::size_t m = 0; m < sys.modes.size(); ++m) {
		enc.lower_next.push_back(p.declare_exists("l_m" + std::to_string(m) + "'", sys.bound_sort));
		enc.upper_next.push_back(p.declare_exists("u_m" + std::to_string(m) + "'", sys.bound_sort));
	}
	Rational tmax = 0;
	for (const Mode &m : sys.modes)
		tmax = std::max(tmax, m.clock_bound);
	enc.mode = p.declare_forall("mode", BoolSort{});
	enc.mode_next = p.declare_forall("mode'", BoolSort{});
	enc.h = p.declare_forall("h", make_real_sort(sys.h_range.lo, sys.h_range.hi));
	enc.h_next = p.declare_forall("h'", make_real_sort(sys.h_range.lo, sys.h_range.hi));
	enc.t = p.declare_forall("t", make_real_sort(0, tmax));
	enc.delta = p.declare_forall("delta", make_real_sort(0, tmax));

	const Polynomial h = Polynomial::var(enc.h), h2 = Polynomial::var(enc.h_next);
	const Polynomial t = Polynomial::var(enc.t), d = Polynomial::var(enc.delta);
	auto in_mode = [](VarId v, std::size_t m) {
		return m == 1 ? Formula::boolean(v) : !Formula::boolean(v);
	};
	auto lo = [&](std::size_t m, bool next) {
		return Polynomial::var(next ? enc.lower_next[m] : enc.lower[m]);
	};
	auto hi = [&](std::size_t m, bool next) {
		return Polynomial::var(next ? enc.upper_next[m] : enc.upper[m]);
	};
	/* l_m ≤ h − rate·t ≤ u_m */
	auto inv = [&](std::size_t m, const Polynomial &hv, const Polynomial &tv, bool next) {
		const Polynomial rate = param(sys.modes[m].rate);
		if (rate.degree() > 0 && !rate.is_linear())
			throw Error(ErrorKind::Unsupported, "mode rates must be constants or parameters");
		return between(lo(m, next), hv - rate * tv, hi(m, next));
	};

	std::vector<Formula> cs;
	for (std::size_t m = 0; m < sys.modes.size(); ++m) {
		cs.push_back(cmp(lo(m, true), CmpOp::Eq, lo(m, false)));
		cs.push_back(cmp(hi(m, true), CmpOp::Eq, hi(m, false)));
	}
	/* initial state (mode 0, t = 0) */
	cs.push_back(between(lo(0, false), Polynomial(sys.initial_h), hi(0, false)));
	for (std::size_t m = 0; m < sys.modes.size(); ++m) {
		const Rational &T = sys.modes[m].clock_bound;
		/* no risk state in the invariant */
		cs.push_back(Formula::implies(
			Formula::conj({in_mode(enc.mode, m), cmp(t, CmpOp::Le, T), inv(m, h, t, false)}),
			between(sys.safe_h.lo, h, sys.safe_h.hi)));
		/* time elapse */
		const Polynomial rate = param(sys.modes[m].rate);
		cs.push_back(Formula::implies(
			Formula::conj({in_mode(enc.mode, m), in_mode(enc.mode_next, m),
			               cmp(t, CmpOp::Le, T), cmp(t + d, CmpOp::Le, T),
			               inv(m, h, t, false), cmp(h2, CmpOp::Eq, h + rate * d)}),
			inv(m, h2, t + d, true)));
	}
	for (const Jump &j : sys.jumps) {
		const Polynomial glo = param(j.guard_lo), ghi = param(j.guard_hi);
		const Rational &T = sys.modes[j.from].clock_bound;
		cs.push_back(Formula::implies(
			Formula::conj({in_mode(enc.mode, j.from), in_mode(enc.mode_next, j.to),
			               between(glo, t, ghi), cmp(t, CmpOp::Le, T),
			               inv(j.from, h, t, false), cmp(h2, CmpOp::Eq, h)}),
			inv(j.to, h2, Polynomial(0), true)));
		/* guaranteed progress: the guard is a non-empty window inside the mode */
		cs.push_back(cmp(glo, CmpOp::Le, ghi));
		cs.push_back(cmp(ghi, CmpOp::Le, Polynomial(T)));
	}
	p.matrix = simplify(Formula::conj(std::move(cs)));
	p.validate();
	return enc;
}

HybridEncoding paper_hybrid(const Rational &step)
{
	return encode_hybrid(paper_hybrid_system(step));
}

HybridSolution decode_hybrid(const HybridSystem &sys, const HybridEncoding &enc,
                             const Assignment &w)
{
	HybridSolution s;
	for (const auto &[name, v] : enc.params)
		s.params[name] = w.number(v);
	for (std::size_t m = 0; m < sys.modes.size(); ++m)
		s.entry.emplace_back(w.number(enc.lower[m]), w.number(enc.upper[m]));
	return s;
}

Assignment hybrid_witness(const HybridEncoding &enc, const HybridSolution &s)
{
	Assignment w;
	for (const auto &[name, v] : enc.params)
		w.set(v, s.params.at(name));
	for (std::size_t m = 0; m < enc.lower.size(); ++m) {
		w.set(enc.lower[m], s.entry[m].lo);
		w.set(enc.upper[m], s.entry[m].hi);
		w.set(enc.lower_next[m], s.entry[m].lo);
		w.set(enc.upper_next[m], s.entry[m].hi);
	}
	return w;
}

SimulationReport simulate_hybrid(const HybridSystem &sys, const HybridSolution &s,
                                 unsigned steps, const Rational &dt)
{
	auto value = [&](const Param &q) {
		return q.is_constant() ? *q.value : s.params.at(q.name);
	};
	SimulationReport rep;
	std::size_t mode = 0;
	Rational h = sys.initial_h, t = 0;
	auto fail = [&](const std::string &why) {
		rep.ok = false;
		rep.failure = "step " + std::to_string(rep.steps) + ", mode " + std::to_string(mode) +
		              ", h=" + to_string(h) + ", t=" + to_string(t) + ": " + why;
		return rep;
	};
	for (; rep.steps < steps; ++rep.steps) {
		const Mode &m = sys.modes[mode];
		const Rational rate = value(m.rate);
		if (t > m.clock_bound)
			return fail("clock bound exceeded");
		const Rational entry = h - rate * t;
		if (!s.entry[mode].contains(entry))
			return fail("outside the invariant");
		if (!sys.safe_h.contains(h))
			return fail("risk state");
		const Jump *take = nullptr;
		Rational wait = dt;
		for (const Jump &j : sys.jumps) {
			if (j.from != mode)
				continue;
			Rational lo = value(j.guard_lo), hi = value(j.guard_hi);
			if (lo <= t && t <= hi && t <= m.clock_bound) {
				take = &j;
				break;
			}
			if (t < lo && lo - t < wait)
				wait = lo - t;
		}
		if (take) {
			mode = take->to;
			t = 0;
			rep.jumps++;
			continue;
		}
		if (t + wait > m.clock_bound)
			return fail("time cannot progress");
		h += rate * wait;
		t += wait;
	}
	return rep;
}

} // namespace efsmt
