/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/session.hpp"

#include <algorithm>
#include <variant>

namespace efsmt {

namespace {

/* Σ a_v·x_v + c > 0 (strict) or ≥ 0 */
struct LinCon {
	std::map<VarId, Rational> a;
	Rational c;
	bool strict = false;
};

void normalize(LinCon &k)
{
	for (auto it = k.a.begin(); it != k.a.end();)
		it = it->second == 0 ? k.a.erase(it) : std::next(it);
	if (k.a.empty())
		return;
	Rational s = abs(k.a.rbegin()->second);
	for (auto &[v, q] : k.a)
		q /= s;
	k.c /= s;
}

/* lhs op rhs as one or two constraints; Ne is split by the caller. */
std::vector<LinCon> to_lincons(const PolyCmp &cmp)
{
	if (cmp.lhs.degree() > 1)
		throw Error(ErrorKind::Unsupported,
		            "nonlinear atom in linear backend: " + cmp.lhs.str());
	LinCon d;
	for (const auto &[p, q] : cmp.lhs.terms())
		if (!p.empty())
			d.a[p[0].first] = q;
	d.c = cmp.lhs.constant() - cmp.rhs;
	LinCon neg{{}, -d.c, false};
	for (const auto &[v, q] : d.a)
		neg.a[v] = -q;
	switch (cmp.op) {
	case CmpOp::Gt: d.strict = true; return {d};
	case CmpOp::Ge: return {d};
	case CmpOp::Lt: neg.strict = true; return {neg};
	case CmpOp::Le: return {neg};
	case CmpOp::Eq: return {d, neg};
	case CmpOp::Ne: break;
	}
	throw Error(ErrorKind::Internal, "distinct atom reached constraint conversion");
}

struct Infeasible {};
struct Branch {
	VarId var;
	Rational below, above;	/* x ≤ below  or  x ≥ above */
};
using FmResult = std::variant<Infeasible, Branch, Assignment>;

struct Bound {
	Rational value;
	bool strict = false;
	bool present = false;
};

bool inside(const Rational &x, const Bound &lo, const Bound &hi)
{
	return (lo.strict ? x > lo.value : x >= lo.value) && (hi.strict ? x < hi.value : x <= hi.value);
}

Rational choose(const Bound &lo, const Bound &hi)
{
	if (lo.value == hi.value)
		return lo.value;
	if (hi.strict && inside(hi.value - 1, lo, hi))
		return hi.value - 1;
	if (lo.strict && inside(lo.value + 1, lo, hi))
		return lo.value + 1;
	return (lo.value + hi.value) / 2;
}

/* Grid origin and step of a finite numeric sort. */
std::optional<std::pair<Rational, Rational>> grid_of(const Sort &s)
{
	if (auto *i = std::get_if<IntSort>(&s))
		return std::pair<Rational, Rational>{i->range.lo, 1};
	if (auto *f = std::get_if<FixedSort>(&s))
		return std::pair<Rational, Rational>{f->range.lo, f->step};
	return std::nullopt;
}

Rational ceil_q(const Rational &q) { return -floor_div(-q, 1); }

/* Exact Fourier–Motzkin over 'vars' (ascending ids), eliminating the largest id
 * first, then back-substituting with the model-selection rule. */
FmResult fourier_motzkin(std::vector<LinCon> cons, const std::vector<VarDecl> &vars)
{
	for (const VarDecl &d : vars) {
		const Interval &r = *sort_range(d.sort);
		cons.push_back({{{d.id, 1}}, -r.lo, false});
		cons.push_back({{{d.id, -1}}, r.hi, false});
	}
	for (LinCon &k : cons)
		normalize(k);

	std::vector<std::vector<LinCon>> stages(vars.size());
	for (std::size_t i = vars.size(); i-- > 0;) {
		VarId v = vars[i].id;
		std::vector<LinCon> pos, neg, keep;
		for (LinCon &k : cons) {
			auto it = k.a.find(v);
			if (it == k.a.end())
				keep.push_back(std::move(k));
			else
				(it->second > 0 ? pos : neg).push_back(std::move(k));
		}
		std::map<std::map<VarId, Rational>, std::pair<Rational, bool>> tightest;
		auto add = [&](LinCon k) {
			normalize(k);
			auto [it, fresh] = tightest.try_emplace(k.a, k.c, k.strict);
			if (!fresh) {
				auto &[c, strict] = it->second;
				if (k.c < c || (k.c == c && k.strict && !strict))
					it->second = {k.c, k.strict};
			}
		};
		for (LinCon &k : keep)
			add(std::move(k));
		for (const LinCon &p : pos)
			for (const LinCon &n : neg) {
				Rational ap = p.a.at(v), an = -n.a.at(v);
				LinCon r{{}, an * p.c + ap * n.c, p.strict || n.strict};
				for (const auto &[u, q] : p.a)
					r.a[u] += an * q;
				for (const auto &[u, q] : n.a)
					r.a[u] += ap * q;
				r.a.erase(v);
				add(std::move(r));
			}
		stages[i] = std::move(pos);
		stages[i].insert(stages[i].end(), neg.begin(), neg.end());
		cons.clear();
		for (auto &[a, cs] : tightest) {
			if (a.empty()) {
				if (cs.first < 0 || (cs.first == 0 && cs.second))
					return Infeasible{};
				continue;
			}
			cons.push_back({a, cs.first, cs.second});
		}
	}
	for (const LinCon &k : cons)
		if (k.c < 0 || (k.c == 0 && k.strict))
			return Infeasible{};

	Assignment model;
	for (std::size_t i = 0; i < vars.size(); ++i) {
		VarId v = vars[i].id;
		Bound lo, hi;
		for (const LinCon &k : stages[i]) {
			Rational rest = k.c, av = 0;
			for (const auto &[u, q] : k.a)
				if (u == v)
					av = q;
				else
					rest += q * model.number(u);
			Rational b = -rest / av;
			Bound &target = av > 0 ? lo : hi;
			bool tighter = !target.present ||
			               (av > 0 ? b > target.value : b < target.value) ||
			               (b == target.value && k.strict && !target.strict);
			if (tighter)
				target = {b, k.strict, true};
		}
		Rational x = choose(lo, hi);
		if (auto g = grid_of(vars[i].sort)) {
			const auto &[origin, step] = *g;
			Rational kmin = ceil_q((lo.value - origin) / step);
			if (lo.strict && origin + kmin * step == lo.value)
				kmin += 1;
			Rational kmax = floor_div(hi.value - origin, step);
			if (hi.strict && origin + kmax * step == hi.value)
				kmax -= 1;
			if (kmin > kmax)
				return Branch{v, origin + kmax * step, origin + kmin * step};
			Rational k = floor_div(x - origin, step);
			Rational best;
			bool have = false;
			for (Rational cand : {k, Rational(k + 1)}) {
				if (cand < kmin)
					cand = kmin;
				if (cand > kmax)
					cand = kmax;
				Rational pt = origin + cand * step;
				if (!have || abs(pt - x) < abs(best - x) ||
				    (abs(pt - x) == abs(best - x) && pt < best)) {
					best = pt;
					have = true;
				}
			}
			x = best;
		}
		model.set(v, x);
	}
	return model;
}

/* Fourier–Motzkin, with branch and bound over grid sorts. */
std::optional<Assignment> theory_solve(const std::vector<LinCon> &cons,
                                       const std::vector<VarDecl> &vars, SessionStats &stats)
{
	FmResult r = fourier_motzkin(cons, vars);
	if (std::holds_alternative<Infeasible>(r))
		return std::nullopt;
	if (auto *m = std::get_if<Assignment>(&r))
		return *m;
	const Branch &b = std::get<Branch>(r);
	stats.nodes++;
	for (LinCon extra : {LinCon{{{b.var, -1}}, b.below, false},
	                     LinCon{{{b.var, 1}}, -b.above, false}}) {
		std::vector<LinCon> next = cons;
		next.push_back(std::move(extra));
		if (auto m = theory_solve(next, vars, stats))
			return m;
	}
	return std::nullopt;
}

std::vector<Formula> split_ne(const PolyCmp &c)
{
	return {Formula::cmp(c.lhs, CmpOp::Lt, c.rhs), Formula::cmp(c.lhs, CmpOp::Gt, c.rhs)};
}

/* Tableau-style DPLL over an NNF skeleton. Atoms occur only positively, so
 * choosing an atom means asserting it; literal goals and atoms are processed
 * eagerly and the disjunction with the fewest viable branches is split next. */
class Tableau {
public:
	Tableau(const std::vector<VarDecl> &numeric, SessionStats &stats)
	: numeric_(numeric), stats_(stats)
	{}

	std::optional<Assignment> solve(std::vector<Formula> goals)
	{
		State s;
		return search(std::move(s), std::move(goals));
	}

private:
	struct State {
		std::vector<LinCon> cons;
		std::map<VarId, bool> bools;
	};

	static std::optional<std::pair<VarId, bool>> literal(const Formula &f)
	{
		if (f.kind() == Formula::Kind::Atom)
			if (auto *b = std::get_if<BoolAtom>(&f.atom()))
				return std::pair{b->var, true};
		if (f.kind() == Formula::Kind::Not)
			if (auto l = literal(f.children()[0]))
				return std::pair{l->first, !l->second};
		return std::nullopt;
	}

	/* 1 = satisfied, 0 = falsified, -1 = open */
	static int literal_status(const State &s, const Formula &f)
	{
		auto l = literal(f);
		if (!l)
			return f.is_true() ? 1 : f.is_false() ? 0 : -1;
		auto it = s.bools.find(l->first);
		if (it == s.bools.end())
			return -1;
		return it->second == l->second ? 1 : 0;
	}

	std::optional<Assignment> search(State s, std::vector<Formula> goals)
	{
		stats_.nodes++;
		std::vector<Formula> ors;
		while (!goals.empty()) {
			Formula g = std::move(goals.back());
			goals.pop_back();
			using K = Formula::Kind;
			switch (g.kind()) {
			case K::True:
				continue;
			case K::False:
				return std::nullopt;
			case K::And:
				for (const Formula &c : g.children())
					goals.push_back(c);
				continue;
			case K::Or:
				ors.push_back(std::move(g));
				continue;
			default:
				break;
			}
			if (auto l = literal(g)) {
				auto [it, fresh] = s.bools.try_emplace(l->first, l->second);
				if (!fresh && it->second != l->second) {
					stats_.conflicts++;
					return std::nullopt;
				}
				continue;
			}
			const PolyCmp &c = std::get<PolyCmp>(g.atom());
			if (c.op == CmpOp::Ne) {
				ors.push_back(Formula::disj(split_ne(c)));
				continue;
			}
			for (LinCon &k : to_lincons(c))
				s.cons.push_back(std::move(k));
		}

		std::vector<Formula> open;
		for (const Formula &o : ors) {
			bool done = false;
			for (const Formula &c : o.children())
				if (literal_status(s, c) == 1) {
					done = true;
					break;
				}
			if (!done)
				open.push_back(o);
		}
		auto m = theory_solve(s.cons, numeric_, stats_);
		if (!m) {
			stats_.conflicts++;
			return std::nullopt;
		}
		for (const auto &[v, b] : s.bools)
			m->set_bool(v, b);
		/* The model of the atoms chosen so far may already satisfy every
		 * open disjunction, with unassigned booleans taken as false. */
		Assignment total = *m;
		for (const Formula &o : open)
			for (VarId v : free_vars(o))
				if (!total.contains(v))
					total.set_bool(v, false);
		std::optional<std::size_t> pick;
		std::vector<Formula> pick_kids;
		for (std::size_t i = 0; i < open.size(); ++i) {
			if (evaluate(open[i], total))
				continue;
			std::vector<Formula> viable;
			for (const Formula &c : open[i].children())
				if (literal_status(s, c) == -1)
					viable.push_back(c);
			if (viable.empty()) {
				stats_.conflicts++;
				return std::nullopt;
			}
			/* fewest branches first; the most recent disjunction on ties */
			if (!pick || viable.size() <= pick_kids.size()) {
				pick = i;
				pick_kids = std::move(viable);
			}
		}
		if (!pick)
			return total;
		std::vector<Formula> rest;
		for (std::size_t i = 0; i < open.size(); ++i)
			if (i != *pick)
				rest.push_back(open[i]);
		for (const Formula &c : pick_kids) {
			std::vector<Formula> next = rest;
			next.push_back(c);
			if (auto m = search(s, std::move(next)))
				return m;
		}
		return std::nullopt;
	}

	const std::vector<VarDecl> &numeric_;
	SessionStats &stats_;
};

class LinearSession final : public SolverSession {
public:
	using SolverSession::SolverSession;

	std::unique_ptr<SolverSession> fresh() const override
	{
		return make_linear_session(vars_);
	}
	const char *backend_name() const override { return "linear"; }

protected:
	CheckResult do_check(const std::vector<Formula> &live) override
	{
		detail::Preprocessed pre = detail::propagate_units(live, vars_);
		if (pre.conflict)
			return CheckResult::unsat();
		std::vector<VarDecl> numeric;
		for (const VarDecl &d : vars_)
			if (is_numeric(d.sort) && !pre.bindings.contains(d.id))
				numeric.push_back(d);
		std::sort(numeric.begin(), numeric.end(),
		          [](auto &a, auto &b) { return a.id < b.id; });
		std::vector<Formula> goals;
		for (const Formula &f : pre.rest) {
			Formula g = to_nnf(f);
			for (const VarId v : free_vars(g))
				if (!std::any_of(vars_.begin(), vars_.end(),
				                 [v](const VarDecl &d) { return d.id == v; }))
					throw Error(ErrorKind::Usage,
					            "assertion mentions a variable outside the session: #" +
					                    std::to_string(v));
			goals.push_back(std::move(g));
		}
		std::reverse(goals.begin(), goals.end());
		Tableau t(numeric, stats_);
		auto m = t.solve(std::move(goals));
		if (!m)
			return CheckResult::unsat();
		return CheckResult::sat(pre.bindings.merged(*m));
	}
};

} // namespace

std::unique_ptr<SolverSession> make_linear_session(std::vector<VarDecl> vars)
{
	return std::make_unique<LinearSession>(std::move(vars));
}

} // namespace efsmt
