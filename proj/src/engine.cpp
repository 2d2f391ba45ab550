/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/engine.hpp"

#include <algorithm>
#include <random>

namespace efsmt {

const char *strategy_name(Strategy s)
{
	switch (s) {
	case Strategy::LA_LA: return "la-la";
	case Strategy::LA_BERNSTEIN: return "la-bernstein";
	case Strategy::FIXED_FIXED: return "fixed-fixed";
	case Strategy::AUTO: return "auto";
	}
	return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s)
{
	for (Strategy st : {Strategy::LA_LA, Strategy::LA_BERNSTEIN, Strategy::FIXED_FIXED,
	                    Strategy::AUTO})
		if (s == strategy_name(st))
			return st;
	return std::nullopt;
}

const char *verdict_name(Verdict::Kind k)
{
	switch (k) {
	case Verdict::Kind::Valid: return "valid";
	case Verdict::Kind::Invalid: return "invalid";
	case Verdict::Kind::Unknown: return "unknown";
	}
	return "?";
}

const char *witness_check_name(WitnessCheck w)
{
	switch (w) {
	case WitnessCheck::Holds: return "holds";
	case WitnessCheck::Fails: return "fails";
	case WitnessCheck::Inconclusive: return "inconclusive";
	}
	return "?";
}

MatrixSplit split_matrix(const EFProblem &p)
{
	MatrixSplit ms;
	std::vector<Formula> rest;
	for (const Formula &c : conjuncts(p.matrix)) {
		auto vs = free_vars(c);
		if (std::all_of(vs.begin(), vs.end(), [&](VarId v) { return p.is_exists(v); }))
			ms.exists_only.push_back(c);
		else
			rest.push_back(c);
	}
	ms.rest = Formula::conj(std::move(rest));
	return ms;
}

namespace {

bool all_finite(const std::vector<VarDecl> &vars)
{
	return std::all_of(vars.begin(), vars.end(), [](auto &d) { return is_finite(d.sort); });
}

bool all_real(const std::vector<VarDecl> &vars)
{
	return std::all_of(vars.begin(), vars.end(), [](auto &d) { return is_real(d.sort); });
}

bool ag_shaped(const EFProblem &p, const Formula &rest)
{
	return all_real(p.forall_vars) && ag_rules(rest).has_value();
}

Box forall_box(const EFProblem &p)
{
	Box b;
	for (const VarDecl &d : p.forall_vars)
		b[d.id] = *sort_range(d.sort);
	return b;
}

/* Rules with the candidate substituted; decided rules are dropped. Returns
 * nullopt if some rule is already false for every value of the forall vars. */
std::vector<AGRule> instantiate_rules(const std::vector<AGRule> &rules, const Assignment &a)
{
	std::vector<AGRule> out;
	for (const AGRule &r : rules) {
		AGRule s{{}, {r.guarantee.lhs.substitute(a), r.guarantee.op, r.guarantee.rhs}};
		bool vacuous = false;
		for (const PolyCmp &c : r.assumptions) {
			PolyCmp d{c.lhs.substitute(a), c.op, c.rhs};
			if (d.lhs.is_constant()) {
				if (!compare(d.lhs.constant(), d.op, d.rhs))
					vacuous = true;
				continue;
			}
			s.assumptions.push_back(std::move(d));
		}
		if (vacuous)
			continue;
		if (s.guarantee.lhs.is_constant() &&
		    compare(s.guarantee.lhs.constant(), s.guarantee.op, s.guarantee.rhs))
			continue;
		out.push_back(std::move(s));
	}
	return out;
}

std::unique_ptr<SolverSession> linear_like(const EngineConfig &cfg, std::vector<VarDecl> vars)
{
	if (cfg.backend.kind == BackendKind::External)
		return make_session(cfg.backend, std::move(vars));
	return make_linear_session(std::move(vars));
}

/* The F-solver of one solve call. Sessions keep ¬φ asserted at the base
 * level and receive each candidate in a pushed context. */
class Refuter {
public:
	struct Outcome {
		CheckResult result;
		Assignment total;	/* total counterexample over the forall vars */
		Assignment general;	/* generalized (possibly partial) */
	};

	Refuter(const EFProblem &p, const EngineConfig &cfg, Strategy st, Formula rest)
	: p_(p), cfg_(cfg), st_(st), rest_(std::move(rest))
	{
		if (st_ == Strategy::LA_BERNSTEIN)
			rules_ = ag_rules(rest_).value_or(std::vector<AGRule>{});
	}

	Outcome check(const Assignment &cand, EngineStats &stats)
	{
		Formula phi = simplify(substitute(rest_, cand));
		if (phi.is_true())
			return {CheckResult::unsat(), {}, {}};
		if (st_ == Strategy::LA_BERNSTEIN && max_degree(phi) > 1)
			return bernstein(cand, stats);
		SolverSession &s = session();
		s.push();
		s.assert_formula(bindings_formula(cand));
		std::uint64_t before = s.stats().nodes;
		CheckResult r;
		try {
			r = s.check();
		} catch (const Error &e) {
			s.pop();
			return {CheckResult::unknown(e.what()), {}, {}};
		}
		s.pop();
		stats.f_nodes += s.stats().nodes - before;
		if (!r.is_sat())
			return {r, {}, {}};
		Assignment total = r.model.restrict_to(p_.forall_vars).completed(p_.forall_vars);
		Assignment general = total;
		if (cfg_.generalize)
			general = generalize_model(s, total, negate_to_nnf(phi)).restrict_to(p_.forall_vars);
		return {CheckResult::sat(total), total, general};
	}

private:
	SolverSession &session()
	{
		if (!session_) {
			std::vector<VarDecl> vars = p_.all_vars();
			session_ = st_ == Strategy::FIXED_FIXED ? make_enum_session(vars)
			                                        : linear_like(cfg_, vars);
			session_->assert_formula(negate_to_nnf(rest_));
		}
		return *session_;
	}

	Outcome bernstein(const Assignment &cand, EngineStats &stats)
	{
		auto rules = instantiate_rules(rules_, cand);
		Verdict3 v = check_ag(rules, forall_box(p_), cfg_.bernstein_max_depth);
		stats.bernstein_boxes += v.boxes;
		if (v.proved())
			return {CheckResult::unsat(), {}, {}};
		if (v.undecided())
			return {CheckResult::unknown("Bernstein check undecided at depth " +
			                             std::to_string(cfg_.bernstein_max_depth)),
			        {}, {}};
		Assignment cex = v.witness.restrict_to(p_.forall_vars).completed(p_.forall_vars);
		return {CheckResult::sat(cex), cex, cex};
	}

	const EFProblem &p_;
	const EngineConfig &cfg_;
	Strategy st_;
	Formula rest_;
	std::vector<AGRule> rules_;
	std::unique_ptr<SolverSession> session_;
};

Rational random_point(const Interval &r, std::mt19937_64 &rng)
{
	std::uniform_int_distribution<long> pick(0, 1 << 20);
	return r.lo + r.width() * Rational(pick(rng), 1 << 20);
}

Value random_value(const Sort &s, std::mt19937_64 &rng)
{
	if (is_bool(s))
		return std::uniform_int_distribution<int>(0, 1)(rng) == 1;
	if (is_real(s))
		return random_point(*sort_range(s), rng);
	Integer n = domain_size(s);
	std::uniform_int_distribution<unsigned long> pick(0, n.get_ui() - 1);
	Rational step = 1;
	if (auto *f = std::get_if<FixedSort>(&s))
		step = f->step;
	return Rational(domain_min(s) + Rational(pick(rng)) * step);
}

/* Calls f on every point of the product of finite domains until f returns
 * false; returns whether the enumeration completed. */
template <class F>
bool for_each_point(const std::vector<VarDecl> &vars, F f)
{
	std::vector<Integer> idx(vars.size(), 0), size;
	for (const VarDecl &d : vars)
		size.push_back(domain_size(d.sort));
	for (;;) {
		Assignment a;
		for (std::size_t i = 0; i < vars.size(); ++i) {
			const Sort &s = vars[i].sort;
			if (is_bool(s))
				a.set_bool(vars[i].id, idx[i] == 1);
			else {
				Rational step = 1;
				if (auto *fx = std::get_if<FixedSort>(&s))
					step = fx->step;
				a.set(vars[i].id, Rational(domain_min(s) + Rational(idx[i]) * step));
			}
		}
		if (!f(a))
			return false;
		std::size_t k = 0;
		while (k < vars.size() && ++idx[k] == size[k])
			idx[k++] = 0;
		if (k == vars.size())
			return true;
	}
}

Integer point_count(const std::vector<VarDecl> &vars)
{
	Integer n = 1;
	for (const VarDecl &d : vars)
		n *= domain_size(d.sort);
	return n;
}

/* Successive differences shrink geometrically (ratio ≤ bound, same sign);
 * returns the limit, or the value itself for a constant sequence. */
std::optional<Rational> geometric_limit(const std::vector<Rational> &xs, const Rational &bound)
{
	std::vector<Rational> d;
	for (std::size_t i = 1; i < xs.size(); ++i)
		d.push_back(xs[i] - xs[i - 1]);
	if (std::all_of(d.begin(), d.end(), [](auto &q) { return q == 0; }))
		return xs.back();
	for (std::size_t i = 1; i < d.size(); ++i) {
		if (d[i] == 0 || d[i - 1] == 0 || sign(d[i]) != sign(d[i - 1]))
			return std::nullopt;
		if (abs(d[i]) > bound * abs(d[i - 1]))
			return std::nullopt;
	}
	if (d.size() < 2)
		return std::nullopt;
	Rational rho = d.back() / d[d.size() - 2];
	return xs.back() + d.back() * rho / (1 - rho);
}

} // namespace

Strategy resolve_strategy(const EFProblem &p, Strategy requested)
{
	MatrixSplit ms = split_matrix(p);
	bool finite = all_finite(p.exists_vars) && all_finite(p.forall_vars);
	switch (requested) {
	case Strategy::AUTO:
		if (finite)
			return Strategy::FIXED_FIXED;
		if (linearizable(p))
			return Strategy::LA_LA;
		if (ag_shaped(p, ms.rest))
			return Strategy::LA_BERNSTEIN;
		throw Error(ErrorKind::Config,
		            "no strategy applies: the matrix is not linearizable and not in "
		            "assume-guarantee form over real universal variables; strengthen the "
		            "matrix and discretize both sides to use fixed-fixed");
	case Strategy::LA_LA:
		if (!linearizable(p))
			throw Error(ErrorKind::Config,
			            "la-la needs a linearizable matrix (each monomial at most one "
			            "existential and one universal variable); try la-bernstein or "
			            "fixed-fixed");
		return requested;
	case Strategy::LA_BERNSTEIN:
		if (!ag_shaped(p, ms.rest))
			throw Error(ErrorKind::Config,
			            "la-bernstein needs real universal variables and an "
			            "assume-guarantee matrix of inequalities");
		return requested;
	case Strategy::FIXED_FIXED:
		if (!finite)
			throw Error(ErrorKind::Config,
			            "fixed-fixed needs finite sorts on both sides; discretize real "
			            "variables (--step) first");
		return requested;
	}
	return requested;
}

Formula learn_from(const Formula &phi, const Assignment &cex, const EFProblem &p,
                   const Assignment &completion)
{
	Formula f = substitute(phi, cex);
	std::vector<VarDecl> unbound;
	std::set<VarId> fv = free_vars(f);
	for (const VarDecl &d : p.forall_vars)
		if (!cex.contains(d.id) && fv.count(d.id))
			unbound.push_back(d);
	if (unbound.empty())
		return simplify(f);
	bool linear = unbound.size() <= 4;
	if (linear) {
		std::vector<Atom> atoms;
		collect_atoms(f, atoms);
		for (const Atom &a : atoms)
			if (auto *c = std::get_if<PolyCmp>(&a))
				for (const VarDecl &d : unbound)
					if (c->lhs.degree_in(d.id) > 1)
						linear = false;
	}
	if (!linear) {
		Assignment rest;
		for (const VarDecl &d : unbound) {
			const Value *v = completion.find(d.id);
			if (v)
				rest.set(d.id, *v);
			else if (is_bool(d.sort))
				rest.set_bool(d.id, false);
			else
				rest.set(d.id, domain_min(d.sort));
		}
		return simplify(substitute(f, rest));
	}
	std::vector<Formula> instances;
	for (std::size_t mask = 0; mask < (std::size_t(1) << unbound.size()); ++mask) {
		Assignment ends;
		for (std::size_t k = 0; k < unbound.size(); ++k) {
			bool high = mask >> k & 1;
			const Sort &s = unbound[k].sort;
			if (is_bool(s))
				ends.set_bool(unbound[k].id, high);
			else
				ends.set(unbound[k].id, high ? domain_max(s) : domain_min(s));
		}
		instances.push_back(substitute(f, ends));
	}
	return simplify(Formula::conj(std::move(instances)));
}

namespace {

/* Atoms of ¬φ that hold at the point and entail ¬φ there: an implicant. */
bool implicant(const Formula &f, const Assignment &at, std::vector<Formula> &out)
{
	switch (f.kind()) {
	case Formula::Kind::True:
		return true;
	case Formula::Kind::False:
		return false;
	case Formula::Kind::And:
		for (const Formula &k : f.children())
			if (!implicant(k, at, out))
				return false;
		return true;
	case Formula::Kind::Or:
		for (const Formula &k : f.children())
			if (evaluate(k, at))
				return implicant(k, at, out);
		return false;
	default:
		if (!evaluate(f, at))
			return false;
		out.push_back(f);
		return true;
	}
}

/* p < 0 (strict) or p ≤ 0 */
struct Lin {
	Polynomial p;
	bool strict;
	friend auto operator<=>(const Lin &, const Lin &) = default;
};

} // namespace

std::optional<Formula> project_counterexample(const Formula &phi, const Assignment &candidate,
                                              const Assignment &cex, const EFProblem &p)
{
	const Assignment at = candidate.merged(cex);
	std::vector<Formula> lits;
	if (!implicant(negate_to_nnf(phi), at, lits))
		return std::nullopt;

	/* Real universal variables entering every literal with a constant
	 * coefficient are projected; the rest keep their counterexample value. */
	std::set<VarId> proj;
	for (const VarDecl &d : p.forall_vars)
		if (is_real(d.sort))
			proj.insert(d.id);
	for (const Formula &l : lits)
		if (l.kind() == Formula::Kind::Atom)
			if (auto *c = std::get_if<PolyCmp>(&l.atom()))
				for (const auto &[powers, coeff] : c->lhs.terms())
					for (const auto &[v, e] : powers)
						if (proj.count(v) && (powers.size() > 1 || e > 1))
							proj.erase(v);
	Assignment fixed;
	for (const VarDecl &d : p.forall_vars)
		if (!proj.count(d.id))
			fixed.set(d.id, *cex.find(d.id));

	std::set<Lin> cons;
	std::vector<Formula> keep;	/* literals over exists variables only */
	auto add = [&](Polynomial q, CmpOp op, const Rational &value) {
		switch (op) {
		case CmpOp::Lt: cons.insert({q, true}); break;
		case CmpOp::Le: cons.insert({q, false}); break;
		case CmpOp::Gt: cons.insert({-q, true}); break;
		case CmpOp::Ge: cons.insert({-q, false}); break;
		case CmpOp::Eq:
			cons.insert({q, false});
			cons.insert({-q, false});
			break;
		case CmpOp::Ne:
			if (value < 0)
				cons.insert({q, true});
			else
				cons.insert({-q, true});
			break;
		}
	};
	for (const Formula &l : lits) {
		if (l.kind() != Formula::Kind::Atom) {
			if (!p.is_forall(*free_vars(l).begin()))
				keep.push_back(l);
			continue;
		}
		if (std::holds_alternative<BoolAtom>(l.atom())) {
			if (!p.is_forall(std::get<BoolAtom>(l.atom()).var))
				keep.push_back(l);
			continue;
		}
		const PolyCmp &c = std::get<PolyCmp>(l.atom());
		Polynomial q = (c.lhs - Polynomial(c.rhs)).substitute(fixed);
		if (q.degree() > 1)
			return std::nullopt;
		if (q.is_constant())
			continue;
		add(q, c.op, q.evaluate(at));
	}
	for (VarId y : proj) {
		const Interval &r = *sort_range(p.decl(y).sort);
		cons.insert({Polynomial::var(y) - Polynomial(r.hi), false});
		cons.insert({Polynomial(r.lo) - Polynomial::var(y), false});
	}

	for (VarId y : proj) {
		std::vector<Lin> up, down;
		std::set<Lin> rest;
		for (const Lin &l : cons) {
			Rational a = l.p.coefficient({{y, 1}});
			if (a > 0)
				up.push_back(l);
			else if (a < 0)
				down.push_back(l);
			else
				rest.insert(l);
		}
		if (up.size() * down.size() > 4096)
			return std::nullopt;
		for (const Lin &u : up)
			for (const Lin &d : down) {
				Rational a = u.p.coefficient({{y, 1}}), b = -d.p.coefficient({{y, 1}});
				Polynomial q = u.p * Rational(1 / a) + d.p * Rational(1 / b);
				if (q.is_constant())
					continue;
				/* scale to a unit leading coefficient so duplicates merge */
				Rational lead = abs(q.terms().rbegin()->second);
				rest.insert({q * Rational(1 / lead), u.strict || d.strict});
			}
		cons = std::move(rest);
	}

	std::vector<Formula> out;
	for (const Formula &l : keep)
		out.push_back(negate_to_nnf(l));
	for (const Lin &l : cons)
		out.push_back(Formula::cmp(l.p, l.strict ? CmpOp::Ge : CmpOp::Gt, 0));
	Formula learned = Formula::disj(std::move(out));
	if (evaluate(learned, at))
		return std::nullopt;
	return learned;
}

Formula learn(const Assignment &cex, const EFProblem &p, const Assignment &completion)
{
	return learn_from(split_matrix(p).rest, cex, p, completion);
}

std::optional<Formula> extrapolate(const std::vector<Assignment> &candidates,
                                   const std::vector<Assignment> &counterexamples,
                                   const EFProblem &p, const EngineConfig &cfg)
{
	std::size_t w = cfg.extrapolation_window;
	if (w < 3 || candidates.size() < w || counterexamples.size() < w)
		return std::nullopt;
	auto window = [&](const std::vector<Assignment> &hist, VarId v) {
		std::vector<Rational> xs;
		for (std::size_t i = hist.size() - w; i < hist.size(); ++i) {
			const Value *val = hist[i].find(v);
			if (!val)
				return std::optional<std::vector<Rational>>();
			if (auto *b = std::get_if<bool>(val))
				xs.push_back(*b ? 1 : 0);
			else
				xs.push_back(std::get<Rational>(*val));
		}
		return std::optional<std::vector<Rational>>(xs);
	};

	std::vector<Formula> region;
	bool moving = false;
	for (const VarDecl &d : p.exists_vars) {
		auto xs = window(candidates, d.id);
		if (!xs)
			return std::nullopt;
		auto lim = geometric_limit(*xs, cfg.extrapolation_ratio);
		if (!lim)
			return std::nullopt;
		const Rational &last = xs->back();
		if (is_bool(d.sort)) {
			if (*lim != last)
				return std::nullopt;
			region.push_back(binding_formula(d.id, last == 1));
			continue;
		}
		Polynomial x = Polynomial::var(d.id);
		if (*lim == last) {
			if ((*xs)[0] != last)
				return std::nullopt;	/* converged exactly onto the candidate */
			region.push_back(Formula::cmp(x, CmpOp::Eq, last));
			continue;
		}
		moving = true;
		if (*lim < last) {
			region.push_back(Formula::cmp(x, CmpOp::Gt, *lim));
			region.push_back(Formula::cmp(x, CmpOp::Le, last));
		} else {
			region.push_back(Formula::cmp(x, CmpOp::Ge, last));
			region.push_back(Formula::cmp(x, CmpOp::Lt, *lim));
		}
	}
	if (!moving)
		return std::nullopt;

	Assignment ylim;
	for (const VarDecl &d : p.forall_vars) {
		auto ys = window(counterexamples, d.id);
		if (!ys)
			return std::nullopt;
		auto lim = geometric_limit(*ys, cfg.extrapolation_ratio);
		if (!lim)
			return std::nullopt;
		Value v = is_bool(d.sort) ? Value(*lim == 1) : Value(*lim);
		if (!sort_admits(d.sort, v))
			return std::nullopt;
		ylim.set(d.id, v);
	}

	Formula phi = simplify(substitute(p.matrix, ylim));
	if (max_degree(phi) > 1)
		return std::nullopt;
	Formula box = Formula::conj(region);
	try {
		auto s = make_linear_session(p.exists_vars);
		s->assert_formula(box);
		s->assert_formula(phi);
		if (!s->check().is_unsat())
			return std::nullopt;
	} catch (const Error &) {
		return std::nullopt;
	}
	return negate_to_nnf(box);
}

CheckResult f_check(const Assignment &candidate, const EFProblem &p, const EngineConfig &cfg)
{
	Strategy st = resolve_strategy(p, cfg.strategy);
	MatrixSplit ms = split_matrix(p);
	for (const Formula &f : ms.exists_only)
		if (!evaluate(f, candidate))
			return CheckResult::sat(Assignment().completed(p.forall_vars));
	Refuter r(p, cfg, st, ms.rest);
	EngineStats stats;
	return r.check(candidate, stats).result;
}

WitnessCheck verify_witness(const EFProblem &p, const Assignment &w, const EngineConfig &cfg)
{
	for (const VarDecl &d : p.exists_vars) {
		const Value *v = w.find(d.id);
		if (!v || !sort_admits(d.sort, *v))
			return WitnessCheck::Fails;
	}
	Assignment cand = w.restrict_to(p.exists_vars);
	MatrixSplit ms = split_matrix(p);
	for (const Formula &f : ms.exists_only)
		if (!evaluate(f, cand))
			return WitnessCheck::Fails;
	Formula phi = simplify(substitute(ms.rest, cand));
	if (phi.is_true())
		return WitnessCheck::Holds;
	if (phi.is_false())
		return WitnessCheck::Fails;

	std::mt19937_64 rng(0xef5);
	for (int i = 0; i < 2000; ++i) {
		Assignment y;
		for (const VarDecl &d : p.forall_vars)
			y.set(d.id, random_value(d.sort, rng));
		if (!evaluate(phi, y))
			return WitnessCheck::Fails;
	}

	if (all_finite(p.forall_vars) && point_count(p.forall_vars) <= 200000) {
		bool ok = for_each_point(p.forall_vars, [&](const Assignment &y) { return evaluate(phi, y); });
		return ok ? WitnessCheck::Holds : WitnessCheck::Fails;
	}
	if (max_degree(phi) <= 1) {
		try {
			auto s = make_linear_session(p.forall_vars);
			s->assert_formula(negate_to_nnf(phi));
			CheckResult r = s->check();
			if (r.is_unsat())
				return WitnessCheck::Holds;
			if (r.is_sat() && !evaluate(phi, r.model.completed(p.forall_vars)))
				return WitnessCheck::Fails;
		} catch (const Error &) {
		}
		return WitnessCheck::Inconclusive;
	}
	if (all_real(p.forall_vars)) {
		if (auto rules = ag_rules(ms.rest)) {
			Verdict3 v = check_ag(instantiate_rules(*rules, cand), forall_box(p),
			                      cfg.bernstein_max_depth);
			if (v.proved())
				return WitnessCheck::Holds;
			if (v.refuted())
				return WitnessCheck::Fails;
		}
	}
	return WitnessCheck::Inconclusive;
}

Verdict solve(const EFProblem &p, const EngineConfig &cfg)
{
	if (cfg.max_iterations < 1)
		throw Error(ErrorKind::Usage, "max_iterations must be at least 1");
	if (cfg.fixed_step <= 0)
		throw Error(ErrorKind::Usage, "fixed_step must be positive");
	p.validate();
	Verdict v;
	v.strategy = resolve_strategy(p, cfg.strategy);
	MatrixSplit ms = split_matrix(p);

	std::unique_ptr<SolverSession> e;
	if (v.strategy == Strategy::FIXED_FIXED ||
	    (v.strategy == Strategy::LA_BERNSTEIN && all_finite(p.exists_vars)))
		e = make_enum_session(p.exists_vars);
	else
		e = linear_like(cfg, p.exists_vars);
	for (const Formula &f : ms.exists_only)
		e->assert_formula(f);
	Refuter refuter(p, cfg, v.strategy, ms.rest);

	std::vector<Assignment> cands, cexs;
	auto finish = [&](Verdict::Kind k, std::string why = {}) {
		v.kind = k;
		v.reason = std::move(why);
		v.stats.e_nodes = e->stats().nodes;
		return v;
	};

	for (unsigned iter = 1; iter <= cfg.max_iterations; ++iter) {
		v.stats.iterations = iter;
		CheckResult er;
		try {
			er = e->check();
		} catch (const Error &err) {
			return finish(Verdict::Kind::Unknown, std::string("E-solver: ") + err.what());
		}
		if (er.is_unsat())
			return finish(Verdict::Kind::Invalid);
		if (er.is_unknown())
			return finish(Verdict::Kind::Unknown, "E-solver: " + er.reason);
		Assignment cand = er.model.restrict_to(p.exists_vars).completed(p.exists_vars);

		v.stats.f_checks++;
		Refuter::Outcome fo = refuter.check(cand, v.stats);
		TraceStep step{cand, {}, {}, {}, {}};
		if (fo.result.is_unsat()) {
			if (cfg.trace)
				v.trace.push_back(step);
			v.witness = cand;
			if (cfg.verify_witness) {
				WitnessCheck w = verify_witness(p, cand, cfg);
				if (w == WitnessCheck::Fails)
					return finish(Verdict::Kind::Unknown,
					              "candidate accepted by the F-solver failed verification");
				if (w == WitnessCheck::Inconclusive) {
					v.verification_inconclusive = true;
					return finish(Verdict::Kind::Unknown, "witness verification inconclusive");
				}
			}
			return finish(Verdict::Kind::Valid);
		}
		if (fo.result.is_unknown())
			return finish(Verdict::Kind::Unknown, "F-solver: " + fo.result.reason);

		v.stats.counterexamples++;
		Formula learned = learn_from(ms.rest, fo.general, p, fo.total);
		if (evaluate(learned, cand.merged(fo.total)))
			return finish(Verdict::Kind::Unknown, "counterexample does not refute the candidate");
		e->assert_formula(learned);
		step.counterexample = fo.general;
		step.learned = learned;
		if (cfg.projection)
			if (auto pr = project_counterexample(ms.rest, cand, fo.total, p)) {
				e->assert_formula(*pr);
				step.projected = std::move(pr);
			}

		cands.push_back(cand);
		cexs.push_back(fo.total);
		if (cfg.extrapolation)
			if (auto block = extrapolate(cands, cexs, p, cfg)) {
				e->assert_formula(*block);
				v.stats.extrapolation_blocks++;
				step.blocked = *block;
				cands.clear();
				cexs.clear();
			}
		if (cfg.trace)
			v.trace.push_back(std::move(step));
	}
	return finish(Verdict::Kind::Unknown,
	              "iteration limit " + std::to_string(cfg.max_iterations) + " reached");
}

} // namespace efsmt
