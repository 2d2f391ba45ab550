/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The efsmt authors
 */

#include "efsmt/encoders.hpp"

#include <algorithm>
#include <deque>

namespace efsmt {

namespace {

unsigned bits_for(unsigned states)
{
	unsigned b = 1;
	while ((1u << b) < states)
		++b;
	return b;
}

Formula lit(VarId v, bool positive)
{
	Formula f = Formula::boolean(v);
	return positive ? f : !f;
}

Formula iff(VarId a, VarId b)
{
	return Formula::iff(Formula::boolean(a), Formula::boolean(b));
}

/* The bits of one component equal the binary encoding of 'state'. */
Formula state_is(const std::vector<VarId> &bits, unsigned state)
{
	std::vector<Formula> fs;
	for (std::size_t b = 0; b < bits.size(); ++b)
		fs.push_back(lit(bits[b], (state >> b) & 1u));
	return Formula::conj(std::move(fs));
}

Formula same_bits(const std::vector<VarId> &a, const std::vector<VarId> &b)
{
	std::vector<Formula> fs;
	for (std::size_t i = 0; i < a.size(); ++i)
		fs.push_back(iff(a[i], b[i]));
	return Formula::conj(std::move(fs));
}

Formula global_is(const std::vector<std::vector<VarId>> &bits, const GlobalState &s)
{
	std::vector<Formula> fs;
	for (std::size_t i = 0; i < bits.size(); ++i)
		fs.push_back(state_is(bits[i], s[i]));
	return Formula::conj(std::move(fs));
}

std::string suffix(std::size_t comp, unsigned bit, unsigned nbits)
{
	std::string s = std::to_string(comp + 1);
	if (nbits > 1)
		s += "_" + std::to_string(bit);
	return s;
}

struct TemplateVars {
	VarId guard;
	/* selector bits per listed component, current and primed */
	std::vector<std::vector<VarId>> sel, sel_next;
};

Formula covers(const StateTemplate &t, const TemplateVars &tv,
               const std::vector<std::vector<VarId>> &state, bool primed)
{
	std::vector<Formula> fs{Formula::boolean(tv.guard)};
	for (std::size_t k = 0; k < t.components.size(); ++k)
		fs.push_back(same_bits(state[t.components[k]], primed ? tv.sel_next[k] : tv.sel[k]));
	return Formula::conj(std::move(fs));
}

} // namespace

std::vector<std::string> ComponentSystem::actions() const
{
	std::vector<std::string> out;
	for (const Component &c : components)
		for (const Transition &t : c.transitions)
			if (std::find(out.begin(), out.end(), t.action) == out.end())
				out.push_back(t.action);
	return out;
}

std::vector<Priority> ComponentSystem::candidate_pairs() const
{
	if (!candidates.empty())
		return candidates;
	std::vector<Priority> out;
	for (const std::string &a : actions())
		for (const std::string &b : actions())
			out.emplace_back(a, b);
	return out;
}

GlobalState ComponentSystem::initial() const
{
	GlobalState s;
	for (const Component &c : components)
		s.push_back(c.initial);
	return s;
}

std::vector<GlobalState> ComponentSystem::all_states() const
{
	std::vector<GlobalState> out{GlobalState(components.size(), 0)};
	for (std::size_t i = 0; i < components.size(); ++i) {
		std::vector<GlobalState> next;
		for (const GlobalState &s : out)
			for (unsigned v = 0; v < components[i].states; ++v) {
				GlobalState t = s;
				t[i] = v;
				next.push_back(std::move(t));
			}
		out = std::move(next);
	}
	return out;
}

std::vector<std::pair<std::string, std::size_t>> ComponentSystem::enabled(const GlobalState &s) const
{
	std::vector<std::pair<std::string, std::size_t>> out;
	for (std::size_t i = 0; i < components.size(); ++i)
		for (const Transition &t : components[i].transitions)
			if (t.from == s[i] && std::find(out.begin(), out.end(), std::pair{t.action, i}) == out.end())
				out.emplace_back(t.action, i);
	return out;
}

void ComponentSystem::validate() const
{
	if (components.empty())
		throw Error(ErrorKind::Encoding, "system has no components");
	std::map<std::string, std::size_t> owner;
	for (std::size_t i = 0; i < components.size(); ++i) {
		const Component &c = components[i];
		if (c.states == 0 || c.initial >= c.states)
			throw Error(ErrorKind::Encoding,
			            "component " + std::to_string(i + 1) + ": bad initial state");
		for (const Transition &t : c.transitions) {
			if (t.from >= c.states || t.to >= c.states)
				throw Error(ErrorKind::Encoding, "action " + t.action + ": state out of range");
			auto [it, fresh] = owner.emplace(t.action, i);
			if (!fresh && it->second != i)
				throw Error(ErrorKind::Encoding,
				            "action " + t.action + " is shared between components");
		}
	}
	for (const GlobalState &r : risk)
		if (r.size() != components.size())
			throw Error(ErrorKind::Encoding, "risk state has the wrong dimension");
}

ComponentSystem paper_priority_system(bool channel_restricted)
{
	ComponentSystem sys;
	sys.components.push_back({2, 0, {{0, "a", 1}, {1, "b", 0}, {0, "e", 0}}});
	sys.components.push_back({2, 0, {{0, "c", 1}, {1, "d", 0}}});
	sys.risk.push_back({1, 1});
	if (channel_restricted)
		for (const char *lo : {"a", "b", "c"})
			for (const char *hi : {"c", "d"})
				sys.forbidden.emplace_back(lo, hi);
	return sys;
}

std::vector<StateTemplate> paper_priority_templates()
{
	return {{"m", {0}}, {"n", {0, 1}}};
}

PriorityEncoding encode_priority(const ComponentSystem &sys,
                                 const std::vector<StateTemplate> &templates)
{
	sys.validate();
	if (templates.empty())
		throw Error(ErrorKind::Encoding, "at least one invariant template is required");
	for (const StateTemplate &t : templates)
		for (std::size_t c : t.components)
			if (c >= sys.components.size())
				throw Error(ErrorKind::Encoding, "template " + t.name + ": no such component");

	PriorityEncoding enc;
	EFProblem &p = enc.problem;
	const std::vector<Priority> cands = sys.candidate_pairs();
	for (const Priority &pr : cands)
		enc.priority_vars[pr] = p.declare_exists(pr.first + "<" + pr.second, BoolSort{});

	std::vector<TemplateVars> tvars;
	for (const StateTemplate &t : templates) {
		TemplateVars tv;
		tv.guard = p.declare_exists(t.name + "_val", BoolSort{});
		enc.template_vars.push_back(tv.guard);
		for (std::size_t c : t.components) {
			unsigned nb = bits_for(sys.components[c].states);
			std::vector<VarId> cur;
			for (unsigned b = 0; b < nb; ++b)
				cur.push_back(p.declare_exists(t.name + suffix(c, b, nb), BoolSort{}));
			tv.sel.push_back(std::move(cur));
		}
		for (std::size_t k = 0; k < t.components.size(); ++k) {
			std::size_t c = t.components[k];
			unsigned nb = bits_for(sys.components[c].states);
			std::vector<VarId> nxt;
			for (unsigned b = 0; b < nb; ++b)
				nxt.push_back(p.declare_exists(t.name + suffix(c, b, nb) + "'", BoolSort{}));
			tv.sel_next.push_back(std::move(nxt));
		}
		for (auto &v : tv.sel)
			enc.template_vars.insert(enc.template_vars.end(), v.begin(), v.end());
		for (auto &v : tv.sel_next)
			enc.template_vars.insert(enc.template_vars.end(), v.begin(), v.end());
		tvars.push_back(std::move(tv));
	}

	for (std::size_t i = 0; i < sys.components.size(); ++i) {
		unsigned nb = bits_for(sys.components[i].states);
		std::vector<VarId> cur, nxt;
		for (unsigned b = 0; b < nb; ++b)
			cur.push_back(p.declare_forall("x" + suffix(i, b, nb), BoolSort{}));
		for (unsigned b = 0; b < nb; ++b)
			nxt.push_back(p.declare_forall("x" + suffix(i, b, nb) + "'", BoolSort{}));
		enc.state_bits.push_back(std::move(cur));
		enc.next_bits.push_back(std::move(nxt));
	}

	std::vector<Formula> in_cur, in_next, clauses;
	for (std::size_t k = 0; k < templates.size(); ++k) {
		in_cur.push_back(covers(templates[k], tvars[k], enc.state_bits, false));
		in_next.push_back(covers(templates[k], tvars[k], enc.next_bits, true));
	}
	enc.in_x = Formula::disj(in_cur);
	Formula in_x_next = Formula::disj(in_next);

	/* primed selectors equal the unprimed ones */
	for (const TemplateVars &tv : tvars)
		for (std::size_t k = 0; k < tv.sel.size(); ++k)
			clauses.push_back(same_bits(tv.sel[k], tv.sel_next[k]));

	/* some template is enabled */
	std::vector<Formula> guards;
	for (const TemplateVars &tv : tvars)
		guards.push_back(Formula::boolean(tv.guard));
	clauses.push_back(Formula::disj(guards));

	clauses.push_back(Formula::implies(global_is(enc.state_bits, sys.initial()), enc.in_x));

	/* risk states, plus the deadlocks of the uncontrolled system */
	std::vector<GlobalState> bad = sys.risk;
	for (const GlobalState &s : sys.all_states())
		if (sys.enabled(s).empty() && std::find(bad.begin(), bad.end(), s) == bad.end())
			bad.push_back(s);
	for (const GlobalState &s : bad)
		clauses.push_back(Formula::implies(global_is(enc.state_bits, s), !enc.in_x));

	/* transitions under priorities */
	const std::size_t n = sys.components.size();
	auto enabled_f = [&](const std::string &act) {
		std::vector<Formula> fs;
		for (std::size_t i = 0; i < n; ++i)
			for (const Transition &t : sys.components[i].transitions)
				if (t.action == act)
					fs.push_back(state_is(enc.state_bits[i], t.from));
		return Formula::disj(std::move(fs));
	};
	std::vector<Formula> moves;
	for (const std::string &act : sys.actions()) {
		std::vector<Formula> steps;
		for (std::size_t i = 0; i < n; ++i)
			for (const Transition &t : sys.components[i].transitions) {
				if (t.action != act)
					continue;
				std::vector<Formula> fs{state_is(enc.state_bits[i], t.from),
				                        state_is(enc.next_bits[i], t.to)};
				for (std::size_t j = 0; j < n; ++j)
					if (j != i)
						fs.push_back(same_bits(enc.state_bits[j], enc.next_bits[j]));
				steps.push_back(Formula::conj(std::move(fs)));
			}
		std::vector<Formula> fs{Formula::disj(std::move(steps))};
		for (const auto &[pr, v] : enc.priority_vars)
			if (pr.first == act && pr.second != act)
				fs.push_back(!(Formula::boolean(v) && enabled_f(pr.second)));
		moves.push_back(Formula::conj(std::move(fs)));
	}
	clauses.push_back(Formula::implies(enc.in_x && Formula::disj(std::move(moves)), in_x_next));

	/* strict partial order */
	for (const auto &[pr, v] : enc.priority_vars)
		if (pr.first == pr.second)
			clauses.push_back(!Formula::boolean(v));
	for (const auto &[ab, v1] : enc.priority_vars)
		for (const auto &[bc, v2] : enc.priority_vars) {
			if (ab.second != bc.first)
				continue;
			Formula both = Formula::boolean(v1) && Formula::boolean(v2);
			auto ac = enc.priority_vars.find({ab.first, bc.second});
			if (ac == enc.priority_vars.end())
				clauses.push_back(!both);
			else if (ac->second != v1 && ac->second != v2)
				clauses.push_back(Formula::implies(both, Formula::boolean(ac->second)));
		}
	for (const Priority &f : sys.forbidden) {
		auto it = enc.priority_vars.find(f);
		if (it != enc.priority_vars.end())
			clauses.push_back(!Formula::boolean(it->second));
	}

	p.matrix = Formula::conj(std::move(clauses));
	p.validate();
	return enc;
}

PrioritySolution decode_priority(const ComponentSystem &sys, const PriorityEncoding &enc,
                                 const Assignment &witness)
{
	PrioritySolution sol;
	for (const auto &[pr, v] : enc.priority_vars)
		if (witness.contains(v) && witness.boolean(v))
			sol.priorities.insert(pr);
	for (VarId v : enc.template_vars)
		if (const Value *val = witness.find(v))
			sol.templates.set(v, *val);
	for (const GlobalState &s : sys.all_states()) {
		Assignment a = sol.templates;
		for (std::size_t i = 0; i < s.size(); ++i)
			for (std::size_t b = 0; b < enc.state_bits[i].size(); ++b)
				a.set_bool(enc.state_bits[i][b], (s[i] >> b) & 1u);
		if (evaluate(enc.in_x, a.completed(enc.problem.exists_vars)))
			sol.invariant.push_back(s);
	}
	return sol;
}

Assignment priority_witness(const PriorityEncoding &enc, const std::set<Priority> &priorities,
                            const std::map<std::string, bool> &template_values)
{
	Assignment w;
	for (const auto &[pr, v] : enc.priority_vars)
		w.set_bool(v, priorities.count(pr) != 0);
	for (VarId v : enc.template_vars) {
		std::string name = enc.problem.name(v);
		if (name.back() == '\'')
			name.pop_back();
		auto it = template_values.find(name);
		w.set_bool(v, it != template_values.end() && it->second);
	}
	return w;
}

std::set<Priority> transitive_closure(const std::set<Priority> &prios)
{
	std::set<Priority> out = prios;
	for (bool grew = true; grew;) {
		grew = false;
		for (const Priority &x : std::set<Priority>(out))
			for (const Priority &y : std::set<Priority>(out))
				if (x.second == y.first && out.insert({x.first, y.second}).second)
					grew = true;
	}
	return out;
}

PriorityOracle oracle_priority(const ComponentSystem &sys, const std::set<Priority> &prios)
{
	const std::set<Priority> order = transitive_closure(prios);
	std::map<GlobalState, GlobalState> parent;
	std::deque<GlobalState> queue;
	const GlobalState init = sys.initial();
	parent[init] = init;
	queue.push_back(init);
	auto is_risk = [&](const GlobalState &s) {
		return std::find(sys.risk.begin(), sys.risk.end(), s) != sys.risk.end();
	};
	PriorityOracle out;
	while (!queue.empty()) {
		GlobalState s = queue.front();
		queue.pop_front();
		if (is_risk(s)) {
			out.kind = PriorityOracle::Kind::Unsafe;
			for (GlobalState cur = s;; cur = parent[cur]) {
				out.trace.insert(out.trace.begin(), cur);
				if (cur == init)
					break;
			}
			return out;
		}
		auto en = sys.enabled(s);
		bool moved = false;
		for (const auto &[act, comp] : en) {
			bool blocked = false;
			for (const auto &other : en)
				if (order.count({act, other.first}))
					blocked = true;
			if (blocked)
				continue;
			for (const Transition &t : sys.components[comp].transitions) {
				if (t.action != act || t.from != s[comp])
					continue;
				moved = true;
				GlobalState nxt = s;
				nxt[comp] = t.to;
				if (parent.emplace(nxt, s).second)
					queue.push_back(nxt);
			}
		}
		if (!moved) {
			out.kind = PriorityOracle::Kind::Deadlock;
			out.state = s;
			return out;
		}
	}
	return out;
}

} // namespace efsmt
